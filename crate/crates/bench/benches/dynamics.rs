use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dotent_core::entanglement::embed_pure;
use dotent_core::sweep::{figure_preset, FigureId};
use dotent_core::{
    build_liouvillian, build_xi, concurrence, negativity, propagate_expm, run_sweep,
    spectral_decompose, DensityMatrix4, ModelParams, PureModel, StateVector3,
};

fn closed_form(c: &mut Criterion) {
    let params = ModelParams::from_ratios(0.7, 2.0, 0.0, 0.3);
    let xi = build_xi(&params).unwrap();
    c.bench_function("spectral_decompose", |b| {
        b.iter(|| spectral_decompose(black_box(&xi)).unwrap())
    });

    let model = PureModel::new(&params).unwrap();
    let vac = StateVector3::vacuum();
    c.bench_function("evolve_pure/501 steps", |b| {
        b.iter(|| {
            (0..501).for_each(|k| {
                black_box(model.evolve(&vac, 0.05 * k as f64));
            })
        })
    });
}

fn measures(c: &mut Criterion) {
    let state = PureModel::new(&ModelParams::from_ratios(0.0, 5.0, 0.0, 0.0))
        .unwrap()
        .evolve(&StateVector3::vacuum(), 3.0);
    let rho = DensityMatrix4::from_pure(embed_pure(&state));
    c.bench_function("negativity", |b| b.iter(|| negativity(black_box(&rho))));
    c.bench_function("concurrence", |b| b.iter(|| concurrence(black_box(&rho))));
}

fn lindblad(c: &mut Criterion) {
    let l = build_liouvillian(&ModelParams::from_ratios(0.0, 2.0, 0.05, 0.0)).unwrap();
    let rho0 = StateVector3::vacuum().projector();
    c.bench_function("propagate_expm/t=25", |b| {
        b.iter(|| propagate_expm(&l, &rho0, black_box(25.0)).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for id in [FigureId::Fig1, FigureId::Fig4b] {
        let mut config = figure_preset(id);
        config.param_axis.n_points = 11;
        group.bench_function(format!("{}/11 points", id.as_str()), |b| {
            b.iter(|| run_sweep(&config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, closed_form, measures, lindblad, sweeps);
criterion_main!(benches);
