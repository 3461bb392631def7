//! Pure-dephasing master equation on the three-level subspace.
//!
//! `dρ/dt = −i[H, ρ] − Γ[Jz, [Jz, ρ]]` with `H = ξ`. Density matrices are
//! vectorized by column stacking: entry `ρ[i][j]` sits at index `i + 3j`,
//! so `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`.

mod phonon;

pub use phonon::{phonon_rate, PhononSpec};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, I, ONE, ZERO};
use crate::model::{build_xi, DensityMatrix3, HermitianMatrix3, ModelParams};
use crate::ode::StepDoubling;

/// Guard on `t·‖L‖₁` for a single exponential.
pub const EXP_NORM_GUARD: f64 = 1e6;
const SQUARING_TARGET: f64 = 0.5;
const MAX_SERIES_TERMS: usize = 64;

/// Column-stacking vectorization.
pub fn vectorize(rho: &CMatrix<3>) -> CVector<9> {
    CVector::<9>::from_fn(|k, _| rho[(k % 3, k / 3)])
}

pub fn unvectorize(v: &CVector<9>) -> CMatrix<3> {
    CMatrix::<3>::from_fn(|i, j| v[i + 3 * j])
}

/// Generator `L` acting on column-stacked 3×3 density matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator9 {
    matrix: CMatrix<9>,
    gamma: f64,
}

impl Superoperator9 {
    /// Liouvillian for an arbitrary Hamiltonian with `Jz` dephasing at rate
    /// `gamma`.
    pub fn from_hamiltonian(h: &HermitianMatrix3, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be finite and non-negative, got {gamma}"
            )));
        }
        let id = CMatrix::<3>::identity();
        let h = h.matrix();
        let jz = jz_matrix().0;
        let jz2 = jz * jz;

        let coherent = (id.kronecker(h) - h.transpose().kronecker(&id)) * (-I);
        let dephasing = id.kronecker(&jz2) + jz2.transpose().kronecker(&id)
            - jz.transpose().kronecker(&jz).scale(2.0);
        let matrix = coherent - dephasing.scale(gamma);
        Ok(Self { matrix, gamma })
    }

    pub fn matrix(&self) -> &CMatrix<9> {
        &self.matrix
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn apply(&self, rho: &CMatrix<3>) -> CMatrix<3> {
        unvectorize(&(self.matrix * vectorize(rho)))
    }

    /// `exp(tL)` by scaling and squaring around a truncated Taylor series.
    pub fn propagator(&self, t: f64) -> Result<CMatrix<9>> {
        if !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "time must be finite, got {t}"
            )));
        }
        if t < 0.0 && self.gamma > 0.0 {
            return Err(Error::InvalidParameter(format!(
                "dissipative evolution is only defined forward in time (t = {t})"
            )));
        }
        let a = self.matrix.scale(t);
        let norm = linalg::norm_one(&a);
        if norm > EXP_NORM_GUARD {
            return Err(Error::ExpOverflow(norm));
        }
        let squarings = if norm > SQUARING_TARGET {
            (norm / SQUARING_TARGET).log2().ceil() as i32
        } else {
            0
        };
        let a = a.unscale(2f64.powi(squarings));

        let mut sum = CMatrix::<9>::identity();
        let mut term = CMatrix::<9>::identity();
        for k in 1..=MAX_SERIES_TERMS {
            term = (term * a).unscale(k as f64);
            sum += term;
            if linalg::norm_one(&term) <= f64::EPSILON * linalg::norm_one(&sum) {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        Ok(sum)
    }
}

/// `diag(−1, 0, +1)`: the collective z pseudo-spin on the symmetric subspace.
pub fn jz_matrix() -> HermitianMatrix3 {
    let mut jz = CMatrix::<3>::zeros();
    jz[(0, 0)] = Complex64::new(-1.0, 0.0);
    jz[(1, 1)] = ZERO;
    jz[(2, 2)] = ONE;
    HermitianMatrix3(jz)
}

pub fn build_liouvillian(params: &ModelParams) -> Result<Superoperator9> {
    let xi = build_xi(params)?;
    Superoperator9::from_hamiltonian(&xi, params.gamma)
}

fn finish(rho: &CMatrix<3>) -> DensityMatrix3 {
    DensityMatrix3(linalg::hermitian_part(rho))
}

/// `ρ(t) = exp(tL) ρ(0)`, re-Hermitized.
pub fn propagate_expm(l: &Superoperator9, rho0: &DensityMatrix3, t: f64) -> Result<DensityMatrix3> {
    let p = l.propagator(t)?;
    Ok(finish(&unvectorize(&(p * vectorize(rho0.matrix())))))
}

/// Adaptive RK4 (step doubling, local tolerance 1e-12) solution of the
/// master equation, sampled at each time in `t_grid`. `rho0` is the state at
/// `t = 0`.
pub fn integrate_rk(
    l: &Superoperator9,
    rho0: &DensityMatrix3,
    t_grid: &[f64],
) -> Result<Vec<DensityMatrix3>> {
    integrate_rk_with(l, rho0, t_grid, &StepDoubling::default())
}

pub fn integrate_rk_with(
    l: &Superoperator9,
    rho0: &DensityMatrix3,
    t_grid: &[f64],
    stepper: &StepDoubling,
) -> Result<Vec<DensityMatrix3>> {
    let Some(&first) = t_grid.first() else {
        return Ok(Vec::new());
    };
    if first.is_nan() || first < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "time grid must start at t ≥ 0, got {first}"
        )));
    }
    let mut grid = Vec::with_capacity(t_grid.len() + 1);
    let prepended = first > 0.0;
    if prepended {
        grid.push(0.0);
    }
    grid.extend_from_slice(t_grid);

    let generator = l.matrix;
    let states = stepper.integrate(|v| generator * v, vectorize(rho0.matrix()), &grid)?;
    Ok(states
        .iter()
        .skip(usize::from(prepended))
        .map(|v| DensityMatrix3(unvectorize(v)))
        .collect())
}

/// A normalized model with its Liouvillian, for repeated propagation.
#[derive(Clone, Debug)]
pub struct LindbladModel {
    pub params: ModelParams,
    pub liouvillian: Superoperator9,
}

impl LindbladModel {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let params = params.normalized()?;
        let liouvillian = build_liouvillian(&params)?;
        Ok(Self {
            params,
            liouvillian,
        })
    }

    /// States at Ωt = `k·dt`, `k = 0..n`, by repeated application of the
    /// one-step propagator.
    pub fn evolve_uniform(
        &self,
        rho0: &DensityMatrix3,
        dt: f64,
        n: usize,
    ) -> Result<Vec<DensityMatrix3>> {
        let step = self.liouvillian.propagator(dt)?;
        let mut v = vectorize(rho0.matrix());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                v = step * v;
            }
            out.push(finish(&unvectorize(&v)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateVector3;
    use crate::spectral::PureModel;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    use std::f64::consts::PI;

    fn diagonal_h(d: [f64; 3]) -> HermitianMatrix3 {
        HermitianMatrix3(CMatrix::<3>::from_diagonal(&CVector::<3>::from_fn(
            |i, _| Complex64::new(d[i], 0.0),
        )))
    }

    fn random_density(rng: &mut StdRng) -> DensityMatrix3 {
        let a = CMatrix::<3>::from_fn(|_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let m = a * a.adjoint();
        DensityMatrix3(m.unscale(linalg::trace(&m).re))
    }

    #[test]
    fn vectorization_is_column_stacking() {
        let m = CMatrix::<3>::from_fn(|i, j| Complex64::new((i * 3 + j) as f64, 0.0));
        let v = vectorize(&m);
        assert_eq!(v[1], m[(1, 0)]);
        assert_eq!(v[3], m[(0, 1)]);
        assert_eq!(unvectorize(&v), m);
    }

    #[test]
    fn superoperator_matches_commutator_form() {
        let mut rng = StdRng::seed_from_u64(21);
        let params = ModelParams::from_ratios(0.8, -0.3, 0.2, 1.1);
        let l = build_liouvillian(&params).unwrap();
        let h = build_xi(&params).unwrap().0;
        let jz = jz_matrix().0;
        let rho = random_density(&mut rng).0;
        let comm = |a: &CMatrix<3>, b: &CMatrix<3>| a * b - b * a;
        let expected = comm(&h, &rho) * (-I) - comm(&jz, &comm(&jz, &rho)).scale(params.gamma);
        assert!(linalg::max_abs(&(l.apply(&rho) - expected)) < 1e-14);
    }

    #[test]
    fn trace_functional_is_annihilated() {
        let l = build_liouvillian(&ModelParams::from_ratios(2.0, 0.5, 0.3, 0.4)).unwrap();
        let trace_row = vectorize(&CMatrix::<3>::identity()).adjoint();
        assert!(linalg::max_abs(&(trace_row * l.matrix())) < 1e-15);
    }

    #[test]
    fn unitary_limit_matches_closed_form() {
        let params = ModelParams::from_ratios(1.5, 0.3, 0.0, 0.7);
        let l = build_liouvillian(&params).unwrap();
        let pure = PureModel::new(&params).unwrap();
        let vac = StateVector3::vacuum();
        for t in [0.0, 0.5, 3.0, 12.0, 20.0] {
            let rho = propagate_expm(&l, &vac.projector(), t).unwrap();
            let expected = pure.evolve(&vac, t).projector();
            assert!(linalg::max_abs(&(rho.0 - expected.0)) < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn ladder_transfer_at_pi() {
        let l = build_liouvillian(&ModelParams::default()).unwrap();
        let rho = propagate_expm(&l, &StateVector3::vacuum().projector(), PI).unwrap();
        let target = StateVector3::basis(2).projector();
        assert!(linalg::max_abs(&(rho.0 - target.0)) < 1e-8);
    }

    #[test]
    fn zero_time_is_identity() {
        let mut rng = StdRng::seed_from_u64(2);
        let l = build_liouvillian(&ModelParams::from_ratios(1.0, 1.0, 0.2, 0.0)).unwrap();
        let rho0 = random_density(&mut rng);
        let rho = propagate_expm(&l, &rho0, 0.0).unwrap();
        assert!(linalg::max_abs(&(rho.0 - rho0.0)) < 1e-16);
    }

    #[test]
    fn undriven_coherence_decay() {
        let l = Superoperator9::from_hamiltonian(&diagonal_h([0.0; 3]), 1.0).unwrap();
        let mut rho0 = CMatrix::<3>::zeros();
        rho0[(0, 0)] = Complex64::new(0.5, 0.0);
        rho0[(2, 2)] = Complex64::new(0.5, 0.0);
        rho0[(0, 2)] = Complex64::new(0.5, 0.0);
        rho0[(2, 0)] = Complex64::new(0.5, 0.0);
        let rho = propagate_expm(&l, &DensityMatrix3(rho0), 1.0).unwrap();
        let expected = 0.5 * (-4.0f64).exp();
        assert!((rho.0[(0, 2)].re - expected).abs() < 1e-12);
        assert!((rho.0[(0, 2)].re - 0.009158).abs() < 1e-6);
        assert_eq!(rho.populations(), [0.5, 0.0, 0.5]);
    }

    #[test]
    fn dephasing_selection_rule() {
        // Coherence ρij decays at Γ(mi − mj)² and rotates at ξii − ξjj.
        let energies = [0.3, -1.1, 2.0];
        let gamma = 0.37;
        let m: [f64; 3] = [-1.0, 0.0, 1.0];
        let l = Superoperator9::from_hamiltonian(&diagonal_h(energies), gamma).unwrap();
        let rho0 = DensityMatrix3::maximally_mixed().0
            + CMatrix::<3>::from_fn(|i, j| {
                if i == j {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.1, 0.0)
                }
            });
        for t in [0.4, 1.7, 5.0] {
            let rho = propagate_expm(&l, &DensityMatrix3(rho0), t).unwrap().0;
            for i in 0..3 {
                for j in 0..3 {
                    let rate = gamma * (m[i] - m[j]).powi(2);
                    let phase = -(energies[i] - energies[j]) * t;
                    let expected = rho0[(i, j)] * Complex64::from_polar((-rate * t).exp(), phase);
                    assert!((rho[(i, j)] - expected).norm() < 1e-10, "({i},{j}) t={t}");
                }
            }
        }
    }

    #[test]
    fn negative_time_rejected_when_dissipative() {
        let l = build_liouvillian(&ModelParams::from_ratios(0.0, 0.0, 0.1, 0.0)).unwrap();
        assert!(propagate_expm(&l, &DensityMatrix3::maximally_mixed(), -1.0).is_err());
        let unitary = build_liouvillian(&ModelParams::default()).unwrap();
        assert!(propagate_expm(&unitary, &DensityMatrix3::maximally_mixed(), -1.0).is_ok());
    }

    #[test]
    fn overflow_guard() {
        let l = build_liouvillian(&ModelParams::from_ratios(0.0, 0.0, 1.0, 0.0)).unwrap();
        let err = propagate_expm(&l, &DensityMatrix3::maximally_mixed(), 1e7).unwrap_err();
        assert!(matches!(err, Error::ExpOverflow(_)));
    }

    #[test]
    fn rk_agrees_with_exponential() {
        let mut rng = StdRng::seed_from_u64(8);
        let grid: Vec<f64> = (1..=10).map(|k| k as f64).collect();
        for gamma in [0.0, 0.05, 0.2] {
            let params = ModelParams::from_ratios(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                gamma,
                rng.random_range(0.0..2.0 * PI),
            );
            let l = build_liouvillian(&params).unwrap();
            let rho0 = random_density(&mut rng);
            let rk = integrate_rk(&l, &rho0, &grid).unwrap();
            for (t, rho) in grid.iter().zip(&rk) {
                let exact = propagate_expm(&l, &rho0, *t).unwrap();
                assert!(linalg::max_abs(&(rho.0 - exact.0)) < 1e-9, "t = {t}");
            }
        }
    }

    #[test]
    fn rk_purity_behaviour() {
        let grid: Vec<f64> = (0..=40).map(|k| k as f64 * 0.5).collect();
        let vac = StateVector3::vacuum().projector();

        let l = build_liouvillian(&ModelParams::from_ratios(0.5, 0.1, 0.0, 0.0)).unwrap();
        for rho in integrate_rk(&l, &vac, &grid).unwrap() {
            assert!((rho.purity() - 1.0).abs() < 1e-9);
        }

        let l = build_liouvillian(&ModelParams::from_ratios(0.5, 0.1, 0.05, 0.0)).unwrap();
        let purities: Vec<f64> = integrate_rk(&l, &vac, &grid)
            .unwrap()
            .iter()
            .map(|r| r.purity())
            .collect();
        assert!(purities.windows(2).all(|w| w[1] <= w[0] + 1e-10));
        assert!(purities.last().unwrap() < &0.99);
    }

    #[test]
    fn rk_rejects_negative_start() {
        let l = build_liouvillian(&ModelParams::default()).unwrap();
        assert!(integrate_rk(&l, &DensityMatrix3::maximally_mixed(), &[-1.0, 0.0]).is_err());
    }

    #[test]
    fn uniform_stepping_matches_direct_exponential() {
        let model = LindbladModel::new(&ModelParams::from_ratios(0.0, 2.0, 0.05, 0.0)).unwrap();
        let rho0 = StateVector3::vacuum().projector();
        let states = model.evolve_uniform(&rho0, 0.05, 501).unwrap();
        for k in [0, 1, 100, 500] {
            let direct = propagate_expm(&model.liouvillian, &rho0, k as f64 * 0.05).unwrap();
            assert!(linalg::max_abs(&(states[k].0 - direct.0)) < 1e-12);
        }
    }

    #[test]
    fn small_gamma_continuity() {
        let vac = StateVector3::vacuum().projector();
        let t = 5.0;
        let base = build_liouvillian(&ModelParams::from_ratios(0.3, 0.2, 0.0, 0.0)).unwrap();
        let rho_0 = propagate_expm(&base, &vac, t).unwrap();
        let dev = |g: f64| {
            let l = build_liouvillian(&ModelParams::from_ratios(0.3, 0.2, g, 0.0)).unwrap();
            linalg::max_abs(&(propagate_expm(&l, &vac, t).unwrap().0 - rho_0.0))
        };
        let (d1, d2) = (dev(1e-4), dev(1e-3));
        let slope = d2 / (1e-3 * t);
        assert!(
            d1 <= slope * 1e-4 * t * 1.05 + 1e-12,
            "{d1} vs slope {slope}"
        );
        assert!(
            (d2 / d1 - 10.0).abs() < 0.5,
            "deviation not linear in Γ: {d1}, {d2}"
        );
    }

    #[test]
    fn jz_double_commutator_selection() {
        let jz = jz_matrix().0;
        let mut p1 = CMatrix::<3>::zeros();
        p1[(1, 1)] = ONE;
        assert_eq!(jz * p1 - p1 * jz, CMatrix::<3>::zeros());

        let mut coh = CMatrix::<3>::zeros();
        coh[(0, 2)] = ONE;
        let inner = jz * coh - coh * jz;
        let outer = jz * inner - inner * jz;
        assert_eq!(outer, coh.scale(4.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn propagation_is_cptp(
            delta in -5.0..5.0f64,
            eta in -5.0..5.0f64,
            gamma in 0.0..0.5f64,
            t in 0.0..50.0f64,
            seed in any::<u64>(),
        ) {
            let mut rng = StdRng::seed_from_u64(seed);
            let l = build_liouvillian(&ModelParams::from_ratios(delta, eta, gamma, 0.0)).unwrap();
            let rho = propagate_expm(&l, &random_density(&mut rng), t).unwrap();
            let report = rho.report();
            prop_assert!(report.hermiticity_defect <= 1e-10);
            prop_assert!(report.trace_defect <= 1e-10);
            prop_assert!(report.min_eigenvalue >= -1e-9);
        }

        #[test]
        fn propagation_is_a_semigroup(
            delta in -5.0..5.0f64,
            gamma in 0.0..0.5f64,
            t1 in 0.0..10.0f64,
            t2 in 0.0..10.0f64,
        ) {
            let l = build_liouvillian(&ModelParams::from_ratios(delta, 0.4, gamma, 0.0)).unwrap();
            let rho0 = StateVector3::vacuum().projector();
            let joint = propagate_expm(&l, &rho0, t1 + t2).unwrap();
            let stepped = propagate_expm(&l, &propagate_expm(&l, &rho0, t1).unwrap(), t2).unwrap();
            prop_assert!(linalg::max_abs(&(joint.0 - stepped.0)) <= 1e-9);
        }
    }
}
