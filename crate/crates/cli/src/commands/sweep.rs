use std::io::Write;

use dotent_core::sweep::{
    figure_preset, run_sweep, FigureId, Observable, ParamAxis, ParamName, SweepConfig, TimeAxis,
};

use super::{csv_body, emit, load_config, record_model, resolve_model, MODEL_KEYS};
use crate::config::{pick, ConfigFile};
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::SweepArgs;

const AXIS_KEYS: [&str; 5] = ["param", "param-min", "param-max", "points", "observables"];

fn usage(e: dotent_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(args: SweepArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config(args.config.as_deref())?;
    let mut allowed = MODEL_KEYS.to_vec();
    allowed.extend(AXIS_KEYS);
    allowed.extend(["figure", "out"]);
    cfg.check("sweep", &allowed)?;

    let out = pick(args.out.clone(), &cfg, "out", "-".to_string())?;
    let figure = args
        .figure
        .clone()
        .or_else(|| cfg.get("figure").map(str::to_string));

    match figure {
        Some(id) => run_figure(&id, &args, &cfg, &out, stdout),
        None => run_explicit(args, &cfg, &out, stdout),
    }
}

fn explicit_keys_given(args: &SweepArgs, cfg: &ConfigFile) -> Vec<&'static str> {
    let m = &args.model;
    let flags = [
        ("delta-ratio", m.delta_ratio.is_some()),
        ("eta-ratio", m.eta_ratio.is_some()),
        ("gamma-ratio", m.gamma_ratio.is_some()),
        ("phi", m.phi.is_some()),
        ("t-max", m.t_max.is_some()),
        ("steps", m.steps.is_some()),
        ("initial", m.initial.is_some()),
        ("method", m.method.is_some()),
        ("param", args.param.is_some()),
        ("param-min", args.param_min.is_some()),
        ("param-max", args.param_max.is_some()),
        ("points", args.points.is_some()),
        ("observables", args.observables.is_some()),
    ];
    flags
        .into_iter()
        .filter(|(key, given)| *given || cfg.get(key).is_some())
        .map(|(key, _)| key)
        .collect()
}

fn run_figure(
    id: &str,
    args: &SweepArgs,
    cfg: &ConfigFile,
    out: &str,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let conflicts = explicit_keys_given(args, cfg);
    if !conflicts.is_empty() {
        return Err(CliError::Usage(format!(
            "--figure cannot be combined with explicit axis or model settings ({})",
            conflicts.join(", ")
        )));
    }
    let figure: FigureId = id.parse().map_err(usage)?;
    let config = figure_preset(figure);
    let result = run_sweep(&config)?;

    let mut manifest = RunManifest::new("sweep", out);
    manifest.param("figure", &figure.as_str()[3..]);
    describe(&mut manifest, &config);
    manifest.note(format!("preset: {}", figure.description()));
    emit(&manifest, &csv_body(&result, true)?, stdout)
}

/// Informational dump of a resolved configuration.
fn describe(manifest: &mut RunManifest, c: &SweepConfig) {
    let b = &c.base;
    manifest.note(format!("delta_ratio: {}", b.delta));
    manifest.note(format!("eta_ratio: {}", b.eta));
    manifest.note(format!("gamma_ratio: {}", b.gamma));
    manifest.note(format!("phi: {}", b.phi));
    manifest.note(format!(
        "param_axis: {} from {} to {} ({} points)",
        c.param_axis.name, c.param_axis.min, c.param_axis.max, c.param_axis.n_points
    ));
    manifest.note(format!(
        "time_axis: omega_t from 0 to {} ({} steps)",
        c.time_axis.t_max, c.time_axis.n_steps
    ));
    manifest.note("initial: vacuum");
    manifest.note(format!("method: {}", c.method.as_str()));
}

fn run_explicit(
    args: SweepArgs,
    cfg: &ConfigFile,
    out: &str,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let param_spec = pick(args.param, cfg, "param", "delta-ratio".to_string())?;
    let name: ParamName = param_spec.parse().map_err(usage)?;
    let min = pick(args.param_min, cfg, "param-min", 0.0)?;
    let max = pick(args.param_max, cfg, "param-max", 10.0)?;
    let points = pick(args.points, cfg, "points", 101)?;
    let observables_spec = pick(
        args.observables,
        cfg,
        "observables",
        "p0,p1,p2,negativity,concurrence".to_string(),
    )?;
    let observables = observables_spec
        .split(',')
        .map(|s| s.trim().parse::<Observable>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;

    let mut model_args = args.model;
    // An automatic method choice has to see the largest Γ on the axis.
    if name == ParamName::GammaRatio
        && model_args.gamma_ratio.is_none()
        && cfg.get("gamma-ratio").is_none()
    {
        model_args.gamma_ratio = Some(min.max(max));
    }
    let model = resolve_model(model_args, cfg)?;

    let config = SweepConfig {
        base: model.params,
        time_axis: TimeAxis {
            t_max: model.t_max,
            n_steps: model.steps,
        },
        param_axis: ParamAxis {
            name,
            min,
            max,
            n_points: points,
        },
        initial_state: model.initial,
        observables,
        method: model.method,
    };
    let result = run_sweep(&config)?;

    let mut manifest = RunManifest::new("sweep", out);
    record_model(&mut manifest, &model, Some(name));
    manifest
        .param("param", name.as_str().replace('_', "-"))
        .param("param-min", min)
        .param("param-max", max)
        .param("points", points)
        .param("observables", observables_spec);
    emit(&manifest, &csv_body(&result, true)?, stdout)
}
