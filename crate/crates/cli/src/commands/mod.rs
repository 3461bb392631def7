pub mod entangle;
pub mod evolve;
pub mod phonon;
pub mod presets;
pub mod sweep;

use std::fs;
use std::io::Write;
use std::path::Path;

use dotent_core::sweep::{InitialState, Method, ParamName, SweepResult};
use dotent_core::{io as state_io, ModelParams, StateVector3};

use crate::config::{pick, ConfigFile};
use crate::error::CliError;
use crate::format::sig;
use crate::manifest::RunManifest;
use crate::ModelArgs;

/// CSV precision.
pub const CSV_DIGITS: usize = 9;

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn load_config(path: Option<&Path>) -> Result<ConfigFile, CliError> {
    match path {
        Some(p) => ConfigFile::parse(&read_file(p)?),
        None => Ok(ConfigFile::default()),
    }
}

pub(crate) const MODEL_KEYS: [&str; 8] = [
    "delta-ratio",
    "eta-ratio",
    "gamma-ratio",
    "phi",
    "t-max",
    "steps",
    "initial",
    "method",
];

/// Fully resolved model inputs.
#[derive(Clone, Debug)]
pub(crate) struct ResolvedModel {
    pub params: ModelParams,
    pub t_max: f64,
    pub steps: usize,
    pub initial_spec: String,
    pub initial: InitialState,
    pub method_spec: String,
    pub method: Method,
}

pub(crate) fn resolve_model(args: ModelArgs, cfg: &ConfigFile) -> Result<ResolvedModel, CliError> {
    let delta = pick(args.delta_ratio, cfg, "delta-ratio", 0.0)?;
    let eta = pick(args.eta_ratio, cfg, "eta-ratio", 0.0)?;
    let gamma = pick(args.gamma_ratio, cfg, "gamma-ratio", 0.0)?;
    let phi = pick(args.phi, cfg, "phi", 0.0)?;
    let t_max = pick(args.t_max, cfg, "t-max", 25.0)?;
    let steps = pick(args.steps, cfg, "steps", 501)?;
    let initial_spec = pick(args.initial, cfg, "initial", "vacuum".to_string())?;
    let method_spec = pick(args.method, cfg, "method", "auto".to_string())?;

    let initial = parse_initial(&initial_spec)?;
    let method = match method_spec.as_str() {
        "auto" => {
            if gamma == 0.0 && matches!(initial, InitialState::Pure(_)) {
                Method::ClosedForm
            } else {
                Method::Lindblad
            }
        }
        other => other
            .parse()
            .map_err(|e: dotent_core::Error| CliError::Usage(e.to_string()))?,
    };
    Ok(ResolvedModel {
        params: ModelParams::from_ratios(delta, eta, gamma, phi),
        t_max,
        steps,
        initial_spec,
        initial,
        method_spec,
        method,
    })
}

fn parse_initial(spec: &str) -> Result<InitialState, CliError> {
    let named = match spec {
        "vacuum" => Some(0),
        "single" => Some(1),
        "biexciton" => Some(2),
        _ => None,
    };
    if let Some(level) = named {
        return Ok(InitialState::Pure(StateVector3::basis(level)));
    }
    let text = read_file(Path::new(spec))?;
    Ok(state_io::parse_initial_state(&text)?)
}

pub(crate) fn record_model(m: &mut RunManifest, r: &ResolvedModel, skip: Option<ParamName>) {
    let p = &r.params;
    let entries = [
        (ParamName::DeltaRatio, "delta-ratio", p.delta),
        (ParamName::EtaRatio, "eta-ratio", p.eta),
        (ParamName::GammaRatio, "gamma-ratio", p.gamma),
        (ParamName::Phi, "phi", p.phi),
    ];
    for (name, key, value) in entries {
        if Some(name) != skip {
            m.param(key, value);
        }
    }
    m.param("t-max", r.t_max)
        .param("steps", r.steps)
        .param("initial", &r.initial_spec);
    m.param("method", &r.method_spec);
    m.note(format!("resolved method: {}", r.method.as_str()));
}

/// Writes `body` preceded by the manifest header to `out` (`-` = stdout).
pub(crate) fn emit(
    manifest: &RunManifest,
    body: &str,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = format!("{}{}", manifest.header(), body);
    if manifest.output == "-" {
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
    } else {
        fs::write(&manifest.output, text)?;
    }
    Ok(())
}

/// Appends one CSV row; refuses non-finite values.
pub(crate) fn push_row(out: &mut String, values: &[f64]) -> Result<(), CliError> {
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(CliError::Core(dotent_core::Error::Numerical(format!(
                "non-finite value in output column {i}"
            ))));
        }
        if i > 0 {
            out.push(',');
        }
        out.push_str(&sig(*v, CSV_DIGITS));
    }
    out.push('\n');
    Ok(())
}

/// Long-format body: optional parameter column, Ωt, then observables.
pub(crate) fn csv_body(result: &SweepResult, with_param: bool) -> Result<String, CliError> {
    let mut out = String::new();
    let mut header: Vec<&str> = Vec::new();
    if with_param {
        header.push("param_value");
    }
    header.push("omega_t");
    header.extend(result.config.observables.iter().map(|o| o.as_str()));
    out.push_str(&header.join(","));
    out.push('\n');

    let mut row = Vec::with_capacity(header.len());
    for (p, &value) in result.param_values.iter().enumerate() {
        for (k, &t) in result.times.iter().enumerate() {
            row.clear();
            if with_param {
                row.push(value);
            }
            row.push(t);
            row.extend_from_slice(result.point(p, k));
            push_row(&mut out, &row)?;
        }
    }
    Ok(out)
}
