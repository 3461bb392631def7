use std::io::Write;

use dotent_core::sweep::{run_sweep, Observable, ParamAxis, ParamName, SweepConfig, TimeAxis};

use super::{csv_body, emit, load_config, record_model, resolve_model, MODEL_KEYS};
use crate::config::pick;
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::EvolveArgs;

pub fn run(args: EvolveArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config(args.config.as_deref())?;
    let mut allowed = MODEL_KEYS.to_vec();
    allowed.push("out");
    cfg.check("evolve", &allowed)?;

    let out = pick(args.out, &cfg, "out", "-".to_string())?;
    let model = resolve_model(args.model, &cfg)?;

    let config = SweepConfig {
        base: model.params,
        time_axis: TimeAxis {
            t_max: model.t_max,
            n_steps: model.steps,
        },
        param_axis: ParamAxis::fixed(ParamName::DeltaRatio, &model.params),
        initial_state: model.initial,
        observables: Observable::ALL.to_vec(),
        method: model.method,
    };
    let result = run_sweep(&config)?;

    let mut manifest = RunManifest::new("evolve", &out);
    record_model(&mut manifest, &model, None);
    emit(&manifest, &csv_body(&result, false)?, stdout)
}
