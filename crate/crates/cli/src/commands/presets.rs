use std::io::Write;

use dotent_core::sweep::{figure_preset, FigureId};

use crate::error::CliError;

pub fn run(stdout: &mut dyn Write) -> Result<(), CliError> {
    for id in FigureId::ALL {
        let c = figure_preset(id);
        let observables: Vec<&str> = c.observables.iter().map(|o| o.as_str()).collect();
        writeln!(
            stdout,
            "{:<3} {}  [axis {} {}..{} x {} points; omega_t 0..{} x {}; {}; {}]",
            &id.as_str()[3..],
            id.description(),
            c.param_axis.name,
            c.param_axis.min,
            c.param_axis.max,
            c.param_axis.n_points,
            c.time_axis.t_max,
            c.time_axis.n_steps,
            c.method.as_str(),
            observables.join(","),
        )?;
    }
    Ok(())
}
