use std::io::Write;

use dotent_core::{phonon_rate, PhononSpec};

use crate::error::CliError;
use crate::format::sig;
use crate::PhononArgs;

pub fn run(args: PhononArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = PhononSpec {
        n: args.n,
        omega_c: args.cutoff,
        temperature: args.temperature,
        prefactor: args.prefactor,
    };
    let rate = phonon_rate(&spec)?;
    writeln!(stdout, "{}", sig(rate, 10))?;
    eprintln!(
        "note: the integral carries no material constants; absolute dephasing rates \
         (tens of µeV for typical dots at 10–30 K) need a calibrated --prefactor"
    );
    Ok(())
}
