use std::io::Write;

use dotent_core::entanglement::{embed_unchecked, INPUT_TOLERANCE};
use dotent_core::io::{parse_density, DensityInput};
use dotent_core::{concurrence, negativity, Error};

use super::read_file;
use crate::error::CliError;
use crate::format::sig;
use crate::EntangleArgs;

/// JSON precision.
pub const JSON_DIGITS: usize = 12;

pub fn run(args: EntangleArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = read_file(&args.rho)?;
    let input = parse_density(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    let rho4 = match input {
        DensityInput::Three(rho3) => {
            let report = rho3.report();
            if !report.within(INPUT_TOLERANCE) {
                return Err(Error::InvalidDensity(report).into());
            }
            embed_unchecked(&rho3)
        }
        DensityInput::Four(rho4) => {
            let report = rho4.report();
            if !report.within(INPUT_TOLERANCE) {
                return Err(Error::InvalidDensity(report).into());
            }
            rho4
        }
    };
    writeln!(
        stdout,
        "{{\"negativity\": {}, \"concurrence\": {}}}",
        sig(negativity(&rho4), JSON_DIGITS),
        sig(concurrence(&rho4), JSON_DIGITS)
    )?;
    Ok(())
}
