//! JSON exchange format for states.
//!
//! Density matrices: `{"dim": 3, "rho": [[re, im], ...]}` with `dim²`
//! entries in row-major order. Pure three-level states:
//! `{"amplitudes": [[re, im], [re, im], [re, im]]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entanglement::DensityMatrix4;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::model::{DensityMatrix3, StateVector3};
use crate::sweep::InitialState;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityDoc {
    dim: usize,
    rho: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmplitudeDoc {
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DensityInput {
    Three(DensityMatrix3),
    Four(DensityMatrix4),
}

impl DensityInput {
    pub fn dim(&self) -> usize {
        match self {
            DensityInput::Three(_) => 3,
            DensityInput::Four(_) => 4,
        }
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Result<Vec<Complex64>> {
    pairs
        .iter()
        .map(|&[re, im]| {
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(Error::Malformed("matrix entries must be finite".into()))
            }
        })
        .collect()
}

fn square<const N: usize>(entries: &[Complex64]) -> CMatrix<N> {
    CMatrix::<N>::from_row_slice(entries)
}

/// Parses a 3×3 or 4×4 density matrix. Shape is checked; physicality is not.
pub fn parse_density(text: &str) -> Result<DensityInput> {
    let doc: DensityDoc = serde_json::from_str(text)?;
    if doc.rho.len() != doc.dim * doc.dim {
        return Err(Error::Malformed(format!(
            "dim {} needs {} entries, found {}",
            doc.dim,
            doc.dim * doc.dim,
            doc.rho.len()
        )));
    }
    let entries = to_complex(&doc.rho)?;
    match doc.dim {
        3 => Ok(DensityInput::Three(DensityMatrix3(square::<3>(&entries)))),
        4 => Ok(DensityInput::Four(DensityMatrix4(square::<4>(&entries)))),
        d => Err(Error::Malformed(format!("dim must be 3 or 4, got {d}"))),
    }
}

fn density_doc<const N: usize>(m: &CMatrix<N>) -> String {
    let rho = (0..N)
        .flat_map(|i| (0..N).map(move |j| (i, j)))
        .map(|(i, j)| [m[(i, j)].re, m[(i, j)].im])
        .collect();
    serde_json::to_string(&DensityDoc { dim: N, rho }).expect("plain numbers serialize")
}

pub fn density3_to_json(rho: &DensityMatrix3) -> String {
    density_doc(rho.matrix())
}

pub fn density4_to_json(rho: &DensityMatrix4) -> String {
    density_doc(rho.matrix())
}

/// Reads an initial state: either an amplitude document (normalized on
/// read) or a 3×3 density document.
pub fn parse_initial_state(text: &str) -> Result<InitialState> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("amplitudes").is_some() {
        let doc: AmplitudeDoc = serde_json::from_value(value)?;
        let amps = to_complex(&doc.amplitudes)?;
        let [b0, b1, b2]: [Complex64; 3] = amps.try_into().map_err(|v: Vec<_>| {
            Error::Malformed(format!("expected 3 amplitudes, got {}", v.len()))
        })?;
        let state = StateVector3::new(b0, b1, b2)
            .normalize()
            .map_err(|e| Error::Malformed(e.to_string()))?;
        return Ok(InitialState::Pure(state));
    }
    match parse_density(text)? {
        DensityInput::Three(rho) => Ok(InitialState::Mixed(rho)),
        DensityInput::Four(_) => Err(Error::Malformed(
            "initial state must be three-level (dim 3)".into(),
        )),
    }
}
