//! Physical parameters, the three-level basis {|0⟩, |1⟩, |2⟩} and the
//! coefficient matrix of the amplitude equations.
//!
//! The basis is vacuum, symmetric single exciton `(|1,0⟩ + |0,1⟩)/√2`, and
//! biexciton. The antisymmetric single-exciton state does not couple to the
//! drive and is never represented here. ħ = 1 throughout.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, ONE};

/// Physical inputs of the driven double dot.
///
/// All rates share angular-frequency units. `omega` is the natural scale;
/// [`ModelParams::from_ratios`] builds the Ω = 1 form used everywhere times
/// are quoted as Ωt.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Laser–dot coupling Ω.
    pub omega: f64,
    /// Detuning Δ = ε/ħ − ω.
    pub delta: f64,
    /// Förster hopping rate η.
    pub eta: f64,
    /// Laser phase φ in radians.
    pub phi: f64,
    /// Pure-dephasing rate Γ.
    pub gamma: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::from_ratios(0.0, 0.0, 0.0, 0.0)
    }
}

impl ModelParams {
    /// Parameters in units of Ω (so `omega == 1`).
    pub fn from_ratios(delta_ratio: f64, eta_ratio: f64, gamma_ratio: f64, phi: f64) -> Self {
        Self {
            omega: 1.0,
            delta: delta_ratio,
            eta: eta_ratio,
            phi,
            gamma: gamma_ratio,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega", self.omega),
            ("delta", self.delta),
            ("eta", self.eta),
            ("phi", self.phi),
            ("gamma", self.gamma),
        ];
        if let Some((name, value)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be finite, got {value}"
            )));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma must be non-negative, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// Rescales every rate by Ω, returning the Ω = 1 form.
    pub fn normalized(&self) -> Result<Self> {
        self.validate()?;
        Ok(Self {
            omega: 1.0,
            delta: self.delta / self.omega,
            eta: self.eta / self.omega,
            phi: self.phi,
            gamma: self.gamma / self.omega,
        })
    }

    /// Effective single-photon coupling Ω′ = Ω/√2.
    pub fn omega_prime(&self) -> f64 {
        self.omega * FRAC_1_SQRT_2
    }
}

/// Amplitudes `(B0, B1, B2)` of a pure state in the three-level basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector3(pub CVector<3>);

impl StateVector3 {
    pub fn new(b0: Complex64, b1: Complex64, b2: Complex64) -> Self {
        Self(CVector::<3>::new(b0, b1, b2))
    }

    /// Basis state `|level⟩`; panics if `level > 2`.
    pub fn basis(level: usize) -> Self {
        let mut v = CVector::<3>::zeros();
        v[level] = ONE;
        Self(v)
    }

    pub fn vacuum() -> Self {
        Self::basis(0)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "state vector cannot be normalized (norm {n})"
            )));
        }
        Ok(Self(self.0.unscale(n)))
    }

    pub fn amplitudes(&self) -> [Complex64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> DensityMatrix3 {
        DensityMatrix3(self.0 * self.0.adjoint())
    }
}

/// The Hermitian coefficient matrix ξ of `i dB/dt = ξ B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianMatrix3(pub CMatrix<3>);

impl HermitianMatrix3 {
    pub fn matrix(&self) -> &CMatrix<3> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }
}

/// Builds ξ with `ξ01 = ξ12 = Ω′e^{−iφ}`, `ξ11 = Δ − η`, `ξ22 = 2Δ`.
///
/// Hermiticity holds bitwise: lower entries are the exact conjugates of the
/// upper ones.
pub fn build_xi(params: &ModelParams) -> Result<HermitianMatrix3> {
    params.validate()?;
    let coupling = Complex64::from_polar(params.omega_prime(), -params.phi);
    let mut xi = CMatrix::<3>::zeros();
    xi[(0, 1)] = coupling;
    xi[(1, 2)] = coupling;
    xi[(1, 0)] = coupling.conj();
    xi[(2, 1)] = coupling.conj();
    xi[(1, 1)] = Complex64::new(params.delta - params.eta, 0.0);
    xi[(2, 2)] = Complex64::new(2.0 * params.delta, 0.0);
    Ok(HermitianMatrix3(xi))
}

/// A mixed state on the three-level subspace.
///
/// Construction does not check physicality; see [`validate_density`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix3(pub CMatrix<3>);

impl DensityMatrix3 {
    pub fn matrix(&self) -> &CMatrix<3> {
        &self.0
    }

    pub fn maximally_mixed() -> Self {
        Self(CMatrix::<3>::identity().unscale(3.0))
    }

    /// Diagonal entries ρ00, ρ11, ρ22.
    pub fn populations(&self) -> [f64; 3] {
        [self.0[(0, 0)].re, self.0[(1, 1)].re, self.0[(2, 2)].re]
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        linalg::trace(&(self.0 * self.0)).re
    }

    pub fn report(&self) -> DensityReport {
        validate_density(self)
    }
}

/// Physicality diagnostics for a candidate density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityReport {
    /// Largest entry of ρ − ρ†.
    pub hermiticity_defect: f64,
    /// |Tr ρ − 1|.
    pub trace_defect: f64,
    /// Smallest eigenvalue of the Hermitian part of ρ.
    pub min_eigenvalue: f64,
}

impl DensityReport {
    /// True when every defect is within `tol` (the eigenvalue may dip to −tol).
    pub fn within(&self, tol: f64) -> bool {
        self.hermiticity_defect <= tol && self.trace_defect <= tol && self.min_eigenvalue >= -tol
    }

    pub fn for_matrix<const N: usize>(m: &CMatrix<N>) -> Self {
        let min_eigenvalue = linalg::eigvalsh(m)[0];
        Self {
            hermiticity_defect: linalg::hermiticity_defect(m),
            trace_defect: (linalg::trace(m) - ONE).norm(),
            min_eigenvalue,
        }
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
            self.hermiticity_defect, self.trace_defect, self.min_eigenvalue
        )
    }
}

pub fn validate_density(rho: &DensityMatrix3) -> DensityReport {
    DensityReport::for_matrix(&rho.0)
}
