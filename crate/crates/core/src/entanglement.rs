//! Two-qubit view of the three-level states: negativity of the partial
//! transpose and Wootters concurrence.
//!
//! Product basis order is |00⟩, |01⟩, |10⟩, |11⟩ (index `2a + b`).

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::model::{DensityMatrix3, DensityReport, StateVector3};

/// Eigenvalues of the partial transpose below this count as negative.
pub const NEGATIVE_EIGENVALUE_THRESHOLD: f64 = -1e-12;
/// Defect tolerance accepted for density-matrix inputs.
pub const INPUT_TOLERANCE: f64 = 1e-6;

/// A two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4(pub CMatrix<4>);

impl DensityMatrix4 {
    pub fn matrix(&self) -> &CMatrix<4> {
        &self.0
    }

    pub fn report(&self) -> DensityReport {
        DensityReport::for_matrix(&self.0)
    }

    pub fn from_pure(amplitudes: [Complex64; 4]) -> Self {
        let v = nalgebra::SVector::<Complex64, 4>::from(amplitudes);
        Self(v * v.adjoint())
    }
}

/// The isometry |0⟩ → |00⟩, |1⟩ → (|01⟩ + |10⟩)/√2, |2⟩ → |11⟩.
pub fn embedding() -> SMatrix<Complex64, 4, 3> {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    #[rustfmt::skip]
    let w = SMatrix::<Complex64, 4, 3>::new(
        ONE,  ZERO, ZERO,
        ZERO, s,    ZERO,
        ZERO, s,    ZERO,
        ZERO, ZERO, ONE,
    );
    w
}

pub fn embed_two_qubit(rho3: &DensityMatrix3) -> Result<DensityMatrix4> {
    let report = rho3.report();
    if !report.within(INPUT_TOLERANCE) {
        return Err(Error::InvalidDensity(report));
    }
    Ok(embed_unchecked(rho3))
}

/// Embedding without physicality checks, for states produced internally.
pub fn embed_unchecked(rho3: &DensityMatrix3) -> DensityMatrix4 {
    let w = embedding();
    DensityMatrix4(w * rho3.matrix() * w.adjoint())
}

/// `|ψ⟩` in the product basis for amplitudes on the three-level basis.
pub fn embed_pure(b: &StateVector3) -> [Complex64; 4] {
    let [b0, b1, b2] = b.amplitudes();
    let s = b1 * FRAC_1_SQRT_2;
    [b0, s, s, b2]
}

/// Transposes the second qubit: `((i,a),(j,b)) ↦ ((i,b),(j,a))`.
pub fn partial_transpose(rho4: &DensityMatrix4) -> CMatrix<4> {
    let m = rho4.matrix();
    CMatrix::<4>::from_fn(|row, col| {
        let (i, b) = (row / 2, row % 2);
        let (j, a) = (col / 2, col % 2);
        m[(2 * i + a, 2 * j + b)]
    })
}

/// `max(0, −2 Σ λ)` over negative eigenvalues of the partial transpose,
/// clamped to [0, 1].
pub fn negativity(rho4: &DensityMatrix4) -> f64 {
    let negative: f64 = linalg::eigvalsh(&partial_transpose(rho4))
        .iter()
        .filter(|&&l| l < NEGATIVE_EIGENVALUE_THRESHOLD)
        .sum();
    (-2.0 * negative).clamp(0.0, 1.0)
}

fn spin_flip() -> CMatrix<4> {
    // σy ⊗ σy
    let y = SMatrix::<Complex64, 2, 2>::new(ZERO, -linalg::I, linalg::I, ZERO);
    y.kronecker(&y)
}

/// Eigenvalues of ρ below this are treated as exact zeros before their
/// square roots enter the concurrence.
pub const RANK_FLOOR: f64 = 1e-14;

/// Wootters concurrence `max(0, √μ1 − √μ2 − √μ3 − √μ4)`, μ the descending
/// eigenvalues of `ρρ̃`, `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
///
/// The `√μ` are obtained as singular values of `τ = Wᵀ(σy⊗σy)W` with
/// `ρ = WW†`, read off the spectrum of the Hermitian dilation
/// `[[0, τ], [τ†, 0]]`. Taking square roots of computed μ would amplify
/// rounding noise on low-rank states to ~1e-8.
pub fn concurrence(rho4: &DensityMatrix4) -> f64 {
    let eig = linalg::jacobi_eigh(&linalg::hermitian_part(rho4.matrix()));
    let floor = RANK_FLOOR * eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut w = eig.vectors;
    for (k, &d) in eig.values.iter().enumerate() {
        let amp = if d > floor { d.sqrt() } else { 0.0 };
        w.column_mut(k).scale_mut(amp);
    }
    let tau = w.transpose() * spin_flip() * w;

    let mut dilation = CMatrix::<8>::zeros();
    dilation.fixed_view_mut::<4, 4>(0, 4).copy_from(&tau);
    dilation
        .fixed_view_mut::<4, 4>(4, 0)
        .copy_from(&tau.adjoint());
    let spectrum = linalg::eigvalsh(&dilation);
    // Ascending, so the singular values are the top four, largest last.
    let s = |k: usize| spectrum[7 - k].max(0.0);
    (s(0) - s(1) - s(2) - s(3)).clamp(0.0, 1.0)
}
