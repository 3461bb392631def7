//! Exact solution of `i dB/dt = ξ B`.
//!
//! The spectrum of ξ comes from the trigonometric solution of its real
//! characteristic cubic; eigenvectors are extracted as null vectors of
//! `ξ − zI`. Near-degenerate spectra fall back to Jacobi diagonalization.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::model::{build_xi, HermitianMatrix3, ModelParams, StateVector3};

/// Below this value of `c2² − 3c1` the cubic is treated as a triple root.
pub const TRIPLE_ROOT_THRESHOLD: f64 = 1e-24;
/// Eigenvalues closer than this (relative to ‖ξ‖) count as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;
/// Residual bound `‖ξv − zv‖ ≤ tol·‖ξ‖` accepted from the closed form.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
const ORTHONORMALITY_TOLERANCE: f64 = 1e-12;

/// Coefficients `(c2, c1, c0)` of the monic cubic `z³ + c2 z² + c1 z + c0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicCoeffs {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicCoeffs {
    pub fn eval(&self, z: f64) -> f64 {
        ((z + self.c2) * z + self.c1) * z + self.c0
    }

    fn derivative(&self, z: f64) -> f64 {
        (3.0 * z + 2.0 * self.c2) * z + self.c1
    }
}

/// `det(zI − ξ)` expanded for a Hermitian 3×3 matrix.
///
/// For the model's tridiagonal ξ this reduces to `c2 = −(ξ11 + ξ22)`,
/// `c1 = ξ11ξ22 − 2|ξ01|²`, `c0 = |ξ01|²ξ22`.
pub fn characteristic_coeffs(xi: &HermitianMatrix3) -> CubicCoeffs {
    let m = xi.matrix();
    let d = |i: usize| m[(i, i)].re;
    let off = |i: usize, j: usize| m[(i, j)].norm_sqr();
    let minors = d(0) * d(1) - off(0, 1) + d(0) * d(2) - off(0, 2) + d(1) * d(2) - off(1, 2);
    let triple = (m[(0, 1)] * m[(1, 2)] * m[(2, 0)]).re;
    let det =
        d(0) * d(1) * d(2) + 2.0 * triple - d(0) * off(1, 2) - d(1) * off(0, 2) - d(2) * off(0, 1);
    CubicCoeffs {
        c2: -(d(0) + d(1) + d(2)),
        c1: minors,
        c0: -det,
    }
}

/// Real roots of a cubic known to have three real roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicRoots {
    /// Ascending.
    pub roots: [f64; 3],
    /// Set when the discriminant scale `c2² − 3c1` vanishes (triple root).
    pub degenerate: bool,
}

/// Trigonometric (Viète) solution with offsets `2π(j−1)/3`, followed by a
/// guarded Newton polish of each root.
pub fn cubic_eigenvalues(coeffs: &CubicCoeffs) -> CubicRoots {
    let CubicCoeffs { c2, c1, .. } = *coeffs;
    let shift = -c2 / 3.0;
    let spread = c2 * c2 - 3.0 * c1;

    if spread < TRIPLE_ROOT_THRESHOLD {
        let z = polish(coeffs, shift);
        return CubicRoots {
            roots: [z; 3],
            degenerate: true,
        };
    }

    // Depressed cubic u³ + p u + q with z = u + shift, p = −spread/3.
    let q = coeffs.eval(shift);
    let amplitude = 2.0 * (spread / 9.0).sqrt();
    let cos_arg = (-4.0 * q / amplitude.powi(3)).clamp(-1.0, 1.0);
    let base = cos_arg.acos() / 3.0;

    let mut roots = [0.0; 3];
    for (j, root) in roots.iter_mut().enumerate() {
        let u = amplitude * (base - 2.0 * PI * j as f64 / 3.0).cos();
        *root = polish(coeffs, u + shift);
    }
    roots.sort_by(f64::total_cmp);
    CubicRoots {
        roots,
        degenerate: false,
    }
}

fn polish(coeffs: &CubicCoeffs, mut z: f64) -> f64 {
    for _ in 0..3 {
        let f = coeffs.eval(z);
        let df = coeffs.derivative(z);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = z - f / df;
        if !next.is_finite() || coeffs.eval(next).abs() >= f.abs() {
            break;
        }
        z = next;
    }
    z
}

/// Eigen-decomposition of ξ used to propagate amplitudes in closed form.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    /// Eigenvalues, ascending.
    pub z: [f64; 3],
    /// Orthonormal eigenvectors as columns, matching `z`.
    pub v: CMatrix<3>,
    /// True when the Jacobi fallback produced the decomposition.
    pub used_fallback: bool,
}

impl SpectralDecomposition {
    pub fn eigenvector(&self, j: usize) -> CVector<3> {
        self.v.column(j).into_owned()
    }

    /// Expansion coefficients `λ_jl = (v_l)_j ⟨v_l, B(0)⟩`, so that
    /// `B_j(t) = Σ_l λ_jl e^{−i z_l t}`.
    pub fn lambda(&self, b_init: &StateVector3) -> CMatrix<3> {
        let overlaps = self.v.adjoint() * b_init.0;
        CMatrix::<3>::from_fn(|j, l| self.v[(j, l)] * overlaps[l])
    }

    /// `Σ_j z_j v_j v_j†`.
    pub fn reconstruct(&self) -> CMatrix<3> {
        let mut out = CMatrix::<3>::zeros();
        for j in 0..3 {
            let col = self.v.column(j);
            out += (col * col.adjoint()).scale(self.z[j]);
        }
        out
    }

    /// `B(t) = Σ_j e^{−i z_j t} v_j ⟨v_j, B(0)⟩`.
    pub fn evolve(&self, b_init: &StateVector3, t: f64) -> StateVector3 {
        let overlaps = self.v.adjoint() * b_init.0;
        let phased =
            CVector::<3>::from_fn(|j, _| overlaps[j] * Complex64::from_polar(1.0, -self.z[j] * t));
        StateVector3(self.v * phased)
    }
}

pub fn spectral_decompose(xi: &HermitianMatrix3) -> Result<SpectralDecomposition> {
    let m = xi.matrix();
    let scale = linalg::frobenius(m);
    if !scale.is_finite() {
        return Err(Error::Numerical("ξ has non-finite entries".into()));
    }
    if scale == 0.0 {
        return Ok(SpectralDecomposition {
            z: [0.0; 3],
            v: CMatrix::<3>::identity(),
            used_fallback: false,
        });
    }

    let roots = cubic_eigenvalues(&characteristic_coeffs(xi));
    let separated = roots
        .roots
        .windows(2)
        .all(|w| w[1] - w[0] > DEGENERACY_TOLERANCE * scale);
    if !roots.degenerate && separated {
        if let Some(decomp) = closed_form_vectors(m, roots.roots, scale) {
            return Ok(decomp);
        }
    }

    let eig = linalg::jacobi_eigh(m);
    let decomp = SpectralDecomposition {
        z: eig.values,
        v: eig.vectors,
        used_fallback: true,
    };
    if accept(m, &decomp, scale) {
        Ok(decomp)
    } else {
        Err(Error::Numerical(format!(
            "eigen-decomposition residual exceeds {RESIDUAL_TOLERANCE:e}·‖ξ‖"
        )))
    }
}

/// Null vector of `ξ − zI` from the best-conditioned pair of row cross
/// products, then Gram–Schmidt across the three.
fn closed_form_vectors(m: &CMatrix<3>, z: [f64; 3], scale: f64) -> Option<SpectralDecomposition> {
    let mut v = CMatrix::<3>::zeros();
    for (j, &zj) in z.iter().enumerate() {
        let shifted = m - CMatrix::<3>::identity().scale(zj);
        let rows: Vec<CVector<3>> = (0..3).map(|i| shifted.row(i).transpose()).collect();
        let candidates = [(0, 1), (0, 2), (1, 2)].map(|(a, b)| cross(&rows[a], &rows[b]));
        let best = candidates
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .copied()?;
        let n = best.norm();
        if n.is_nan() || n <= 0.0 {
            return None;
        }
        let mut vec = best.unscale(n);
        for k in 0..j {
            let prev = v.column(k).into_owned();
            let overlap = prev.dotc(&vec);
            vec -= prev * overlap;
        }
        let n = vec.norm();
        if n.is_nan() || n <= 0.0 {
            return None;
        }
        v.set_column(j, &vec.unscale(n));
    }
    let decomp = SpectralDecomposition {
        z,
        v,
        used_fallback: false,
    };
    accept(m, &decomp, scale).then_some(decomp)
}

/// Bilinear cross product: orthogonal (without conjugation) to both inputs.
fn cross(a: &CVector<3>, b: &CVector<3>) -> CVector<3> {
    CVector::<3>::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
}

fn accept(m: &CMatrix<3>, d: &SpectralDecomposition, scale: f64) -> bool {
    let residual_ok = (0..3).all(|j| {
        let col = d.v.column(j);
        (m * col - col.scale(d.z[j])).norm() <= RESIDUAL_TOLERANCE * scale
    });
    let gram = d.v.adjoint() * d.v;
    residual_ok && linalg::max_abs(&(gram - CMatrix::<3>::identity())) <= ORTHONORMALITY_TOLERANCE
}

/// `B(t)` for a decomposition of ξ; `t` in the inverse units of ξ (Ωt when
/// ξ was built from normalized parameters). Negative times are allowed.
pub fn evolve_pure(decomp: &SpectralDecomposition, b_init: &StateVector3, t: f64) -> StateVector3 {
    decomp.evolve(b_init, t)
}

/// `|B_i|²` for `i = 0, 1, 2`.
pub fn occupations(b: &StateVector3) -> [f64; 3] {
    let [b0, b1, b2] = b.amplitudes();
    [b0.norm_sqr(), b1.norm_sqr(), b2.norm_sqr()]
}

/// Normalized model with its decomposition, ready to evaluate at many times.
#[derive(Clone, Debug)]
pub struct PureModel {
    pub params: ModelParams,
    pub xi: HermitianMatrix3,
    pub decomp: SpectralDecomposition,
}

impl PureModel {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let params = params.normalized()?;
        let xi = build_xi(&params)?;
        let decomp = spectral_decompose(&xi)?;
        Ok(Self { params, xi, decomp })
    }

    /// Amplitudes at dimensionless time Ωt.
    pub fn evolve(&self, b_init: &StateVector3, omega_t: f64) -> StateVector3 {
        self.decomp.evolve(b_init, omega_t)
    }
}

/// Direct numerical integration of the amplitude equations, independent of
/// the spectral route.
pub fn integrate_amplitudes(
    xi: &HermitianMatrix3,
    b_init: &StateVector3,
    t_grid: &[f64],
) -> Result<Vec<StateVector3>> {
    let generator = xi.matrix().scale(-1.0) * linalg::I;
    let ys = crate::ode::StepDoubling::default().integrate(|b| generator * b, b_init.0, t_grid)?;
    Ok(ys.into_iter().map(StateVector3).collect())
}
