//! Small dense complex linear algebra: fixed-size aliases and a cyclic
//! Jacobi eigensolver for Hermitian matrices.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

pub type CMatrix<const N: usize> = SMatrix<Complex64, N, N>;
pub type CVector<const N: usize> = SVector<Complex64, N>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMatrix<N>,
}

/// Largest entry modulus.
pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<Complex64, R, C>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Frobenius norm.
pub fn frobenius<const R: usize, const C: usize>(m: &SMatrix<Complex64, R, C>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm_one<const N: usize>(m: &CMatrix<N>) -> f64 {
    (0..N)
        .map(|j| (0..N).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn trace<const N: usize>(m: &CMatrix<N>) -> Complex64 {
    (0..N).map(|i| m[(i, i)]).sum()
}

/// `(m + m†) / 2`.
pub fn hermitian_part<const N: usize>(m: &CMatrix<N>) -> CMatrix<N> {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entry of `m − m†`.
pub fn hermiticity_defect<const N: usize>(m: &CMatrix<N>) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Diagonalizes the Hermitian part of `m` by cyclic complex Jacobi rotations.
///
/// Only the Hermitian part is read, so callers may pass matrices carrying
/// rounding-level anti-Hermitian noise.
pub fn jacobi_eigh<const N: usize>(m: &CMatrix<N>) -> HermitianEigen<N> {
    let mut a = hermitian_part(m);
    let mut v = CMatrix::<N>::identity();
    let scale = frobenius(&a);

    if scale > 0.0 {
        let threshold = (f64::EPSILON * scale).powi(2) * 1e-4;
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..N)
                .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum();
            if off <= threshold {
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let mut values = [0.0; N];
    let mut vectors = CMatrix::<N>::zeros();
    for (k, &src) in order.iter().enumerate() {
        values[k] = a[(src, src)].re;
        vectors.set_column(k, &v.column(src));
    }
    HermitianEigen { values, vectors }
}

/// Eigenvalues only, ascending.
pub fn eigvalsh<const N: usize>(m: &CMatrix<N>) -> [f64; N] {
    jacobi_eigh(m).values
}

/// Annihilates `a[p][q]` with the unitary `J`, updating `a ← J†aJ` and
/// `v ← vJ`.
fn rotate<const N: usize>(a: &mut CMatrix<N>, v: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s·e^{iα}], [−s·e^{−iα}, c]].
    let jpp = Complex64::new(c, 0.0);
    let jpq = phase * s;
    let jqp = -phase.conj() * s;
    let jqq = Complex64::new(c, 0.0);

    for k in 0..N {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..N {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..N {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Rebuilds `Σ_k f(λ_k) v_k v_k†`.
pub fn spectral_function<const N: usize>(
    eig: &HermitianEigen<N>,
    f: impl Fn(f64) -> f64,
) -> CMatrix<N> {
    let mut out = CMatrix::<N>::zeros();
    for k in 0..N {
        let col = eig.vectors.column(k);
        out += (col * col.adjoint()).scale(f(eig.values[k]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_hermitian<const N: usize>(rng: &mut StdRng) -> CMatrix<N> {
        let m = CMatrix::<N>::from_fn(|_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        hermitian_part(&m)
    }

    #[test]
    fn jacobi_reconstructs_random_hermitian() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let m = random_hermitian::<4>(&mut rng);
            let eig = jacobi_eigh(&m);
            let rebuilt = spectral_function(&eig, |x| x);
            assert!(max_abs(&(rebuilt - m)) < 1e-13);
            let gram = eig.vectors.adjoint() * eig.vectors;
            assert!(max_abs(&(gram - CMatrix::<4>::identity())) < 1e-13);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn jacobi_matches_nalgebra_eigenvalues() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let m = random_hermitian::<3>(&mut rng);
            let ours = eigvalsh(&m);
            let mut theirs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(f64::total_cmp);
            for (a, b) in ours.iter().zip(&theirs) {
                assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn zero_and_diagonal_inputs() {
        let z = CMatrix::<3>::zeros();
        assert_eq!(eigvalsh(&z), [0.0; 3]);
        let d = CMatrix::<3>::from_diagonal(&CVector::<3>::new(
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.5, 0.0),
        ));
        assert_eq!(eigvalsh(&d), [-1.0, 0.5, 2.0]);
    }
}
