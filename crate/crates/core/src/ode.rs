//! Classic fourth-order Runge–Kutta with step-doubling error control.
//!
//! Each trial step is taken once with `h` and twice with `h/2`; the
//! difference estimates the local error and the accepted value is the
//! Richardson-extrapolated combination of the two.

use crate::error::{Error, Result};
use crate::linalg::CVector;

#[derive(Clone, Copy, Debug)]
pub struct StepDoubling {
    /// Local (per accepted step) absolute error target.
    pub tolerance: f64,
    /// Steps below this size abort the integration.
    pub min_step: f64,
    pub initial_step: f64,
}

impl Default for StepDoubling {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            min_step: 1e-12,
            initial_step: 1e-3,
        }
    }
}

impl StepDoubling {
    /// Integrates `y' = f(y)` from `t_grid[0]` and returns `y` at every grid
    /// time. `t_grid` must be non-decreasing.
    pub fn integrate<const N: usize, F>(
        &self,
        rhs: F,
        y0: CVector<N>,
        t_grid: &[f64],
    ) -> Result<Vec<CVector<N>>>
    where
        F: Fn(&CVector<N>) -> CVector<N>,
    {
        let Some(&t_start) = t_grid.first() else {
            return Ok(Vec::new());
        };
        if t_grid.windows(2).any(|w| w[1].is_nan() || w[1] < w[0]) {
            return Err(Error::InvalidParameter(
                "time grid must be ascending".into(),
            ));
        }

        let mut out = Vec::with_capacity(t_grid.len());
        let mut t = t_start;
        let mut y = y0;
        let mut h = self.initial_step;
        out.push(y);

        for &target in &t_grid[1..] {
            while t < target {
                let remaining = target - t;
                let trial = h.min(remaining);
                let full = rk4_step(&rhs, &y, trial);
                let half = rk4_step(&rhs, &y, 0.5 * trial);
                let double = rk4_step(&rhs, &half, 0.5 * trial);
                let diff = double - full;
                let err = diff.iter().fold(0.0f64, |m, z| m.max(z.norm())) / 15.0;

                if err <= self.tolerance {
                    y = double + diff.unscale(15.0);
                    t = if trial == remaining {
                        target
                    } else {
                        t + trial
                    };
                    // Steps truncated to land on the grid say nothing about h.
                    if trial < h {
                        continue;
                    }
                }
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * (self.tolerance / err).powf(0.2)).clamp(0.2, 5.0)
                };
                h = trial * factor;
                if h < self.min_step {
                    return Err(Error::StepUnderflow { t, step: h });
                }
            }
            out.push(y);
        }
        Ok(out)
    }
}

fn rk4_step<const N: usize, F>(rhs: &F, y: &CVector<N>, h: f64) -> CVector<N>
where
    F: Fn(&CVector<N>) -> CVector<N>,
{
    let k1 = rhs(y);
    let k2 = rhs(&(y + k1.scale(0.5 * h)));
    let k3 = rhs(&(y + k2.scale(0.5 * h)));
    let k4 = rhs(&(y + k3.scale(h)));
    y + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn harmonic_phase_rotation() {
        // y' = -i ω y has y(t) = e^{-iωt} y0.
        let omega = 3.0;
        let rhs = |y: &CVector<1>| y.map(|z| Complex64::new(0.0, -omega) * z);
        let grid: Vec<f64> = (0..=20).map(|k| k as f64 * 0.5).collect();
        let ys = StepDoubling::default()
            .integrate(rhs, CVector::<1>::new(Complex64::new(1.0, 0.0)), &grid)
            .unwrap();
        for (t, y) in grid.iter().zip(&ys) {
            let exact = Complex64::from_polar(1.0, -omega * t);
            assert!((y[0] - exact).norm() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn rejects_descending_grid() {
        let rhs = |y: &CVector<1>| *y;
        let err = StepDoubling::default()
            .integrate(rhs, CVector::<1>::zeros(), &[1.0, 0.5])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn stiff_problem_underflows() {
        let rhs = |y: &CVector<1>| y.scale(-1e14);
        let cfg = StepDoubling {
            min_step: 1e-12,
            ..StepDoubling::default()
        };
        let err = cfg
            .integrate(
                rhs,
                CVector::<1>::new(Complex64::new(1.0, 0.0)),
                &[0.0, 1.0],
            )
            .unwrap_err();
        assert!(matches!(err, Error::StepUnderflow { .. }));
    }
}
