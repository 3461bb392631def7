//! Dephasing rate from the phonon spectral density,
//! `Γ = A ∫₀^∞ ω^n e^{−ω/ωc} (1 + 2N(ω, T)) dω` with Bose occupation
//! `N = 1/(e^{ω/T} − 1)` (temperature in frequency units, k_B = ħ = 1).

use crate::error::{Error, Result};

const RELATIVE_TOLERANCE: f64 = 1e-11;
const MAX_DEPTH: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhononSpec {
    /// Spectral exponent set by the dimensionality of the phonon field.
    pub n: u32,
    /// Cutoff frequency ω_c.
    pub omega_c: f64,
    pub temperature: f64,
    /// Overall coupling constant A; material dependent.
    pub prefactor: f64,
}

impl PhononSpec {
    pub fn validate(&self) -> Result<()> {
        let finite =
            self.omega_c.is_finite() && self.temperature.is_finite() && self.prefactor.is_finite();
        if !finite || self.omega_c <= 0.0 || self.temperature < 0.0 || self.prefactor < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "phonon spectrum needs omega_c > 0, temperature ≥ 0, prefactor ≥ 0 (got {self:?})"
            )));
        }
        if self.n == 0 && self.temperature > 0.0 {
            return Err(Error::Divergent(
                "n = 0 with T > 0: the integrand behaves as 2T/ω near ω = 0".into(),
            ));
        }
        Ok(())
    }

    pub fn integrand(&self, w: f64) -> f64 {
        let base = w.powi(self.n as i32) * (-w / self.omega_c).exp();
        if self.temperature == 0.0 {
            return base;
        }
        base * (1.0 + 2.0 / (w / self.temperature).exp_m1())
    }
}

pub fn phonon_rate(spec: &PhononSpec) -> Result<f64> {
    spec.validate()?;
    let f = |w: f64| spec.integrand(w);

    let mut breaks = vec![0.0, spec.omega_c];
    if spec.temperature > 0.0 {
        breaks.push(spec.temperature);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += adaptive(&f, w[0], w[1]);
    }
    // Tail [u, ∞) through ω = u + x/(1 − x).
    let u = *breaks.last().unwrap();
    total += adaptive(
        &|x: f64| {
            let s = 1.0 - x;
            f(u + x / s) / (s * s)
        },
        0.0,
        1.0,
    );
    Ok(spec.prefactor * total)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (whole, err) = kronrod15(f, a, b);
    refine(f, a, b, whole, err, 0)
}

fn refine(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, err: f64, depth: u32) -> f64 {
    if err <= RELATIVE_TOLERANCE * whole.abs() || err < 1e-300 || depth >= MAX_DEPTH {
        return whole;
    }
    let mid = 0.5 * (a + b);
    let (left, el) = kronrod15(f, a, mid);
    let (right, er) = kronrod15(f, mid, b);
    refine(f, a, mid, left, el, depth + 1) + refine(f, mid, b, right, er, depth + 1)
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Gauss–Kronrod 7/15 estimate and error bound on [a, b].
fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for k in 0..7 {
        let dx = half * XGK[k];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}
