//! Observables on rectangular (Ωt × parameter) grids, and the figure presets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::entanglement::{concurrence, embed_pure, embed_unchecked, negativity, DensityMatrix4};
use crate::error::{Error, Result};
use crate::lindblad::LindbladModel;
use crate::model::{DensityMatrix3, ModelParams, StateVector3};
use crate::spectral::{occupations, PureModel};

/// Values may overshoot [0, 1] by this much before a point is rejected.
pub const RANGE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamName {
    DeltaRatio,
    EtaRatio,
    GammaRatio,
    Phi,
}

impl ParamName {
    pub const ALL: [ParamName; 4] = [
        ParamName::DeltaRatio,
        ParamName::EtaRatio,
        ParamName::GammaRatio,
        ParamName::Phi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::DeltaRatio => "delta_ratio",
            ParamName::EtaRatio => "eta_ratio",
            ParamName::GammaRatio => "gamma_ratio",
            ParamName::Phi => "phi",
        }
    }

    /// `base` with this parameter replaced by `value`.
    pub fn apply(self, base: &ModelParams, value: f64) -> ModelParams {
        let mut p = *base;
        match self {
            ParamName::DeltaRatio => p.delta = value * p.omega,
            ParamName::EtaRatio => p.eta = value * p.omega,
            ParamName::GammaRatio => p.gamma = value * p.omega,
            ParamName::Phi => p.phi = value,
        }
        p
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        ParamName::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown sweep parameter `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Observable {
    P0,
    P1,
    P2,
    Negativity,
    Concurrence,
}

impl Observable {
    pub const ALL: [Observable; 5] = [
        Observable::P0,
        Observable::P1,
        Observable::P2,
        Observable::Negativity,
        Observable::Concurrence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Observable::P0 => "p0",
            Observable::P1 => "p1",
            Observable::P2 => "p2",
            Observable::Negativity => "negativity",
            Observable::Concurrence => "concurrence",
        }
    }

    fn needs_two_qubit(self) -> bool {
        matches!(self, Observable::Negativity | Observable::Concurrence)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown observable `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Spectral solution of the amplitude equations; requires Γ = 0.
    ClosedForm,
    /// Exponential of the dephasing Liouvillian.
    Lindblad,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Lindblad => "lindblad",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed-form" | "closed_form" => Ok(Method::ClosedForm),
            "lindblad" => Ok(Method::Lindblad),
            _ => Err(Error::InvalidConfig(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialState {
    Pure(StateVector3),
    Mixed(DensityMatrix3),
}

impl InitialState {
    pub fn density(&self) -> DensityMatrix3 {
        match self {
            InitialState::Pure(b) => b.projector(),
            InitialState::Mixed(rho) => *rho,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeAxis {
    /// Final Ωt.
    pub t_max: f64,
    /// Number of samples including both ends.
    pub n_steps: usize,
}

impl TimeAxis {
    pub fn dt(&self) -> f64 {
        self.t_max / (self.n_steps - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_steps)
            .map(|k| self.t_max * k as f64 / (self.n_steps - 1) as f64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamAxis {
    pub name: ParamName,
    pub min: f64,
    pub max: f64,
    pub n_points: usize,
}

impl ParamAxis {
    /// A single-point axis pinned at the current value of `name` in `base`.
    pub fn fixed(name: ParamName, base: &ModelParams) -> Self {
        let value = match name {
            ParamName::DeltaRatio => base.delta / base.omega,
            ParamName::EtaRatio => base.eta / base.omega,
            ParamName::GammaRatio => base.gamma / base.omega,
            ParamName::Phi => base.phi,
        };
        Self {
            name,
            min: value,
            max: value,
            n_points: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.n_points == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        (0..self.n_points)
            .map(|k| self.min + span * k as f64 / (self.n_points - 1) as f64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub base: ModelParams,
    pub time_axis: TimeAxis,
    pub param_axis: ParamAxis,
    pub initial_state: InitialState,
    pub observables: Vec<Observable>,
    pub method: Method,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let TimeAxis { t_max, n_steps } = self.time_axis;
        if n_steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_steps must be ≥ 2, got {n_steps}"
            )));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "t_max must be > 0, got {t_max}"
            )));
        }
        let axis = &self.param_axis;
        if axis.n_points < 1 {
            return Err(Error::InvalidConfig("n_points must be ≥ 1".into()));
        }
        if !(axis.min.is_finite() && axis.max.is_finite()) {
            return Err(Error::InvalidConfig(
                "parameter axis bounds must be finite".into(),
            ));
        }
        if axis.name == ParamName::GammaRatio && axis.min.min(axis.max) < 0.0 {
            return Err(Error::InvalidConfig(
                "gamma_ratio axis must be non-negative".into(),
            ));
        }
        if self.observables.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one observable is required".into(),
            ));
        }
        if self.method == Method::ClosedForm {
            let max_gamma = if axis.name == ParamName::GammaRatio {
                axis.min.max(axis.max) * self.base.omega
            } else {
                self.base.gamma
            };
            if max_gamma > 0.0 {
                return Err(Error::InvalidConfig(
                    "closed-form method requires Γ = 0; use the lindblad method".into(),
                ));
            }
            if matches!(self.initial_state, InitialState::Mixed(_)) {
                return Err(Error::InvalidConfig(
                    "closed-form method requires a pure initial state".into(),
                ));
            }
        }
        let report = self.initial_state.density().report();
        if !report.within(crate::entanglement::INPUT_TOLERANCE) {
            return Err(Error::InvalidDensity(report));
        }
        Ok(())
    }

    pub fn point_params(&self, value: f64) -> ModelParams {
        self.param_axis.name.apply(&self.base, value)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub param_values: Vec<f64>,
    pub times: Vec<f64>,
    /// Row-major `[param][time][observable]`.
    pub data: Vec<f64>,
}

impl SweepResult {
    pub fn n_observables(&self) -> usize {
        self.config.observables.len()
    }

    pub fn observable_index(&self, obs: Observable) -> Option<usize> {
        self.config.observables.iter().position(|&o| o == obs)
    }

    /// Observable tuple at (param index, time index).
    pub fn point(&self, param: usize, time: usize) -> &[f64] {
        let k = self.n_observables();
        let start = (param * self.times.len() + time) * k;
        &self.data[start..start + k]
    }

    pub fn get(&self, param: usize, time: usize, obs: Observable) -> Option<f64> {
        self.observable_index(obs)
            .map(|i| self.point(param, time)[i])
    }

    /// Time series of one observable at one parameter point.
    pub fn series(&self, param: usize, obs: Observable) -> Option<Vec<f64>> {
        let i = self.observable_index(obs)?;
        Some(
            (0..self.times.len())
                .map(|t| self.point(param, t)[i])
                .collect(),
        )
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let param_values = config.param_axis.values();
    let times = config.time_axis.times();

    let rows: Vec<Vec<f64>> = param_values
        .par_iter()
        .enumerate()
        .map(|(index, &value)| {
            evaluate_point(config, value, &times).map_err(|e| Error::AtGridPoint {
                index,
                value,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    Ok(SweepResult {
        config: config.clone(),
        param_values,
        times,
        data: rows.concat(),
    })
}

fn evaluate_point(config: &SweepConfig, value: f64, times: &[f64]) -> Result<Vec<f64>> {
    let params = config.point_params(value);
    let observables = &config.observables;
    let two_qubit = observables.iter().any(|o| o.needs_two_qubit());
    let mut out = Vec::with_capacity(times.len() * observables.len());

    match (config.method, &config.initial_state) {
        (Method::ClosedForm, InitialState::Pure(b0)) => {
            let model = PureModel::new(&params)?;
            let b0 = b0.normalize()?;
            for &t in times {
                let b = model.evolve(&b0, t);
                let pops = occupations(&b);
                let rho4 = two_qubit.then(|| DensityMatrix4::from_pure(embed_pure(&b)));
                push_observables(&mut out, observables, pops, rho4.as_ref(), t)?;
            }
        }
        (Method::ClosedForm, InitialState::Mixed(_)) => {
            return Err(Error::InvalidConfig(
                "closed-form method requires a pure initial state".into(),
            ));
        }
        (Method::Lindblad, initial) => {
            let model = LindbladModel::new(&params)?;
            let states =
                model.evolve_uniform(&initial.density(), config.time_axis.dt(), times.len())?;
            for (rho, &t) in states.iter().zip(times) {
                let rho4 = two_qubit.then(|| embed_unchecked(rho));
                push_observables(&mut out, observables, rho.populations(), rho4.as_ref(), t)?;
            }
        }
    }
    Ok(out)
}

fn push_observables(
    out: &mut Vec<f64>,
    observables: &[Observable],
    pops: [f64; 3],
    rho4: Option<&DensityMatrix4>,
    t: f64,
) -> Result<()> {
    for &obs in observables {
        let value = match obs {
            Observable::P0 => pops[0],
            Observable::P1 => pops[1],
            Observable::P2 => pops[2],
            Observable::Negativity => negativity(rho4.expect("two-qubit state")),
            Observable::Concurrence => concurrence(rho4.expect("two-qubit state")),
        };
        if !value.is_finite() || !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&value) {
            return Err(Error::Numerical(format!(
                "{obs} = {value} out of range at Ωt = {t}"
            )));
        }
        out.push(value.clamp(0.0, 1.0));
    }
    Ok(())
}

/// Figure presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4a,
        FigureId::Fig4b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FigureId::Fig1 => "populations vs Ωt and Δ/Ω; φ = 0, η/Ω = 0.1, Γ = 0",
            FigureId::Fig2 => "populations vs Ωt and η/Ω; φ = 0, Δ/Ω = 0, Γ = 0",
            FigureId::Fig3a => "negativity vs Ωt and Δ/Ω; φ = 0, η/Ω = 0.1, Γ = 0",
            FigureId::Fig3b => "negativity vs Ωt and η/Ω; Δ/Ω = 0, Γ = 0",
            FigureId::Fig4a => "negativity vs Ωt and η/Ω; Δ/Ω = 0, Γ/Ω = 0.01",
            FigureId::Fig4b => "negativity vs Ωt and η/Ω; Δ/Ω = 0, Γ/Ω = 0.05",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    /// Accepts `fig3a` as well as the bare `3a`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("fig").unwrap_or(&key);
        FigureId::ALL
            .into_iter()
            .find(|f| &f.as_str()[3..] == key)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub const PRESET_T_MAX: f64 = 25.0;
pub const PRESET_STEPS: usize = 501;
pub const PRESET_POINTS: usize = 101;

pub fn figure_preset(id: FigureId) -> SweepConfig {
    use FigureId::*;
    let (delta, eta, gamma) = match id {
        Fig1 | Fig3a => (0.0, 0.1, 0.0),
        Fig2 | Fig3b => (0.0, 0.0, 0.0),
        Fig4a => (0.0, 0.0, 0.01),
        Fig4b => (0.0, 0.0, 0.05),
    };
    let axis_name = match id {
        Fig1 | Fig3a => ParamName::DeltaRatio,
        _ => ParamName::EtaRatio,
    };
    let observables = match id {
        Fig1 | Fig2 => vec![Observable::P0, Observable::P1, Observable::P2],
        _ => vec![Observable::Negativity],
    };
    let method = if gamma > 0.0 {
        Method::Lindblad
    } else {
        Method::ClosedForm
    };
    SweepConfig {
        base: ModelParams::from_ratios(delta, eta, gamma, 0.0),
        time_axis: TimeAxis {
            t_max: PRESET_T_MAX,
            n_steps: PRESET_STEPS,
        },
        param_axis: ParamAxis {
            name: axis_name,
            min: 0.0,
            max: 10.0,
            n_points: PRESET_POINTS,
        },
        initial_state: InitialState::Pure(StateVector3::vacuum()),
        observables,
        method,
    }
}

/// Looks a preset up by name (`fig1`, `3a`, ...).
pub fn figure_preset_by_name(name: &str) -> Result<SweepConfig> {
    Ok(figure_preset(name.parse()?))
}
