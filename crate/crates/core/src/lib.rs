//! Exact time evolution and entanglement of two identical quantum dots
//! coupled by Förster hopping and driven by a classical laser.
//!
//! The dynamics live on the three symmetric states {vacuum, single exciton,
//! biexciton}. Coherent evolution is solved in closed form from the
//! spectrum of the rotating-frame coefficient matrix; pure dephasing is
//! propagated with the exponential of a 9×9 Liouvillian. Entanglement is
//! measured by the negativity of the partial transpose and by the Wootters
//! concurrence after embedding into the two-qubit space.

pub mod entanglement;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lindblad;
pub mod model;
pub mod ode;
pub mod spectral;
pub mod sweep;

pub use entanglement::{
    concurrence, embed_two_qubit, negativity, partial_transpose, DensityMatrix4,
};
pub use error::{Error, Result};
pub use lindblad::{
    build_liouvillian, integrate_rk, jz_matrix, phonon_rate, propagate_expm, LindbladModel,
    PhononSpec, Superoperator9,
};
pub use model::{
    build_xi, validate_density, DensityMatrix3, DensityReport, HermitianMatrix3, ModelParams,
    StateVector3,
};
pub use spectral::{
    characteristic_coeffs, cubic_eigenvalues, evolve_pure, occupations, spectral_decompose,
    CubicCoeffs, CubicRoots, PureModel, SpectralDecomposition,
};
pub use sweep::{
    figure_preset, run_sweep, FigureId, InitialState, Method, Observable, ParamAxis, ParamName,
    SweepConfig, SweepResult, TimeAxis,
};

pub use num_complex::Complex64;
