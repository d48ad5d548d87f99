//! Steady-state quantum correlations of two mechanical modes in a driven
//! optomechanical ring cavity.
//!
//! Two movable mirrors share one cavity field that is driven on the red
//! sideband and fed with squeezed light. The linearized fluctuation
//! dynamics are Gaussian, so the steady state is fully described by a
//! covariance matrix obtained from a Lyapunov equation. On top of that
//! steady state the crate evaluates Gaussian steering in both directions,
//! the logarithmic negativity, and the resulting steering-regime
//! classification, and sweeps them across laboratory parameters.
//!
//! The pipeline is `model` (parameters → drift/diffusion → steady
//! covariance) → `measures` (covariance → steering/entanglement) →
//! `sweep` (parameter grids → CSV), with `linalg` supplying the dense
//! kernels and `config` the plain-text run files. The `ringsteer` binary
//! wraps the pipeline in a small CLI.

pub mod config;
pub mod linalg;
pub mod measures;
pub mod model;
pub mod sweep;

pub use config::{parse_config, ConfigBuilder, ConfigError, RunConfig};
pub use measures::{SteeringRegime, SteeringReport, TwoModeCovariance};
pub use model::{ModelError, PhysicalParams};
pub use sweep::{FigurePreset, SweepParameter, SweepRecord, SweepSpec};
