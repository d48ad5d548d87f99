//! Physical model of a driven ring cavity with two movable mirrors.
//!
//! Two mechanical modes couple to one cavity field held on the red sideband
//! and fed by squeezed light. After linearization in the rotating-wave
//! regime the quadrature fluctuations obey a linear Langevin equation
//! `dX/dt = A X + noise`, and the steady covariance solves the Lyapunov
//! equation `A V + V Aᵀ = −D`. This module builds `A` and `D` from
//! laboratory parameters and produces the steady covariance.
//!
//! Quadrature ordering is `(q₁, p₁, q₂, p₂, x, y)`: mirror 1, mirror 2,
//! cavity. Vacuum variance is 1/2. All rates and frequencies are angular
//! (rad/s).

use crate::linalg::{self, LinalgError, Matrix};
use crate::measures::TwoModeCovariance;
use thiserror::Error;

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant (J/K).
pub const KB: f64 = 1.380_649e-23;

/// Errors from parameter validation and steady-state construction.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    /// A parameter that must be strictly positive was not.
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    /// A parameter that must be non-negative was negative.
    #[error("parameter `{name}` must be non-negative, got {value}")]
    NegativeParameter { name: &'static str, value: f64 },
    /// A parameter was NaN or infinite.
    #[error("parameter `{name}` must be finite")]
    NonFiniteParameter { name: &'static str },
    /// Propagated numerical failure (most commonly an unstable drift).
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Laboratory parameters of the driven ring cavity.
///
/// The default set describes a cavity with 145 ng mirrors oscillating at
/// 2π·947 kHz with damping 2π·140 Hz, a 2π·215 kHz cavity linewidth, a
/// 50 mW drive on the red sideband (`detuning = −omega_m`), arm lengths
/// 112 µm and 85 µm, incidence angles π/6 and π/3, five thermal phonons on
/// each mirror, and squeezing parameter 1.5 on the optical input.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalParams {
    /// Mass of movable mirror 1 (kg).
    pub mass1: f64,
    /// Mass of movable mirror 2 (kg).
    pub mass2: f64,
    /// Mechanical angular frequency shared by both mirrors (rad/s).
    pub omega_m: f64,
    /// Mechanical damping rate of mirror 1 (rad/s).
    pub gamma1: f64,
    /// Mechanical damping rate of mirror 2 (rad/s).
    pub gamma2: f64,
    /// Cavity amplitude decay rate (rad/s).
    pub kappa: f64,
    /// Cavity resonance frequency (rad/s).
    pub omega_c: f64,
    /// Drive laser frequency (rad/s).
    pub omega_laser: f64,
    /// Drive power (W); zero switches the coupling off.
    pub power: f64,
    /// Arm length to mirror 1 (m).
    pub length1: f64,
    /// Arm length to mirror 2 (m).
    pub length2: f64,
    /// Incidence angle on mirror 1 (rad).
    pub theta1: f64,
    /// Incidence angle on mirror 2 (rad).
    pub theta2: f64,
    /// Thermal phonon occupancy of mirror 1.
    pub nth1: f64,
    /// Thermal phonon occupancy of mirror 2.
    pub nth2: f64,
    /// Squeezing parameter of the optical input.
    pub squeeze_r: f64,
    /// Laser detuning from cavity resonance (rad/s); the linearized model
    /// assumes operation near the red sideband `detuning = −omega_m`.
    pub detuning: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        let omega_m = 2.0 * std::f64::consts::PI * 947e3;
        PhysicalParams {
            mass1: 145e-12,
            mass2: 145e-12,
            omega_m,
            gamma1: 2.0 * std::f64::consts::PI * 140.0,
            gamma2: 2.0 * std::f64::consts::PI * 140.0,
            kappa: 2.0 * std::f64::consts::PI * 215e3,
            omega_c: 2.0 * std::f64::consts::PI * 5.26e14,
            omega_laser: 2.0 * std::f64::consts::PI * 2.82e14,
            power: 50e-3,
            length1: 112e-6,
            length2: 85e-6,
            theta1: std::f64::consts::FRAC_PI_6,
            theta2: std::f64::consts::FRAC_PI_3,
            nth1: 5.0,
            nth2: 5.0,
            squeeze_r: 1.5,
            detuning: -omega_m,
        }
    }
}

/// Optomechanical couplings derived from [`PhysicalParams`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedCouplings {
    /// Bare many-photon coupling of mirror 1 (rad/s).
    pub g1: f64,
    /// Bare many-photon coupling of mirror 2 (rad/s).
    pub g2: f64,
    /// Angle-weighted coupling `g1 · cos²(θ₁/2)` entering the drift (rad/s).
    pub g1_eff: f64,
    /// Angle-weighted coupling `g2 · cos²(θ₂/2)` entering the drift (rad/s).
    pub g2_eff: f64,
}

/// Structured outcome of [`validate_params`]: hard errors that prevent
/// building the model and soft warnings about regime validity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Check the hard constraints shared by all model constructors.
fn check_params(p: &PhysicalParams) -> Result<(), ModelError> {
    let finite = [
        ("mass1", p.mass1),
        ("mass2", p.mass2),
        ("omega_m", p.omega_m),
        ("gamma1", p.gamma1),
        ("gamma2", p.gamma2),
        ("kappa", p.kappa),
        ("omega_c", p.omega_c),
        ("omega_laser", p.omega_laser),
        ("power", p.power),
        ("length1", p.length1),
        ("length2", p.length2),
        ("theta1", p.theta1),
        ("theta2", p.theta2),
        ("nth1", p.nth1),
        ("nth2", p.nth2),
        ("squeeze_r", p.squeeze_r),
        ("detuning", p.detuning),
    ];
    for (name, value) in finite {
        if !value.is_finite() {
            return Err(ModelError::NonFiniteParameter { name });
        }
    }
    let positive = [
        ("mass1", p.mass1),
        ("mass2", p.mass2),
        ("omega_m", p.omega_m),
        ("gamma1", p.gamma1),
        ("gamma2", p.gamma2),
        ("kappa", p.kappa),
        ("omega_c", p.omega_c),
        ("omega_laser", p.omega_laser),
        ("length1", p.length1),
        ("length2", p.length2),
    ];
    for (name, value) in positive {
        if value <= 0.0 {
            return Err(ModelError::NonPositiveParameter { name, value });
        }
    }
    let non_negative = [
        ("power", p.power),
        ("nth1", p.nth1),
        ("nth2", p.nth2),
        ("squeeze_r", p.squeeze_r),
    ];
    for (name, value) in non_negative {
        if value < 0.0 {
            return Err(ModelError::NegativeParameter { name, value });
        }
    }
    Ok(())
}

/// Many-photon optomechanical couplings.
///
/// The bare coupling of mirror `j` is
/// `G_j = √(ω_c² κ P / (l_j² m_j ω_m ω_L (κ²/4 + Δ²)))` and the drift
/// matrix uses the angle-weighted `G_j cos²(θ_j/2)`. Zero drive power
/// yields zero couplings.
///
/// # Errors
/// [`ModelError`] for non-finite, non-positive, or negative parameters.
pub fn effective_coupling(p: &PhysicalParams) -> Result<DerivedCouplings, ModelError> {
    check_params(p)?;
    let lorentz = p.kappa * p.kappa / 4.0 + p.detuning * p.detuning;
    let shared = p.omega_c * p.omega_c * p.kappa * p.power / (p.omega_m * p.omega_laser * lorentz);
    let bare = |length: f64, mass: f64| (shared / (length * length * mass)).sqrt();
    let g1 = bare(p.length1, p.mass1);
    let g2 = bare(p.length2, p.mass2);
    let half_angle_weight = |theta: f64| {
        let c = (theta / 2.0).cos();
        c * c
    };
    Ok(DerivedCouplings {
        g1,
        g2,
        g1_eff: g1 * half_angle_weight(p.theta1),
        g2_eff: g2 * half_angle_weight(p.theta2),
    })
}

/// Bose–Einstein occupancy `1 / (exp(ħω/k_BT) − 1)` of a mode at angular
/// frequency `omega` (rad/s) in a bath at `temperature` (K). Zero
/// temperature gives exactly zero.
///
/// # Panics
/// Panics if `omega` is not positive or `temperature` is negative.
pub fn thermal_occupancy(omega: f64, temperature: f64) -> f64 {
    assert!(omega > 0.0, "mode frequency must be positive");
    assert!(temperature >= 0.0, "temperature must be non-negative");
    if temperature == 0.0 {
        return 0.0;
    }
    1.0 / (HBAR * omega / (KB * temperature)).exp_m1()
}

/// Second moments `(N, M)` of a squeezed vacuum input with squeezing
/// parameter `r`: `N = sinh²r` (occupancy) and `M = sinh r · cosh r`
/// (correlation), satisfying `M² = N(N+1)`.
pub fn squeeze_moments(r: f64) -> (f64, f64) {
    assert!(r.is_finite(), "squeezing parameter must be finite");
    let s = r.sinh();
    let c = r.cosh();
    (s * s, s * c)
}

/// Drift matrix `A` (rad/s) of the linearized fluctuation dynamics in the
/// ordering `(q₁, p₁, q₂, p₂, x, y)`.
///
/// Each 2×2 diagonal block decays at half the respective damping rate; the
/// off-diagonal blocks carry the beam-splitter coupling with mirror 1
/// entering with weight `+g1_eff` and mirror 2 with `−g2_eff` (the relative
/// sign reflects the opposite propagation sense of the two arms).
///
/// # Errors
/// [`ModelError`] for invalid parameters.
pub fn drift_matrix(p: &PhysicalParams) -> Result<Matrix, ModelError> {
    let c = effective_coupling(p)?;
    let mut a = Matrix::zeros(6, 6);
    for (i, rate) in [p.gamma1, p.gamma1, p.gamma2, p.gamma2, p.kappa, p.kappa]
        .into_iter()
        .enumerate()
    {
        a[(i, i)] = -0.5 * rate;
    }
    a[(0, 4)] = c.g1_eff;
    a[(1, 5)] = c.g1_eff;
    a[(2, 4)] = -c.g2_eff;
    a[(3, 5)] = -c.g2_eff;
    a[(4, 0)] = -c.g1_eff;
    a[(5, 1)] = -c.g1_eff;
    a[(4, 2)] = c.g2_eff;
    a[(5, 3)] = c.g2_eff;
    Ok(a)
}

/// Diffusion matrix `D` (rad/s) of the input noises in the ordering
/// `(q₁, p₁, q₂, p₂, x, y)`.
///
/// Mechanical quadratures see thermal noise `γ_j (2 n_j + 1) / 2`; the
/// cavity quadratures see the squeezed input, `κ e^{2r}/2` on the
/// anti-squeezed `x` and `κ e^{−2r}/2` on the squeezed `y`.
///
/// # Errors
/// [`ModelError`] for invalid parameters.
pub fn diffusion_matrix(p: &PhysicalParams) -> Result<Matrix, ModelError> {
    check_params(p)?;
    let mech1 = 0.5 * p.gamma1 * (2.0 * p.nth1 + 1.0);
    let mech2 = 0.5 * p.gamma2 * (2.0 * p.nth2 + 1.0);
    let (n_sq, m_sq) = squeeze_moments(p.squeeze_r);
    // 2N+1±2M telescopes to e^{±2r}; built from the moments so the two
    // entries stay consistent with `squeeze_moments` by construction.
    let cav_x = 0.5 * p.kappa * (2.0 * n_sq + 1.0 + 2.0 * m_sq);
    let cav_y = 0.5 * p.kappa * (2.0 * n_sq + 1.0 - 2.0 * m_sq);
    Ok(Matrix::from_diagonal(&[
        mech1, mech1, mech2, mech2, cav_x, cav_y,
    ]))
}

/// Steady-state covariance matrix of `(q₁, p₁, q₂, p₂, x, y)`.
///
/// Solves `A V + V Aᵀ = −D`. Drift and diffusion are rescaled by `ω_m`
/// before the solve — the steady state is invariant under a common rate
/// rescaling — so the linear system stays well-conditioned for entries
/// that span hertz to terahertz.
///
/// # Errors
/// [`ModelError`] for invalid parameters; [`LinalgError::NotHurwitz`]
/// (wrapped) when the drift admits no steady state.
pub fn steady_covariance(p: &PhysicalParams) -> Result<Matrix, ModelError> {
    let a = drift_matrix(p)?.scaled(1.0 / p.omega_m);
    let d = diffusion_matrix(p)?.scaled(1.0 / p.omega_m);
    Ok(linalg::solve_lyapunov(&a, &d)?)
}

/// Steady-state covariance of the two mechanical modes alone: the upper
/// 4×4 block of [`steady_covariance`] split into 2×2 blocks.
///
/// # Errors
/// Any error of [`steady_covariance`].
pub fn mechanical_covariance(p: &PhysicalParams) -> Result<TwoModeCovariance, ModelError> {
    let v = steady_covariance(p)?;
    Ok(TwoModeCovariance::from_full(&v))
}

/// Validate parameters without failing fast: collect every hard error and
/// regime warning.
///
/// Errors mirror [`effective_coupling`]'s rejections. Warnings flag
/// operation outside the modelled regime: sideband resolution
/// `ω_m/κ < 3`, mechanical quality factor `ω_m/γ_j < 100`, or a drive
/// away from the red sideband (`detuning ≠ −ω_m`).
pub fn validate_params(p: &PhysicalParams) -> ValidationReport {
    let mut report = ValidationReport::default();
    let positive = [
        ("mass1", p.mass1),
        ("mass2", p.mass2),
        ("omega_m", p.omega_m),
        ("gamma1", p.gamma1),
        ("gamma2", p.gamma2),
        ("kappa", p.kappa),
        ("omega_c", p.omega_c),
        ("omega_laser", p.omega_laser),
        ("length1", p.length1),
        ("length2", p.length2),
    ];
    for (name, value) in positive {
        if !value.is_finite() {
            report
                .errors
                .push(ModelError::NonFiniteParameter { name }.to_string());
        } else if value <= 0.0 {
            report
                .errors
                .push(ModelError::NonPositiveParameter { name, value }.to_string());
        }
    }
    let non_negative = [
        ("power", p.power),
        ("nth1", p.nth1),
        ("nth2", p.nth2),
        ("squeeze_r", p.squeeze_r),
    ];
    for (name, value) in non_negative {
        if !value.is_finite() {
            report
                .errors
                .push(ModelError::NonFiniteParameter { name }.to_string());
        } else if value < 0.0 {
            report
                .errors
                .push(ModelError::NegativeParameter { name, value }.to_string());
        }
    }
    for (name, value) in [
        ("theta1", p.theta1),
        ("theta2", p.theta2),
        ("detuning", p.detuning),
    ] {
        if !value.is_finite() {
            report
                .errors
                .push(ModelError::NonFiniteParameter { name }.to_string());
        }
    }
    if report.is_ok() {
        if p.omega_m / p.kappa < 3.0 {
            report.warnings.push(format!(
                "sideband resolution omega_m/kappa = {:.2} < 3; rotating-wave model marginal",
                p.omega_m / p.kappa
            ));
        }
        for (name, gamma) in [("gamma1", p.gamma1), ("gamma2", p.gamma2)] {
            let q = p.omega_m / gamma;
            if q < 100.0 {
                report.warnings.push(format!(
                    "mechanical quality factor omega_m/{name} = {q:.2} < 100"
                ));
            }
        }
        if p.detuning != -p.omega_m {
            report.warnings.push(format!(
                "detuning {:.6e} is off the red sideband -omega_m = {:.6e}; \
                 the linearized model assumes red-sideband drive",
                p.detuning, -p.omega_m
            ));
        }
    }
    report
}
