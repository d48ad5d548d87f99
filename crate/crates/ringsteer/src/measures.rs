//! Gaussian correlation measures on a two-mode covariance matrix.
//!
//! Works in the convention where vacuum quadrature variance is 1/2, so a
//! two-mode state is physical when every symplectic eigenvalue of its
//! covariance matrix is at least 1/2. Provides Gaussian steering in both
//! directions, the logarithmic negativity, physicality checking, and a
//! steering-regime classification.

use crate::linalg::{self, Matrix};
use thiserror::Error;

/// Steering below this threshold counts as zero when classifying regimes.
pub const STEERING_THRESHOLD: f64 = 1e-9;

/// Relative slack used by [`is_physical`].
const PHYSICALITY_TOL: f64 = 1e-9;

/// Errors from correlation measures.
#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    /// The covariance matrix is singular or otherwise outside the domain
    /// of the measure (e.g. a non-positive determinant under the log).
    #[error("degenerate covariance: {reason}")]
    DegenerateState { reason: &'static str },
}

fn degenerate(reason: &'static str) -> MeasureError {
    MeasureError::DegenerateState { reason }
}

/// Which party performs the measurements in a steering test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Mode A steers mode B.
    AToB,
    /// Mode B steers mode A.
    BToA,
}

/// Classification of the steady state by which steering directions are open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SteeringRegime {
    /// Neither direction steers.
    NoSteering,
    /// Only A steers B.
    OneWayAToB,
    /// Only B steers A.
    OneWayBToA,
    /// Both directions steer.
    TwoWay,
}

impl std::fmt::Display for SteeringRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SteeringRegime::NoSteering => "no_steering",
            SteeringRegime::OneWayAToB => "one_way_a_to_b",
            SteeringRegime::OneWayBToA => "one_way_b_to_a",
            SteeringRegime::TwoWay => "two_way",
        };
        f.write_str(name)
    }
}

/// Covariance matrix of two modes in block form,
/// `V = [[va, vab], [vabᵀ, vb]]`, vacuum variance 1/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeCovariance {
    /// Reduced covariance of mode A.
    pub va: [[f64; 2]; 2],
    /// Reduced covariance of mode B.
    pub vb: [[f64; 2]; 2],
    /// Cross-correlation block between A and B.
    pub vab: [[f64; 2]; 2],
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

impl TwoModeCovariance {
    /// Assemble from explicit blocks.
    pub fn new(va: [[f64; 2]; 2], vb: [[f64; 2]; 2], vab: [[f64; 2]; 2]) -> Self {
        TwoModeCovariance { va, vb, vab }
    }

    /// Extract the two leading modes from a full covariance matrix of at
    /// least two modes (e.g. the 6×6 mirror–mirror–cavity covariance).
    ///
    /// # Panics
    /// Panics if `v` is smaller than 4×4.
    pub fn from_full(v: &Matrix) -> Self {
        assert!(
            v.rows() >= 4 && v.cols() >= 4,
            "need at least a 4x4 covariance"
        );
        let grab = |r: usize, c: usize| {
            [
                [v[(r, c)], v[(r, c + 1)]],
                [v[(r + 1, c)], v[(r + 1, c + 1)]],
            ]
        };
        TwoModeCovariance {
            va: grab(0, 0),
            vb: grab(2, 2),
            vab: grab(0, 2),
        }
    }

    /// Two-mode squeezed vacuum with squeezing parameter `s`, the standard
    /// pure-state benchmark: `va = vb = cosh(2s)/2 · I`,
    /// `vab = sinh(2s)/2 · diag(1, −1)`.
    pub fn two_mode_squeezed(s: f64) -> Self {
        let c = 0.5 * (2.0 * s).cosh();
        let m = 0.5 * (2.0 * s).sinh();
        TwoModeCovariance {
            va: [[c, 0.0], [0.0, c]],
            vb: [[c, 0.0], [0.0, c]],
            vab: [[m, 0.0], [0.0, -m]],
        }
    }

    /// The assembled symmetric 4×4 matrix.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self.va[i][j];
                m[(2 + i, 2 + j)] = self.vb[i][j];
                m[(i, 2 + j)] = self.vab[i][j];
                m[(2 + j, i)] = self.vab[i][j];
            }
        }
        m
    }

    /// The state with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        let t = |m: &[[f64; 2]; 2]| [[m[0][0], m[1][0]], [m[0][1], m[1][1]]];
        TwoModeCovariance {
            va: self.vb,
            vb: self.va,
            vab: t(&self.vab),
        }
    }

    fn det_a(&self) -> f64 {
        det2(&self.va)
    }

    fn det_b(&self) -> f64 {
        det2(&self.vb)
    }

    fn det_ab(&self) -> f64 {
        det2(&self.vab)
    }

    fn det_full(&self) -> f64 {
        linalg::determinant(&self.to_matrix())
    }
}

/// Gaussian steering of the given direction:
/// `G^{A→B} = max[0, ½ ln(det va / (4 det V))]` and symmetrically with
/// `det vb` for B→A. Positive values certify that the steering party can
/// steer the other mode.
///
/// # Errors
/// [`MeasureError::DegenerateState`] when the reduced or full determinant
/// is not strictly positive.
pub fn steering(cov: &TwoModeCovariance, direction: Direction) -> Result<f64, MeasureError> {
    let reduced = match direction {
        Direction::AToB => cov.det_a(),
        Direction::BToA => cov.det_b(),
    };
    if reduced <= 0.0 {
        return Err(degenerate("non-positive reduced-mode determinant"));
    }
    let full = cov.det_full();
    if full <= 0.0 {
        return Err(degenerate("non-positive covariance determinant"));
    }
    Ok((0.5 * (reduced / (4.0 * full)).ln()).max(0.0))
}

/// Smaller symplectic eigenvalue of the partial transpose,
/// `ν̃ = √((σ̃ − √(σ̃² − 4 det V)) / 2)` with
/// `σ̃ = det va + det vb − 2 det vab`. The state is entangled iff
/// `ν̃ < 1/2`.
///
/// # Errors
/// [`MeasureError::DegenerateState`] when `det V ≤ 0`, the discriminant is
/// negative (complex spectrum), or the eigenvalue vanishes.
pub fn min_symplectic_pt(cov: &TwoModeCovariance) -> Result<f64, MeasureError> {
    let full = cov.det_full();
    if full <= 0.0 {
        return Err(degenerate("non-positive covariance determinant"));
    }
    let sigma = cov.det_a() + cov.det_b() - 2.0 * cov.det_ab();
    let disc = sigma * sigma - 4.0 * full;
    // Pure states sit exactly on disc = 0; tolerate roundoff dipping barely
    // below before declaring the spectrum complex.
    if disc < -1e-12 {
        return Err(degenerate("complex partial-transpose spectrum"));
    }
    // Smaller root of x² − σ̃x + det V via the larger one: subtracting the
    // square root from σ̃ directly cancels catastrophically when the state
    // is strongly squeezed (σ̃² ≫ det V).
    let big = 0.5 * (sigma + disc.max(0.0).sqrt());
    if big <= 0.0 {
        return Err(degenerate("vanishing partial-transpose eigenvalue"));
    }
    let nu_sq = full / big;
    if nu_sq <= 0.0 {
        return Err(degenerate("vanishing partial-transpose eigenvalue"));
    }
    Ok(nu_sq.sqrt())
}

/// Logarithmic negativity `E_N = max[0, −ln(2ν̃)]`, an entanglement
/// monotone that is positive exactly when the partial transpose is
/// non-positive.
///
/// # Errors
/// Propagates [`min_symplectic_pt`] failures.
pub fn log_negativity(cov: &TwoModeCovariance) -> Result<f64, MeasureError> {
    let nu = min_symplectic_pt(cov)?;
    Ok((-(2.0 * nu).ln()).max(0.0))
}

/// True when the blocks form a valid quantum covariance matrix: symmetric
/// reduced blocks, a positive-definite matrix, and both symplectic
/// eigenvalues of `V` itself at least `1/2` (up to a `1e−9` slack for
/// roundoff).
///
/// The eigenvalue bound is tested through the equivalent polynomial form
/// `det V + 1/16 ≥ σ₊/4` with `σ₊ = det va + det vb + 2 det vab` (plus
/// `σ₊ ≥ 1/2`), which stays well conditioned for nearly pure states where
/// an explicit eigenvalue extraction would square-root the roundoff.
pub fn is_physical(cov: &TwoModeCovariance) -> bool {
    let matrix = cov.to_matrix();
    let scale = matrix.max_abs().max(1.0);
    let sym = |m: &[[f64; 2]; 2]| (m[0][1] - m[1][0]).abs() <= PHYSICALITY_TOL * scale;
    if !sym(&cov.va) || !sym(&cov.vb) {
        return false;
    }
    // Positive definiteness via leading principal minors.
    let full = cov.det_full();
    let minor3 = linalg::determinant(&matrix.block(0, 0, 3, 3));
    if cov.va[0][0] <= 0.0 || cov.det_a() <= 0.0 || minor3 <= 0.0 || full <= 0.0 {
        return false;
    }
    // Both roots ν² of x² − σ₊x + det V lie at or above 1/4 iff the
    // polynomial is non-negative at 1/4 and its vertex sits to the right.
    let sigma = cov.det_a() + cov.det_b() + 2.0 * cov.det_ab();
    let slack = PHYSICALITY_TOL * (1.0 + sigma * sigma);
    sigma >= 0.5 - PHYSICALITY_TOL && full + 1.0 / 16.0 - 0.25 * sigma >= -slack
}

/// Classify two steering values into a regime, treating anything at or
/// below [`STEERING_THRESHOLD`] as zero.
pub fn classify(g_ab: f64, g_ba: f64) -> SteeringRegime {
    match (g_ab > STEERING_THRESHOLD, g_ba > STEERING_THRESHOLD) {
        (false, false) => SteeringRegime::NoSteering,
        (true, false) => SteeringRegime::OneWayAToB,
        (false, true) => SteeringRegime::OneWayBToA,
        (true, true) => SteeringRegime::TwoWay,
    }
}

/// All measures of one state in one pass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteeringReport {
    /// Gaussian steering A→B.
    pub g_ab: f64,
    /// Gaussian steering B→A.
    pub g_ba: f64,
    /// Logarithmic negativity.
    pub log_negativity: f64,
    /// Smaller symplectic eigenvalue of the partial transpose.
    pub min_symplectic: f64,
    /// Steering-regime classification of (`g_ab`, `g_ba`).
    pub regime: SteeringRegime,
}

/// Evaluate every measure on one covariance matrix.
///
/// # Errors
/// Propagates the first [`MeasureError`] of the constituent measures.
pub fn report(cov: &TwoModeCovariance) -> Result<SteeringReport, MeasureError> {
    let g_ab = steering(cov, Direction::AToB)?;
    let g_ba = steering(cov, Direction::BToA)?;
    let nu = min_symplectic_pt(cov)?;
    let e_n = (-(2.0 * nu).ln()).max(0.0);
    Ok(SteeringReport {
        g_ab,
        g_ba,
        log_negativity: e_n,
        min_symplectic: nu,
        regime: classify(g_ab, g_ba),
    })
}
