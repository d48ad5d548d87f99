//! Parameter sweeps over the steady-state measures and deterministic CSV
//! output, including the four preset studies used throughout the crate.

use crate::measures::{self, SteeringReport};
use crate::model::{self, ModelError, PhysicalParams};
use std::io::{self, Write};
use std::str::FromStr;
use thiserror::Error;

/// Parameter a sweep varies. The identifiers double as the config-file
/// names of the swept quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParameter {
    /// Squeezing parameter `r` of the optical input.
    SqueezeR,
    /// Thermal occupancy `nth`, applied to both mirrors together.
    Thermal,
    /// Drive power (W).
    Power,
    /// Arm length to mirror 1 (m).
    Length1,
    /// Arm length to mirror 2 (m).
    Length2,
    /// Incidence angle on mirror 1 (rad).
    Theta1,
    /// Incidence angle on mirror 2 (rad).
    Theta2,
}

impl SweepParameter {
    /// Config-file name of the parameter.
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::SqueezeR => "r",
            SweepParameter::Thermal => "nth",
            SweepParameter::Power => "power",
            SweepParameter::Length1 => "l1",
            SweepParameter::Length2 => "l2",
            SweepParameter::Theta1 => "theta1",
            SweepParameter::Theta2 => "theta2",
        }
    }

    /// Write `value` into the matching field(s) of `params`.
    pub fn apply(&self, params: &mut PhysicalParams, value: f64) {
        match self {
            SweepParameter::SqueezeR => params.squeeze_r = value,
            SweepParameter::Thermal => {
                params.nth1 = value;
                params.nth2 = value;
            }
            SweepParameter::Power => params.power = value,
            SweepParameter::Length1 => params.length1 = value,
            SweepParameter::Length2 => params.length2 = value,
            SweepParameter::Theta1 => params.theta1 = value,
            SweepParameter::Theta2 => params.theta2 = value,
        }
    }
}

impl std::fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = UnknownSweepParameter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" => Ok(SweepParameter::SqueezeR),
            "nth" => Ok(SweepParameter::Thermal),
            "power" => Ok(SweepParameter::Power),
            "l1" => Ok(SweepParameter::Length1),
            "l2" => Ok(SweepParameter::Length2),
            "theta1" => Ok(SweepParameter::Theta1),
            "theta2" => Ok(SweepParameter::Theta2),
            _ => Err(UnknownSweepParameter(s.to_string())),
        }
    }
}

/// Rejected sweep-parameter name.
#[derive(Debug, Error, PartialEq)]
#[error("unknown sweep parameter `{0}` (expected r, nth, power, l1, l2, theta1 or theta2)")]
pub struct UnknownSweepParameter(pub String);

/// A fully specified sweep: base parameters plus a swept parameter on a
/// uniform grid of `steps ≥ 2` points from `start` to `stop` inclusive.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: PhysicalParams,
    pub param: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    /// The uniform grid of swept values, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + i as f64 * h).collect()
    }

    /// Base parameters with the swept value written in.
    pub fn params_at(&self, value: f64) -> PhysicalParams {
        let mut p = self.base.clone();
        self.param.apply(&mut p, value);
        p
    }
}

/// One sweep point: the swept value and its measures, or `None` when the
/// drift at that point has no steady state.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub swept: f64,
    pub report: Option<SteeringReport>,
}

/// Evaluate the steady-state measures across a sweep grid.
///
/// Points without a steady state — a non-Hurwitz drift, or a covariance
/// too degenerate to evaluate — are flagged (`report: None`) rather than
/// aborting the sweep; every other failure aborts with the error.
///
/// # Errors
/// [`ModelError`] for invalid base parameters or a singular linear system
/// at some point.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>, ModelError> {
    spec.grid()
        .into_iter()
        .map(|value| {
            let params = spec.params_at(value);
            let report = match model::mechanical_covariance(&params) {
                Ok(cov) => measures::report(&cov).ok(),
                Err(ModelError::Linalg(crate::linalg::LinalgError::NotHurwitz)) => None,
                Err(e) => return Err(e),
            };
            Ok(SweepRecord {
                swept: value,
                report,
            })
        })
        .collect()
}

/// The four preset parameter studies.
///
/// `Fig2a`/`Fig2b` sweep squeezing `r ∈ [0, 3.5]` over 141 points at five
/// thermal phonons; `Fig3a`/`Fig3b` sweep thermal occupancy `nth ∈ [0, 5]`
/// over 101 points at `r = 1.5`. The `a` variants use the default geometry
/// (`l₁ = 112 µm, θ₁ = π/6, l₂ = 85 µm, θ₂ = π/3`); the `b` variants swap
/// the two mirrors' geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigurePreset {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
}

impl FromStr for FigurePreset {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig2a" => Ok(FigurePreset::Fig2a),
            "fig2b" => Ok(FigurePreset::Fig2b),
            "fig3a" => Ok(FigurePreset::Fig3a),
            "fig3b" => Ok(FigurePreset::Fig3b),
            _ => Err(UnknownPreset(s.to_string())),
        }
    }
}

impl std::fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FigurePreset::Fig2a => "fig2a",
            FigurePreset::Fig2b => "fig2b",
            FigurePreset::Fig3a => "fig3a",
            FigurePreset::Fig3b => "fig3b",
        };
        f.write_str(name)
    }
}

/// Rejected preset name.
#[derive(Debug, Error, PartialEq)]
#[error("unknown figure preset `{0}` (expected fig2a, fig2b, fig3a or fig3b)")]
pub struct UnknownPreset(pub String);

/// Exchange the two mirrors' roles: geometry, mass, damping and bath.
fn mirror_swapped(mut p: PhysicalParams) -> PhysicalParams {
    std::mem::swap(&mut p.length1, &mut p.length2);
    std::mem::swap(&mut p.theta1, &mut p.theta2);
    std::mem::swap(&mut p.mass1, &mut p.mass2);
    std::mem::swap(&mut p.gamma1, &mut p.gamma2);
    std::mem::swap(&mut p.nth1, &mut p.nth2);
    p
}

/// The sweep specification of a preset study.
pub fn figure_preset(preset: FigurePreset) -> SweepSpec {
    let base = PhysicalParams::default();
    match preset {
        FigurePreset::Fig2a => SweepSpec {
            base,
            param: SweepParameter::SqueezeR,
            start: 0.0,
            stop: 3.5,
            steps: 141,
        },
        FigurePreset::Fig2b => SweepSpec {
            base: mirror_swapped(base),
            param: SweepParameter::SqueezeR,
            start: 0.0,
            stop: 3.5,
            steps: 141,
        },
        FigurePreset::Fig3a => SweepSpec {
            base,
            param: SweepParameter::Thermal,
            start: 0.0,
            stop: 5.0,
            steps: 101,
        },
        FigurePreset::Fig3b => SweepSpec {
            base: mirror_swapped(base),
            param: SweepParameter::Thermal,
            start: 0.0,
            stop: 5.0,
            steps: 101,
        },
    }
}

/// Format a float for CSV output: `{:.12e}`, with non-finite values
/// written as `nan`.
fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.12e}")
    } else {
        "nan".to_string()
    }
}

/// Write sweep records as CSV with the fixed header
/// `swept,g_ab,g_ba,e_n,nu,regime`, floats in `{:.12e}` scientific
/// notation, LF line endings. The output is byte-deterministic for equal
/// records. Unstable points carry `nan` values and the regime `unstable`.
///
/// # Errors
/// Propagates I/O failures.
pub fn write_csv<W: Write>(records: &[SweepRecord], out: &mut W) -> io::Result<()> {
    out.write_all(b"swept,g_ab,g_ba,e_n,nu,regime\n")?;
    for rec in records {
        match &rec.report {
            Some(r) => writeln!(
                out,
                "{},{},{},{},{},{}",
                csv_float(rec.swept),
                csv_float(r.g_ab),
                csv_float(r.g_ba),
                csv_float(r.log_negativity),
                csv_float(r.min_symplectic),
                r.regime
            )?,
            None => writeln!(out, "{},nan,nan,nan,nan,unstable", csv_float(rec.swept))?,
        }
    }
    Ok(())
}

/// A gnuplot script that plots the three measures from a CSV produced by
/// [`write_csv`], suitable for `gnuplot <script>`.
pub fn plot_script(csv_path: &str, param: SweepParameter) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel '{param}'\n\
         set ylabel 'steering / entanglement'\n\
         set key top left\n\
         plot '{csv_path}' skip 1 using 1:2 with lines title 'G(A->B)', \\\n\
         \x20    '{csv_path}' skip 1 using 1:3 with lines title 'G(B->A)', \\\n\
         \x20    '{csv_path}' skip 1 using 1:4 with lines title 'E_N'\n"
    )
}
