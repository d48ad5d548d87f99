//! Plain-text run configuration: `key = value` lines with `#` comments.
//!
//! Values override the default parameter set. Frequency-like keys
//! (`omega_m`, `gamma1`, `gamma2`, `kappa`, `omega_c`, `omega_L`, `delta`)
//! are given in hertz and converted to angular rates internally; all other
//! keys are in SI base units or dimensionless. Unless `delta` is set
//! explicitly the detuning follows the red sideband `−omega_m`, tracking
//! any `omega_m` override.
//!
//! A sweep is requested by supplying all of `sweep`, `start`, `stop` and
//! `steps`, where `sweep` names one of the sweepable parameters
//! (`r`, `nth`, `power`, `l1`, `l2`, `theta1`, `theta2`) and `start`/`stop`
//! are in the parameter's natural unit.

use crate::model::PhysicalParams;
use crate::sweep::{SweepParameter, SweepSpec};
use std::f64::consts::TAU;
use thiserror::Error;

/// Errors from reading a configuration.
#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    /// A line is not `key = value` or a value fails to parse.
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    /// A key outside the schema.
    #[error("{location}: unknown key `{key}`")]
    UnknownKey { location: String, key: String },
    /// Structurally valid but semantically inconsistent (sweep bounds,
    /// step counts, missing sweep keys).
    #[error("invalid configuration: {message}")]
    Range { message: String },
}

/// A parsed configuration: the base parameter set and, when the sweep
/// keys were present, a ready-to-run sweep over it.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub sweep: Option<SweepSpec>,
}

/// Incremental configuration assembly: defaults, then any number of
/// config files and `key=value` overrides, then [`finish`].
///
/// [`finish`]: ConfigBuilder::finish
#[derive(Clone, Debug)]
pub struct ConfigBuilder {
    params: PhysicalParams,
    delta_set: bool,
    sweep: Option<SweepParameter>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<usize>,
}

impl Default for ConfigBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl ConfigBuilder {
    /// Builder seeded with the default parameter set.
    pub fn new() -> Self {
        ConfigBuilder {
            params: PhysicalParams::default(),
            delta_set: false,
            sweep: None,
            start: None,
            stop: None,
            steps: None,
        }
    }

    /// Apply every assignment in a config file body.
    ///
    /// # Errors
    /// [`ConfigError::Parse`] or [`ConfigError::UnknownKey`] with the
    /// offending line number.
    pub fn parse_str(&mut self, text: &str) -> Result<(), ConfigError> {
        for (idx, raw) in text.lines().enumerate() {
            let location = format!("line {}", idx + 1);
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Parse {
                    location,
                    message: format!("expected `key = value`, got `{content}`"),
                });
            };
            self.assign(key.trim(), value.trim(), &location)?;
        }
        Ok(())
    }

    /// Apply one `key=value` override (the CLI `--set` form).
    ///
    /// # Errors
    /// Same as [`parse_str`](ConfigBuilder::parse_str), located at the
    /// argument.
    pub fn apply_set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let location = format!("--set {assignment}");
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(ConfigError::Parse {
                location,
                message: "expected `key=value`".to_string(),
            });
        };
        self.assign(key.trim(), value.trim(), &location)
    }

    fn assign(&mut self, key: &str, value: &str, location: &str) -> Result<(), ConfigError> {
        let float = |value: &str| {
            value.parse::<f64>().map_err(|e| ConfigError::Parse {
                location: location.to_string(),
                message: format!("cannot parse `{value}` for `{key}`: {e}"),
            })
        };
        let p = &mut self.params;
        match key {
            "mass1" => p.mass1 = float(value)?,
            "mass2" => p.mass2 = float(value)?,
            "omega_m" => p.omega_m = TAU * float(value)?,
            "gamma1" => p.gamma1 = TAU * float(value)?,
            "gamma2" => p.gamma2 = TAU * float(value)?,
            "kappa" => p.kappa = TAU * float(value)?,
            "omega_c" => p.omega_c = TAU * float(value)?,
            "omega_L" => p.omega_laser = TAU * float(value)?,
            "delta" => {
                p.detuning = TAU * float(value)?;
                self.delta_set = true;
            }
            "power" => p.power = float(value)?,
            "l1" => p.length1 = float(value)?,
            "l2" => p.length2 = float(value)?,
            "theta1" => p.theta1 = float(value)?,
            "theta2" => p.theta2 = float(value)?,
            "nth1" => p.nth1 = float(value)?,
            "nth2" => p.nth2 = float(value)?,
            "nth" => {
                let v = float(value)?;
                p.nth1 = v;
                p.nth2 = v;
            }
            "r" => p.squeeze_r = float(value)?,
            "sweep" => {
                self.sweep = Some(value.parse().map_err(
                    |e: crate::sweep::UnknownSweepParameter| ConfigError::Parse {
                        location: location.to_string(),
                        message: e.to_string(),
                    },
                )?)
            }
            "start" => self.start = Some(float(value)?),
            "stop" => self.stop = Some(float(value)?),
            "steps" => {
                self.steps = Some(value.parse().map_err(|e| ConfigError::Parse {
                    location: location.to_string(),
                    message: format!("cannot parse `{value}` for `steps`: {e}"),
                })?)
            }
            _ => {
                return Err(ConfigError::UnknownKey {
                    location: location.to_string(),
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Resolve defaults and cross-key constraints into a [`RunConfig`].
    ///
    /// # Errors
    /// [`ConfigError::Range`] when the sweep keys are only partially given,
    /// `steps < 2`, or `start ≥ stop`.
    pub fn finish(mut self) -> Result<RunConfig, ConfigError> {
        if !self.delta_set {
            self.params.detuning = -self.params.omega_m;
        }
        let sweep = match (self.sweep, self.start, self.stop, self.steps) {
            (None, None, None, None) => None,
            (Some(param), Some(start), Some(stop), Some(steps)) => {
                if steps < 2 {
                    return Err(ConfigError::Range {
                        message: format!("sweep needs at least 2 steps, got {steps}"),
                    });
                }
                // NaN endpoints must fail this check, not slip through.
                if !start.is_finite() || !stop.is_finite() || start >= stop {
                    return Err(ConfigError::Range {
                        message: format!("sweep start {start} must be below stop {stop}"),
                    });
                }
                Some(SweepSpec {
                    base: self.params.clone(),
                    param,
                    start,
                    stop,
                    steps,
                })
            }
            _ => {
                return Err(ConfigError::Range {
                    message: "incomplete sweep: supply all of sweep, start, stop, steps"
                        .to_string(),
                })
            }
        };
        Ok(RunConfig {
            params: self.params,
            sweep,
        })
    }
}

/// Parse one config file body into a [`RunConfig`].
///
/// # Errors
/// Any [`ConfigError`] of the builder pipeline.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut builder = ConfigBuilder::new();
    builder.parse_str(text)?;
    builder.finish()
}
