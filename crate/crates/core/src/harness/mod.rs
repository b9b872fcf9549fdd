//! Sweeps, validation suites and plot data over both engines.

mod config;
mod plotdata;
mod sweep;
mod validate;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::discriminator::InputState;
use crate::Degrees;

pub use config::{parse_angle_list, parse_config, parse_state_list, ConfigError, ConfigOverrides};
pub use plotdata::{plot_series, write_plotdata, Series};
pub use sweep::{
    run_sweep, to_csv, write_csv, PointOutcome, Runner, SweepPoint, SweepRecord, CSV_HEADER,
};
pub use validate::{
    ancilla_table, cross_engine_tolerance, validate, validate_with, SuiteResult, ValidationReport,
    ANCILLA_TABLE_ALPHA, ANCILLA_TABLE_REFERENCE, DEFAULT_CROSS_ENGINE_TOL, TOLERANCE_ENV,
};

/// 2θ₁ values of the linear-polarization experiments.
pub const LINEAR_TWO_THETA1S: [f64; 9] = [20.0, 40.0, 60.0, 80.0, 90.0, 100.0, 120.0, 140.0, 160.0];
/// 2θ₁ values of the elliptical-polarization experiments.
pub const ELLIPTICAL_TWO_THETA1S: [f64; 7] = [20.0, 40.0, 60.0, 90.0, 120.0, 140.0, 160.0];
pub const LINEAR_ALPHAS: [f64; 4] = [30.0, 45.0, 60.0, 90.0];
pub const ELLIPTICITIES: [f64; 3] = [0.0, 15.0, 30.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Gate,
    Pulse,
}

impl EngineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::Gate => "gate",
            EngineKind::Pulse => "pulse",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EngineChoice {
    #[default]
    Gate,
    Pulse,
    Both,
}

impl EngineChoice {
    pub fn kinds(self) -> &'static [EngineKind] {
        match self {
            EngineChoice::Gate => &[EngineKind::Gate],
            EngineChoice::Pulse => &[EngineKind::Pulse],
            EngineChoice::Both => &[EngineKind::Gate, EngineKind::Pulse],
        }
    }
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gate" => Ok(EngineChoice::Gate),
            "pulse" => Ok(EngineChoice::Pulse),
            "both" => Ok(EngineChoice::Both),
            other => Err(format!(
                "unknown engine '{other}' (expected gate, pulse or both)"
            )),
        }
    }
}

/// Built-in grids for the linear (P vs 2θ₁, P vs α) and elliptical sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// P vs 2θ₁ for each α, linear polarization.
    Fig7,
    /// The same grid, read as P vs α for each 2θ₁.
    Fig8,
    /// P vs 2θ₁ for each ε at α = 90°.
    Fig9,
}

impl Preset {
    pub fn as_str(self) -> &'static str {
        match self {
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Fig9 => "fig9",
        }
    }

    pub fn config(self) -> SweepConfig {
        let deg = |v: &[f64]| v.iter().copied().map(Degrees).collect();
        match self {
            Preset::Fig7 | Preset::Fig8 => SweepConfig {
                alphas: deg(&LINEAR_ALPHAS),
                two_theta1s: deg(&LINEAR_TWO_THETA1S),
                ellipticities: vec![Degrees(0.0)],
                states: vec![InputState::Psi1],
                engine: EngineChoice::Gate,
                output: None,
            },
            Preset::Fig9 => SweepConfig {
                alphas: vec![Degrees(90.0)],
                two_theta1s: deg(&ELLIPTICAL_TWO_THETA1S),
                ellipticities: deg(&ELLIPTICITIES),
                states: vec![InputState::Psi1],
                engine: EngineChoice::Gate,
                output: None,
            },
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig7" => Ok(Preset::Fig7),
            "fig8" => Ok(Preset::Fig8),
            "fig9" => Ok(Preset::Fig9),
            other => Err(format!(
                "unknown preset '{other}' (expected fig7, fig8 or fig9)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alphas: Vec<Degrees>,
    pub two_theta1s: Vec<Degrees>,
    pub ellipticities: Vec<Degrees>,
    pub states: Vec<InputState>,
    pub engine: EngineChoice,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let nonempty = |len: usize, key: &'static str| {
            if len == 0 {
                Err(ConfigError::Invalid(format!("{key}: list is empty")))
            } else {
                Ok(())
            }
        };
        nonempty(self.alphas.len(), "alphas")?;
        nonempty(self.two_theta1s.len(), "two-theta1s")?;
        nonempty(self.ellipticities.len(), "ellipticities")?;
        nonempty(self.states.len(), "states")?;
        for a in &self.alphas {
            check_range("alphas", a.value(), -360.0, 360.0, true)?;
        }
        for t in &self.two_theta1s {
            check_range("two-theta1s", t.value(), 0.0, 180.0, true)?;
        }
        for e in &self.ellipticities {
            check_range("ellipticities", e.value(), 0.0, 45.0, false)?;
        }
        Ok(())
    }

    /// Grid points in output order: α, then 2θ₁, then ε, then state.
    pub fn points(&self) -> Vec<SweepPoint> {
        let mut out = Vec::with_capacity(self.point_count());
        for &alpha in &self.alphas {
            for &two_theta1 in &self.two_theta1s {
                for &ellipticity in &self.ellipticities {
                    for &state in &self.states {
                        out.push(SweepPoint {
                            alpha,
                            two_theta1,
                            ellipticity,
                            state,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn point_count(&self) -> usize {
        self.alphas.len() * self.two_theta1s.len() * self.ellipticities.len() * self.states.len()
    }

    pub fn row_count(&self) -> usize {
        self.point_count() * self.engine.kinds().len()
    }
}

fn check_range(key: &str, v: f64, lo: f64, hi: f64, hi_inclusive: bool) -> Result<(), ConfigError> {
    let ok = v.is_finite() && v >= lo && if hi_inclusive { v <= hi } else { v < hi };
    if ok {
        Ok(())
    } else {
        let close = if hi_inclusive { ']' } else { ')' };
        Err(ConfigError::Invalid(format!(
            "{key}: {v} outside [{lo}, {hi}{close} degrees"
        )))
    }
}
