//! Sweep configuration files and list syntax.
//!
//! A config file is flat `key = value` text using the sweep flag names:
//!
//! ```text
//! # linear polarization, two programme angles
//! alphas = 45, 90
//! two-theta1s = 20:160:20
//! ellipticities = 0
//! states = psi1, psi2
//! engine = both
//! output = linear.csv
//! ```
//!
//! Angle lists accept single values and inclusive `start:stop:step` ranges.

use std::path::PathBuf;

use thiserror::Error;

use crate::discriminator::InputState;
use crate::Degrees;

use super::{EngineChoice, Preset, SweepConfig};

/// Upper bound on values produced by one range item.
const MAX_RANGE_LEN: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing '{0}' (give it as a flag, in the config file, or via a preset)")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

/// Partially specified sweep settings from one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub preset: Option<Preset>,
    pub alphas: Option<Vec<Degrees>>,
    pub two_theta1s: Option<Vec<Degrees>>,
    pub ellipticities: Option<Vec<Degrees>>,
    pub states: Option<Vec<InputState>>,
    pub engine: Option<EngineChoice>,
    pub output: Option<PathBuf>,
}

impl ConfigOverrides {
    /// Values in `top` win over values in `self`.
    pub fn overlay(self, top: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            preset: top.preset.or(self.preset),
            alphas: top.alphas.or(self.alphas),
            two_theta1s: top.two_theta1s.or(self.two_theta1s),
            ellipticities: top.ellipticities.or(self.ellipticities),
            states: top.states.or(self.states),
            engine: top.engine.or(self.engine),
            output: top.output.or(self.output),
        }
    }

    /// Fills gaps from the preset, if any, then validates.
    pub fn resolve(self) -> Result<SweepConfig, ConfigError> {
        let base = self.preset.map(Preset::config);
        let pick = |own: Option<Vec<Degrees>>, from: fn(&SweepConfig) -> &Vec<Degrees>, key| {
            own.or_else(|| base.as_ref().map(|b| from(b).clone()))
                .ok_or(ConfigError::Missing(key))
        };
        let cfg = SweepConfig {
            alphas: pick(self.alphas, |b| &b.alphas, "alphas")?,
            two_theta1s: pick(self.two_theta1s, |b| &b.two_theta1s, "two-theta1s")?,
            ellipticities: pick(self.ellipticities, |b| &b.ellipticities, "ellipticities")?,
            states: self
                .states
                .or_else(|| base.as_ref().map(|b| b.states.clone()))
                .ok_or(ConfigError::Missing("states"))?,
            engine: self
                .engine
                .or(base.as_ref().map(|b| b.engine))
                .unwrap_or_default(),
            output: self.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{}' is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{}' is not finite", s.trim()))
    }
}

/// Comma-separated degrees; items are numbers or `start:stop:step`.
pub fn parse_angle_list(s: &str) -> Result<Vec<Degrees>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts[..] {
            [single] => out.push(Degrees(parse_number(single)?)),
            [start, stop, step] => {
                let (start, stop, step) = (
                    parse_number(start)?,
                    parse_number(stop)?,
                    parse_number(step)?,
                );
                if step <= 0.0 {
                    return Err(format!("range '{item}': step must be positive"));
                }
                if stop < start {
                    return Err(format!("range '{item}': stop below start"));
                }
                // Tolerate rounding so 0:1:0.1 includes 1.
                let count = ((stop - start) / step + 1e-9).floor();
                if count >= MAX_RANGE_LEN as f64 || out.len() + count as usize >= MAX_RANGE_LEN {
                    return Err(format!("range '{item}' has too many values"));
                }
                out.extend((0..=count as usize).map(|k| Degrees(start + k as f64 * step)));
            }
            _ => return Err(format!("'{item}' is neither a number nor start:stop:step")),
        }
    }
    Ok(out)
}

pub fn parse_state_list(s: &str) -> Result<Vec<InputState>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|i| !i.is_empty())
        .map(str::parse)
        .collect()
}

pub fn parse_config(text: &str) -> Result<ConfigOverrides, ConfigError> {
    let mut cfg = ConfigOverrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ConfigError::Parse {
            line: idx + 1,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected 'key = value', found '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let dup = |present: bool| {
            if present {
                Err(err(format!("duplicate key '{key}'")))
            } else {
                Ok(())
            }
        };
        match key {
            "preset" => {
                dup(cfg.preset.is_some())?;
                cfg.preset = Some(value.parse().map_err(err)?);
            }
            "alphas" => {
                dup(cfg.alphas.is_some())?;
                cfg.alphas = Some(parse_angle_list(value).map_err(err)?);
            }
            "two-theta1s" => {
                dup(cfg.two_theta1s.is_some())?;
                cfg.two_theta1s = Some(parse_angle_list(value).map_err(err)?);
            }
            "ellipticities" => {
                dup(cfg.ellipticities.is_some())?;
                cfg.ellipticities = Some(parse_angle_list(value).map_err(err)?);
            }
            "states" => {
                dup(cfg.states.is_some())?;
                cfg.states = Some(parse_state_list(value).map_err(err)?);
            }
            "engine" => {
                dup(cfg.engine.is_some())?;
                cfg.engine = Some(value.parse().map_err(err)?);
            }
            "output" => {
                dup(cfg.output.is_some())?;
                if value.is_empty() {
                    return Err(err("output path is empty".to_string()));
                }
                cfg.output = Some(PathBuf::from(value));
            }
            other => return Err(err(format!("unknown key '{other}'"))),
        }
    }
    Ok(cfg)
}
