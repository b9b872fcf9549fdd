//! Line-oriented text form of a pulse program.
//!
//! One event per line, five whitespace-separated fields:
//!
//! ```text
//! # kind targets angle_deg phase_deg duration_s
//! rf data 90.0000000000 90.0000000000 0
//! zrot ancilla -90.0000000000 0 0
//! delay - 0 0 0.00239234449761
//! crush - 0 0 0
//! ```
//!
//! `kind` is one of `rf`, `zrot`, `delay`, `crush`; `targets` is `data`,
//! `ancilla`, `both`, or `-` for events that act on no spin. Numbers use
//! 12 significant digits. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::numfmt::sig12;

use super::operators::Targets;
use super::pulse::PulseEvent;

pub const HEADER: &str = "# kind targets angle_deg phase_deg duration_s";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace line {line}: {message}")]
pub struct TraceError {
    pub line: usize,
    pub message: String,
}

pub fn format_event(ev: &PulseEvent) -> String {
    match *ev {
        PulseEvent::Rf {
            targets,
            flip,
            phase,
        } => format!(
            "rf {} {} {} 0",
            targets.as_str(),
            sig12(flip.to_degrees()),
            sig12(phase.to_degrees())
        ),
        PulseEvent::ZRotation { targets, angle } => {
            format!(
                "zrot {} {} 0 0",
                targets.as_str(),
                sig12(angle.to_degrees())
            )
        }
        PulseEvent::JDelay { seconds } => format!("delay - 0 0 {}", sig12(seconds)),
        PulseEvent::GradientCrush => "crush - 0 0 0".to_string(),
    }
}

/// Header line followed by one line per event, newline-terminated.
pub fn to_trace(events: &[PulseEvent]) -> String {
    let mut out = String::with_capacity(32 * (events.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for ev in events {
        let _ = writeln!(out, "{}", format_event(ev));
    }
    out
}

fn parse_targets(s: &str) -> Option<Targets> {
    match s {
        "data" => Some(Targets::Data),
        "ancilla" => Some(Targets::Ancilla),
        "both" => Some(Targets::Both),
        _ => None,
    }
}

fn parse_number(field: &str, name: &str) -> Result<f64, String> {
    let v: f64 = field
        .parse()
        .map_err(|_| format!("{name} '{field}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("{name} '{field}' is not finite"));
    }
    Ok(v)
}

fn parse_line(line: &str) -> Result<PulseEvent, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [kind, targets, angle, phase, duration] = fields[..] else {
        return Err(format!("expected 5 fields, found {}", fields.len()));
    };
    let angle = parse_number(angle, "angle")?;
    let phase = parse_number(phase, "phase")?;
    let duration = parse_number(duration, "duration")?;
    let spin_targets =
        || parse_targets(targets).ok_or_else(|| format!("unknown targets '{targets}'"));
    let no_targets = || {
        if targets == "-" {
            Ok(())
        } else {
            Err(format!("{kind} takes no targets, found '{targets}'"))
        }
    };
    match kind {
        "rf" => {
            let targets = spin_targets()?;
            if !(angle > -360.0 && angle <= 360.0) {
                return Err(format!("flip angle {angle}° outside (-360°, 360°]"));
            }
            Ok(PulseEvent::rf_rad(
                targets,
                angle.to_radians(),
                phase.to_radians(),
            ))
        }
        "zrot" => Ok(PulseEvent::ZRotation {
            targets: spin_targets()?,
            angle: angle.to_radians(),
        }),
        "delay" => {
            no_targets()?;
            if duration < 0.0 {
                return Err(format!("negative delay {duration} s"));
            }
            Ok(PulseEvent::JDelay { seconds: duration })
        }
        "crush" => {
            no_targets()?;
            Ok(PulseEvent::GradientCrush)
        }
        other => Err(format!("unknown event kind '{other}'")),
    }
}

pub fn parse_trace(text: &str) -> Result<Vec<PulseEvent>, TraceError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ev = parse_line(line).map_err(|message| TraceError {
            line: idx + 1,
            message,
        })?;
        out.push(ev);
    }
    Ok(out)
}
