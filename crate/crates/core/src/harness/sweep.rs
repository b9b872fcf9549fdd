use std::io::{self, Write};

use rayon::prelude::*;

use crate::discriminator::{
    programme_for, run_protocol, InputState, Lines, QubitStateSpec, Verdict,
};
use crate::nmrsim::{CompileOptions, PulseEngine, SpinSystem};
use crate::numfmt::sig12;
use crate::{Degrees, Result};

use super::{EngineChoice, EngineKind, SweepConfig};

pub const CSV_HEADER: &str = "engine,alpha_deg,two_theta1_deg,ellipticity_deg,input_state,\
                              two_theta2_deg,probability,verdict,line_00_10,line_01_11";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub alpha: Degrees,
    pub two_theta1: Degrees,
    pub ellipticity: Degrees,
    pub state: InputState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointOutcome {
    /// Signed ancilla flip angle.
    pub two_theta2: Degrees,
    pub probability: f64,
    pub verdict: Verdict,
    pub lines: Lines,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub engine: EngineKind,
    pub point: SweepPoint,
    /// Per-point failures are kept as rows instead of aborting the sweep.
    pub outcome: std::result::Result<PointOutcome, String>,
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        let p = &self.point;
        let head = format!(
            "{},{},{},{},{}",
            self.engine,
            sig12(p.alpha.value()),
            sig12(p.two_theta1.value()),
            sig12(p.ellipticity.value()),
            p.state.as_str()
        );
        match &self.outcome {
            Ok(o) => format!(
                "{head},{},{},{},{},{}",
                sig12(o.two_theta2.value()),
                sig12(o.probability),
                o.verdict.as_str(),
                sig12(o.lines.line_00_10),
                sig12(o.lines.line_01_11)
            ),
            Err(_) => format!("{head},,,error,,"),
        }
    }
}

/// Evaluates points on the gate engine, the pulse engine, or both.
#[derive(Debug, Clone)]
pub struct Runner {
    choice: EngineChoice,
    pulse: Option<PulseEngine>,
}

impl Runner {
    pub fn new(choice: EngineChoice) -> Result<Self> {
        Self::with_options(choice, CompileOptions::default())
    }

    pub fn with_options(choice: EngineChoice, options: CompileOptions) -> Result<Self> {
        let pulse = if choice.kinds().contains(&EngineKind::Pulse) {
            Some(PulseEngine::new(SpinSystem::default(), options)?)
        } else {
            None
        };
        Ok(Runner { choice, pulse })
    }

    pub fn choice(&self) -> EngineChoice {
        self.choice
    }

    pub fn evaluate(&self, engine: EngineKind, point: &SweepPoint) -> Result<PointOutcome> {
        let spec = QubitStateSpec::new(point.two_theta1, point.ellipticity, point.state)?;
        // The programme is always tuned to ψ₁; ψ₂ runs use the same ancilla.
        let prog = programme_for(&spec.with_state(InputState::Psi1), point.alpha)?;
        let result = match (engine, &self.pulse) {
            (EngineKind::Gate, _) => run_protocol(&spec, &prog, point.alpha)?,
            (EngineKind::Pulse, Some(pulse)) => pulse.run(&spec, &prog, point.alpha)?,
            (EngineKind::Pulse, None) => PulseEngine::new(
                SpinSystem::default(),
                CompileOptions::default(),
            )?
            .run(&spec, &prog, point.alpha)?,
        };
        Ok(PointOutcome {
            two_theta2: prog.signed_prep_angle(),
            probability: result.probability,
            verdict: result.verdict,
            lines: result.lines,
        })
    }

    pub fn run_point(&self, engine: EngineKind, point: SweepPoint) -> SweepRecord {
        SweepRecord {
            engine,
            point,
            outcome: self.evaluate(engine, &point).map_err(|e| e.to_string()),
        }
    }

    /// Rows in grid order, engines in gate-then-pulse order per point.
    pub fn run(&self, points: &[SweepPoint]) -> Vec<SweepRecord> {
        let kinds = self.choice.kinds();
        points
            .par_iter()
            .flat_map_iter(|&p| kinds.iter().map(move |&k| self.run_point(k, p)))
            .collect()
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    Ok(Runner::new(cfg.engine)?.run(&cfg.points()))
}

pub fn write_csv<W: Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    w.flush()
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Preset;

    fn point(a: f64, t: f64, e: f64, s: InputState) -> SweepPoint {
        SweepPoint {
            alpha: Degrees(a),
            two_theta1: Degrees(t),
            ellipticity: Degrees(e),
            state: s,
        }
    }

    #[test]
    fn header_has_ten_columns() {
        assert_eq!(CSV_HEADER.split(',').count(), 10);
        assert!(!CSV_HEADER.contains(' '));
    }

    #[test]
    fn linear_row() {
        let r = Runner::new(EngineChoice::Gate).unwrap();
        let rec = r.run_point(EngineKind::Gate, point(60.0, 90.0, 0.0, InputState::Psi1));
        let row = rec.csv_row();
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 10);
        assert_eq!(
            &cols[..5],
            ["gate", "60.0000000000", "90.0000000000", "0", "psi1"]
        );
        assert_eq!(cols[6], "0.750000000000");
        assert_eq!(cols[7], "psi1");
        assert_eq!(cols[9], "0");
    }

    #[test]
    fn psi2_uses_the_psi1_programme() {
        let r = Runner::new(EngineChoice::Gate).unwrap();
        let a = r
            .evaluate(EngineKind::Gate, &point(45.0, 40.0, 15.0, InputState::Psi1))
            .unwrap();
        let b = r
            .evaluate(EngineKind::Gate, &point(45.0, 40.0, 15.0, InputState::Psi2))
            .unwrap();
        assert_eq!(a.two_theta2, b.two_theta2);
        assert!((a.probability - b.probability).abs() < 1e-12);
        assert_eq!(b.verdict, Verdict::Psi2);
    }

    #[test]
    fn degenerate_alpha_becomes_error_row() {
        let r = Runner::new(EngineChoice::Gate).unwrap();
        let rec = r.run_point(EngineKind::Gate, point(0.0, 90.0, 0.0, InputState::Psi1));
        assert!(rec.outcome.is_err());
        assert_eq!(rec.csv_row(), "gate,0,90.0000000000,0,psi1,,,error,,");
    }

    #[test]
    fn both_engines_interleave_per_point() {
        let mut cfg = Preset::Fig9.config();
        cfg.engine = EngineChoice::Both;
        let recs = run_sweep(&cfg).unwrap();
        assert_eq!(recs.len(), 42);
        for pair in recs.chunks(2) {
            assert_eq!(pair[0].engine, EngineKind::Gate);
            assert_eq!(pair[1].engine, EngineKind::Pulse);
            assert_eq!(pair[0].point, pair[1].point);
            let (g, p) = (
                pair[0].outcome.clone().unwrap(),
                pair[1].outcome.clone().unwrap(),
            );
            assert!((g.probability - p.probability).abs() < 1e-9);
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let cfg = Preset::Fig7.config();
        let a = to_csv(&run_sweep(&cfg).unwrap());
        let b = to_csv(&run_sweep(&cfg).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 37);
    }
}
