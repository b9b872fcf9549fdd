use std::fmt;

use crate::discriminator::{
    build_U, cnot, controlled_sigma_z, programme_for, u_gate_sequence, InputState, QubitStateSpec,
};
use crate::nmrsim::{
    cnot_sequence, composite_z, on_targets, program_unitary, pseudopure_checkpoints,
    pseudopure_excess, sigma_zc_sequence, z_rotation, CompileOptions, SpinSystem, Targets,
    CHECKPOINT_TOL,
};
use crate::qalgebra::{Matrix4, STRUCTURAL_TOL};
use crate::Degrees;

use super::sweep::{Runner, SweepPoint};
use super::{EngineChoice, EngineKind, ELLIPTICITIES, LINEAR_ALPHAS, LINEAR_TWO_THETA1S};

pub const TOLERANCE_ENV: &str = "QSD_TOL";
pub const DEFAULT_CROSS_ENGINE_TOL: f64 = 1e-9;
pub const PULSE_GATE_TOL: f64 = 1e-10;
pub const ANCILLA_TABLE_TOL_DEG: f64 = 0.5;

pub const ANCILLA_TABLE_ALPHA: f64 = 60.0;
/// Reference 2θ₂ at α = 60° for the linear 2θ₁ grid, degrees, rounded to 0.1°.
pub const ANCILLA_TABLE_REFERENCE: [f64; 9] = [
    41.0, 17.8, -10.2, -42.8, -60.0, -77.2, -109.8, -137.8, -161.0,
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub detail: String,
}

impl SuiteResult {
    fn from_deviation(
        name: &'static str,
        max_deviation: f64,
        tolerance: f64,
        cases: usize,
    ) -> Self {
        SuiteResult {
            name,
            passed: max_deviation <= tolerance,
            max_deviation,
            tolerance,
            cases,
            detail: String::new(),
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: max deviation {:.3e} (tolerance {:.1e}, {} cases)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance,
            self.cases
        )?;
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub suites: Vec<SuiteResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Cross-engine tolerance, overridable through `QSD_TOL`.
pub fn cross_engine_tolerance() -> Result<f64, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(DEFAULT_CROSS_ENGINE_TOL),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
            _ => Err(format!("{TOLERANCE_ENV}='{raw}' is not a positive number")),
        },
    }
}

/// `(2θ₁, computed 2θ₂, reference 2θ₂)` at α = 60°, degrees.
pub fn ancilla_table() -> Vec<(f64, f64, f64)> {
    LINEAR_TWO_THETA1S
        .iter()
        .zip(ANCILLA_TABLE_REFERENCE)
        .map(|(&t, reference)| {
            let spec = QubitStateSpec::new(Degrees(t), Degrees(0.0), InputState::Psi1)
                .expect("grid lies in the domain");
            let prog =
                programme_for(&spec, Degrees(ANCILLA_TABLE_ALPHA)).expect("α = 60° is regular");
            (t, prog.signed_prep_angle().value(), reference)
        })
        .collect()
}

fn pseudopure_suite(sys: &SpinSystem) -> SuiteResult {
    let (checkpoints, rho) = pseudopure_checkpoints(sys);
    let max = checkpoints.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let mut r = SuiteResult::from_deviation(
        "pseudopure checkpoints",
        max,
        CHECKPOINT_TOL,
        checkpoints.len(),
    );
    if let Some(bad) = checkpoints.iter().find(|c| !c.passed()) {
        r.detail = format!("first failure at '{}'", bad.stage);
    }
    match pseudopure_excess(&rho, CHECKPOINT_TOL) {
        Some(c) if c > 0.0 && r.passed => r.detail = format!("final state {c}·(|00⟩⟨00| − I/4)"),
        Some(_) if !r.passed => {}
        _ => {
            r.passed = false;
            r.detail = "final state is not a positive multiple of |00⟩⟨00| − I/4".into();
        }
    }
    r
}

fn decomposition_suite() -> SuiteResult {
    let max = (0..360)
        .map(|k| {
            let alpha = Degrees(k as f64);
            let product = u_gate_sequence(alpha)
                .into_iter()
                .fold(Matrix4::identity(), |acc, gate| gate * acc);
            product.max_abs_diff(&build_U(alpha))
        })
        .fold(0.0, f64::max);
    SuiteResult::from_deviation("U decomposition", max, STRUCTURAL_TOL, 360)
}

fn cnot_suite(sys: &SpinSystem, opts: &CompileOptions) -> SuiteResult {
    let dev = program_unitary(&cnot_sequence(sys, opts), sys)
        .map_or(f64::INFINITY, |u| u.global_phase_deviation(&cnot()));
    SuiteResult::from_deviation("CNOT pulse sequence", dev, PULSE_GATE_TOL, 1)
}

fn sigma_zc_suite(sys: &SpinSystem, opts: &CompileOptions) -> SuiteResult {
    let dev = program_unitary(&sigma_zc_sequence(sys, opts), sys).map_or(f64::INFINITY, |u| {
        u.global_phase_deviation(&controlled_sigma_z())
    });
    SuiteResult::from_deviation("controlled-sigma-z pulse sequence", dev, PULSE_GATE_TOL, 1)
}

fn composite_z_suite(sys: &SpinSystem) -> SuiteResult {
    let mut max: f64 = 0.0;
    let mut cases = 0;
    for targets in [Targets::Data, Targets::Ancilla, Targets::Both] {
        for k in -12..=12 {
            let angle = Degrees(15.0 * k as f64);
            let exact = on_targets(&z_rotation(angle), targets);
            let dev = program_unitary(&composite_z(targets, angle), sys)
                .map_or(f64::INFINITY, |u| u.global_phase_deviation(&exact));
            max = max.max(dev);
            cases += 1;
        }
    }
    SuiteResult::from_deviation("composite z rotation", max, PULSE_GATE_TOL, cases)
}

/// Full linear and elliptical grid, both input states.
pub fn cross_engine_points() -> Vec<SweepPoint> {
    let mut out = Vec::new();
    for &a in &LINEAR_ALPHAS {
        for &t in &LINEAR_TWO_THETA1S {
            for &e in &ELLIPTICITIES {
                for state in InputState::ALL {
                    out.push(SweepPoint {
                        alpha: Degrees(a),
                        two_theta1: Degrees(t),
                        ellipticity: Degrees(e),
                        state,
                    });
                }
            }
        }
    }
    out
}

fn cross_engine_suite(opts: &CompileOptions, tol: f64) -> SuiteResult {
    const NAME: &str = "cross-engine grid";
    let runner = match Runner::with_options(EngineChoice::Both, *opts) {
        Ok(r) => r,
        Err(e) => {
            let mut r = SuiteResult::from_deviation(NAME, f64::INFINITY, tol, 0);
            r.detail = format!("pulse engine unavailable: {e}");
            return r;
        }
    };
    let points = cross_engine_points();
    let mut max: f64 = 0.0;
    let mut verdict_mismatches = 0;
    for rec in runner.run(&points).chunks(2) {
        let (EngineKind::Gate, EngineKind::Pulse) = (rec[0].engine, rec[1].engine) else {
            unreachable!("runner emits gate then pulse");
        };
        match (&rec[0].outcome, &rec[1].outcome) {
            (Ok(g), Ok(p)) => {
                max = max
                    .max((g.probability - p.probability).abs())
                    .max(p.lines.line_01_11.abs());
                if g.verdict != p.verdict {
                    verdict_mismatches += 1;
                }
            }
            _ => max = f64::INFINITY,
        }
    }
    let mut r = SuiteResult::from_deviation(NAME, max, tol, points.len());
    if verdict_mismatches > 0 {
        r.passed = false;
        r.detail = format!("{verdict_mismatches} verdict mismatches");
    }
    r
}

fn ancilla_table_suite() -> SuiteResult {
    let table = ancilla_table();
    let max = table
        .iter()
        .map(|&(_, c, p)| (c - p).abs())
        .fold(0.0, f64::max);
    SuiteResult::from_deviation(
        "ancilla 2theta2 table",
        max,
        ANCILLA_TABLE_TOL_DEG,
        table.len(),
    )
}

pub fn validate_with(opts: CompileOptions, cross_tol: f64) -> ValidationReport {
    let sys = SpinSystem::default();
    ValidationReport {
        suites: vec![
            pseudopure_suite(&sys),
            decomposition_suite(),
            cnot_suite(&sys, &opts),
            sigma_zc_suite(&sys, &opts),
            composite_z_suite(&sys),
            cross_engine_suite(&opts, cross_tol),
            ancilla_table_suite(),
        ],
    }
}

/// All suites with default compilation and the configured tolerance.
pub fn validate() -> Result<ValidationReport, String> {
    Ok(validate_with(
        CompileOptions::default(),
        cross_engine_tolerance()?,
    ))
}
