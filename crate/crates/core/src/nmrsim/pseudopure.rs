//! |00⟩ pseudopure state by spatial averaging on a ¹H–¹³C pair.
//!
//! All pulses act on the proton. Starting from 4I₁z + I₂z:
//! (π/3)_x – gradient – (π/4)_x – 1/2J – (π/4)_{−y} – gradient
//! leaves I₁z + I₂z + 2I₁zI₂z = 2(|00⟩⟨00| − I/4).

use std::f64::consts::SQRT_2;

use crate::qalgebra::{Ket4, Matrix4};
use crate::{Degrees, Error, Result};

use super::density::DeviationDensityMatrix;
use super::operators::{Axis, ProductOperator, SpinSystem, Targets};
use super::pulse::PulseEvent;

/// Largest accepted product-operator coefficient error.
pub const CHECKPOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub stage: &'static str,
    pub expected: Vec<(ProductOperator, f64)>,
    pub actual: DeviationDensityMatrix,
    /// Largest coefficient error against `expected`.
    pub deviation: f64,
}

impl Checkpoint {
    pub fn passed(&self) -> bool {
        self.deviation <= CHECKPOINT_TOL
    }
}

pub fn pseudopure_sequence(sys: &SpinSystem) -> Vec<PulseEvent> {
    vec![
        PulseEvent::rf(Targets::Data, Degrees(60.0), Degrees(0.0)),
        PulseEvent::GradientCrush,
        PulseEvent::rf(Targets::Data, Degrees(45.0), Degrees(0.0)),
        PulseEvent::delay(sys.half_j_delay()),
        PulseEvent::rf(Targets::Data, Degrees(45.0), Degrees(270.0)),
        PulseEvent::GradientCrush,
    ]
}

fn expected_after_each_event() -> [(&'static str, Vec<(ProductOperator, f64)>); 6] {
    use Axis::{X, Y, Z};
    let d = ProductOperator::data;
    let a = ProductOperator::ancilla;
    let zz = ProductOperator::bilinear(Z, Z);
    let xz = ProductOperator::bilinear(X, Z);
    let root3 = 3f64.sqrt();
    [
        (
            "after (π/3)_x",
            vec![(d(Z), 2.0), (d(Y), -2.0 * root3), (a(Z), 1.0)],
        ),
        ("after first gradient", vec![(d(Z), 2.0), (a(Z), 1.0)]),
        (
            "after (π/4)_x",
            vec![(d(Z), SQRT_2), (d(Y), -SQRT_2), (a(Z), 1.0)],
        ),
        (
            "after 1/2J",
            vec![(d(Z), SQRT_2), (xz, SQRT_2), (a(Z), 1.0)],
        ),
        (
            "after (π/4)_-y",
            vec![(d(Z), 1.0), (d(X), -1.0), (xz, 1.0), (zz, 1.0), (a(Z), 1.0)],
        ),
        ("final", vec![(d(Z), 1.0), (a(Z), 1.0), (zz, 1.0)]),
    ]
}

/// Runs the preparation and compares every intermediate state with its
/// expected product-operator expansion.
///
/// Two extra checkpoints assert that no zero-quantum coherence is present
/// when each gradient fires; the crush model would otherwise be wrong.
pub fn pseudopure_checkpoints(sys: &SpinSystem) -> (Vec<Checkpoint>, DeviationDensityMatrix) {
    let events = pseudopure_sequence(sys);
    let expected = expected_after_each_event();
    let mut checkpoints = Vec::new();
    let mut rho = DeviationDensityMatrix::equilibrium();
    let mut crush_count = 0;
    for (ev, (stage, terms)) in events.iter().zip(expected) {
        if matches!(ev, PulseEvent::GradientCrush) {
            crush_count += 1;
            checkpoints.push(Checkpoint {
                stage: if crush_count == 1 {
                    "no zero-quantum before first gradient"
                } else {
                    "no zero-quantum before second gradient"
                },
                expected: Vec::new(),
                actual: rho,
                deviation: rho.zero_quantum_magnitude(),
            });
        }
        rho = ev.apply(&rho, sys);
        checkpoints.push(Checkpoint {
            stage,
            deviation: rho.term_deviation(&terms),
            expected: terms,
            actual: rho,
        });
    }
    (checkpoints, rho)
}

/// The |00⟩ pseudopure deviation matrix, verified against every checkpoint.
pub fn prepare_pseudopure(sys: &SpinSystem) -> Result<DeviationDensityMatrix> {
    let (checkpoints, rho) = pseudopure_checkpoints(sys);
    if let Some(bad) = checkpoints.iter().find(|c| !c.passed()) {
        return Err(Error::CheckpointMismatch {
            stage: bad.stage.to_string(),
            deviation: bad.deviation,
        });
    }
    Ok(rho)
}

/// `Some(c)` if ρ = c·(|00⟩⟨00| − I/4) within `tol`.
pub fn pseudopure_excess(rho: &DeviationDensityMatrix, tol: f64) -> Option<f64> {
    let shape = *DeviationDensityMatrix::new(Ket4::basis(0).outer()).matrix();
    // Tr(shape²) = 3/4
    let c = (shape * *rho.matrix()).trace().re / 0.75;
    let residual: Matrix4 = *rho.matrix() - shape.scale(c.into());
    (residual.max_abs_diff(&Matrix4::zero()) <= tol).then_some(c)
}
