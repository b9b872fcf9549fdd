use std::f64::consts::{PI, TAU};

use crate::qalgebra::Matrix4;
use crate::Degrees;

use super::density::{gradient_crush, DeviationDensityMatrix};
use super::operators::{
    j_evolution, on_targets, rf_unitary_rad, z_rotation_rad, SpinSystem, Targets,
};

/// One spectrometer event. Angles are stored in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseEvent {
    /// Hard pulse with flip angle in (0, 2π] and phase in [0, 2π).
    Rf {
        targets: Targets,
        flip: f64,
        phase: f64,
    },
    /// Free evolution under the scalar coupling.
    JDelay {
        seconds: f64,
    },
    GradientCrush,
    /// Ideal e^{−iθI_z} on the targets.
    ZRotation {
        targets: Targets,
        angle: f64,
    },
}

impl PulseEvent {
    /// (flip)_phase on `targets`. A negative flip is written as the
    /// positive flip about the opposite axis.
    pub fn rf(targets: Targets, flip: Degrees, phase: Degrees) -> Self {
        Self::rf_rad(targets, flip.radians(), phase.radians())
    }

    pub(crate) fn rf_rad(targets: Targets, flip: f64, phase: f64) -> Self {
        let (flip, phase) = if flip < 0.0 {
            (-flip, phase + PI)
        } else {
            (flip, phase)
        };
        PulseEvent::Rf {
            targets,
            flip,
            phase: phase.rem_euclid(TAU) % TAU,
        }
    }

    pub fn z(targets: Targets, angle: Degrees) -> Self {
        PulseEvent::ZRotation {
            targets,
            angle: angle.radians(),
        }
    }

    pub fn delay(seconds: f64) -> Self {
        PulseEvent::JDelay { seconds }
    }

    /// Propagator of the event, or `None` for the non-unitary crush.
    pub fn unitary(&self, sys: &SpinSystem) -> Option<Matrix4> {
        match *self {
            PulseEvent::Rf {
                targets,
                flip,
                phase,
            } => Some(on_targets(&rf_unitary_rad(flip, phase), targets)),
            PulseEvent::JDelay { seconds } => Some(j_evolution(sys, seconds)),
            PulseEvent::ZRotation { targets, angle } => {
                Some(on_targets(&z_rotation_rad(angle), targets))
            }
            PulseEvent::GradientCrush => None,
        }
    }

    pub fn apply(&self, rho: &DeviationDensityMatrix, sys: &SpinSystem) -> DeviationDensityMatrix {
        match self.unitary(sys) {
            Some(u) => rho.evolve(&u),
            None => gradient_crush(rho),
        }
    }
}

/// Runs `events` in time order.
pub fn evolve(
    rho: &DeviationDensityMatrix,
    events: &[PulseEvent],
    sys: &SpinSystem,
) -> DeviationDensityMatrix {
    events.iter().fold(*rho, |acc, ev| ev.apply(&acc, sys))
}

/// As [`evolve`], returning the state after every event.
pub fn evolve_traced(
    rho: &DeviationDensityMatrix,
    events: &[PulseEvent],
    sys: &SpinSystem,
) -> Vec<DeviationDensityMatrix> {
    let mut out = Vec::with_capacity(events.len());
    let mut cur = *rho;
    for ev in events {
        cur = ev.apply(&cur, sys);
        out.push(cur);
    }
    out
}

/// Overall propagator (last event leftmost); `None` if any event is a crush.
pub fn program_unitary(events: &[PulseEvent], sys: &SpinSystem) -> Option<Matrix4> {
    events.iter().try_fold(Matrix4::identity(), |acc, ev| {
        ev.unitary(sys).map(|u| u * acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::STRUCTURAL_TOL;

    #[test]
    fn negative_flip_becomes_opposite_phase() {
        let ev = PulseEvent::rf(Targets::Data, Degrees(-90.0), Degrees(90.0));
        match ev {
            PulseEvent::Rf { flip, phase, .. } => {
                assert!((flip - PI / 2.0).abs() < 1e-15);
                assert!((phase - 1.5 * PI).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        let sys = SpinSystem::default();
        let direct = on_targets(&rf_unitary_rad(-PI / 2.0, PI / 2.0), Targets::Data);
        assert!(ev.unitary(&sys).unwrap().max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn crush_has_no_unitary() {
        let sys = SpinSystem::default();
        let events = [PulseEvent::delay(0.001), PulseEvent::GradientCrush];
        assert!(program_unitary(&events, &sys).is_none());
        let u = program_unitary(&events[..1], &sys).unwrap();
        assert!(u.is_unitary(STRUCTURAL_TOL));
    }

    #[test]
    fn traced_evolution_ends_where_evolve_does() {
        let sys = SpinSystem::default();
        let events = [
            PulseEvent::rf(Targets::Both, Degrees(90.0), Degrees(0.0)),
            PulseEvent::delay(sys.half_j_delay()),
            PulseEvent::z(Targets::Ancilla, Degrees(45.0)),
        ];
        let rho = DeviationDensityMatrix::equilibrium();
        let trace = evolve_traced(&rho, &events, &sys);
        assert_eq!(trace.len(), 3);
        assert_eq!(*trace.last().unwrap(), evolve(&rho, &events, &sys));
    }
}
