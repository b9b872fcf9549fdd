use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::qalgebra::expi;

use super::density::DeviationDensityMatrix;
use super::operators::{on_targets, rf_unitary_rad, Spin};

/// Receiver phase applied to every line, radians.
///
/// Detection is along −x so that equilibrium magnetization tipped by a
/// (π/2)_{−y} read pulse gives positive lines. No transition carries an
/// additional phase: every compiled sequence equals its gate up to a global
/// phase, so composite z-pulses leave no residual per-spin phase.
pub const RECEIVER_PHASE: f64 = PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    /// |0_D0_A⟩ ↔ |1_D0_A⟩
    Data00To10,
    /// |0_D1_A⟩ ↔ |1_D1_A⟩
    Data01To11,
    /// |0_D0_A⟩ ↔ |0_D1_A⟩
    Ancilla00To01,
    /// |1_D0_A⟩ ↔ |1_D1_A⟩
    Ancilla10To11,
}

impl Transition {
    pub const ALL: [Transition; 4] = [
        Transition::Data00To10,
        Transition::Data01To11,
        Transition::Ancilla00To01,
        Transition::Ancilla10To11,
    ];

    /// (row, column) of the coherence in the density matrix.
    pub fn indices(self) -> (usize, usize) {
        match self {
            Transition::Data00To10 => (0, 2),
            Transition::Data01To11 => (1, 3),
            Transition::Ancilla00To01 => (0, 1),
            Transition::Ancilla10To11 => (2, 3),
        }
    }

    pub fn spin(self) -> Spin {
        match self {
            Transition::Data00To10 | Transition::Data01To11 => Spin::Data,
            _ => Spin::Ancilla,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Transition::Data00To10 => "D_00_10",
            Transition::Data01To11 => "D_01_11",
            Transition::Ancilla00To01 => "A_00_01",
            Transition::Ancilla10To11 => "A_10_11",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLine {
    pub transition: Transition,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub lines: [SpectrumLine; 4],
}

impl Spectrum {
    pub fn amplitude(&self, t: Transition) -> f64 {
        self.lines
            .iter()
            .find(|l| l.transition == t)
            .map_or(0.0, |l| l.amplitude)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lines.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}={:+.6}", l.transition.label(), l.amplitude)?;
        }
        Ok(())
    }
}

/// Single-quantum line amplitudes 2·Re(e^{iφ_rx}·ρᵢⱼ).
pub fn spectrum(rho: &DeviationDensityMatrix) -> Spectrum {
    let rx = expi(RECEIVER_PHASE);
    let m = rho.matrix();
    let lines = Transition::ALL.map(|transition| {
        let (i, j) = transition.indices();
        SpectrumLine {
            transition,
            amplitude: 2.0 * (rx * m.0[i][j]).re,
        }
    });
    Spectrum { lines }
}

/// Spectrum after a (π/2)_{−y} read pulse on `spin` alone.
pub fn read_spectrum(rho: &DeviationDensityMatrix, spin: Spin) -> Spectrum {
    let read = on_targets(&rf_unitary_rad(FRAC_PI_2, 1.5 * PI), spin.into());
    spectrum(&rho.evolve(&read))
}
