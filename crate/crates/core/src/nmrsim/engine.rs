use crate::discriminator::{
    programme_for, programme_residual, AncillaProgramme, InputState, Lines, ProtocolResult,
    QubitStateSpec, PROGRAMME_RESIDUAL_TOL,
};
use crate::{Degrees, Error, Result};

use super::compile::{compile_protocol_with, CompileOptions};
use super::density::DeviationDensityMatrix;
use super::operators::SpinSystem;
use super::pseudopure::prepare_pseudopure;
use super::pulse::evolve;
use super::spectrum::{spectrum, Transition};

/// Calibrated pulse-level discriminator.
///
/// The line scale is fixed once, at construction, by running the
/// α = 90°, 2θ₁ = 90°, ε = 0, ψ₁ point and mapping its summed
/// |0_D0_A⟩ ↔ |1_D0_A⟩ line to +0.5. The constant is signed: it also
/// absorbs the receiver sign convention.
#[derive(Debug, Clone)]
pub struct PulseEngine {
    sys: SpinSystem,
    options: CompileOptions,
    initial: DeviationDensityMatrix,
    calibration: f64,
}

impl PulseEngine {
    pub const ANCHOR_PROBABILITY: f64 = 0.5;

    pub fn new(sys: SpinSystem, options: CompileOptions) -> Result<Self> {
        let initial = prepare_pseudopure(&sys)?;
        let mut engine = PulseEngine {
            sys,
            options,
            initial,
            calibration: 1.0,
        };
        let anchor = QubitStateSpec::new(Degrees(90.0), Degrees(0.0), InputState::Psi1)?;
        let alpha = Degrees(90.0);
        let prog = programme_for(&anchor, alpha)?;
        let raw = engine.raw_result(&anchor, &prog, alpha);
        engine.calibration = Self::ANCHOR_PROBABILITY / raw.lines.line_00_10;
        Ok(engine)
    }

    pub fn spin_system(&self) -> &SpinSystem {
        &self.sys
    }

    pub fn options(&self) -> &CompileOptions {
        &self.options
    }

    pub fn calibration(&self) -> f64 {
        self.calibration
    }

    /// Final deviation matrix of one experiment.
    pub fn final_state(
        &self,
        spec: &QubitStateSpec,
        prog: &AncillaProgramme,
        alpha: Degrees,
        with_sigma_zc: bool,
    ) -> DeviationDensityMatrix {
        let events =
            compile_protocol_with(&self.sys, spec, prog, alpha, with_sigma_zc, &self.options);
        evolve(&self.initial, &events, &self.sys)
    }

    fn experiment_lines(
        &self,
        spec: &QubitStateSpec,
        prog: &AncillaProgramme,
        alpha: Degrees,
        sz: bool,
    ) -> Lines {
        let s = spectrum(&self.final_state(spec, prog, alpha, sz));
        Lines {
            line_00_10: s.amplitude(Transition::Data00To10),
            line_01_11: s.amplitude(Transition::Data01To11),
        }
    }

    fn raw_result(
        &self,
        spec: &QubitStateSpec,
        prog: &AncillaProgramme,
        alpha: Degrees,
    ) -> ProtocolResult {
        ProtocolResult::from_experiments(
            self.experiment_lines(spec, prog, alpha, false),
            self.experiment_lines(spec, prog, alpha, true),
        )
    }

    /// Both experiments from the pseudopure state; calibrated, summed lines.
    pub fn run(
        &self,
        spec: &QubitStateSpec,
        prog: &AncillaProgramme,
        alpha: Degrees,
    ) -> Result<ProtocolResult> {
        let (a1, b1) = spec.pair_amplitudes();
        let residual = programme_residual(a1, b1, prog, alpha);
        if residual > PROGRAMME_RESIDUAL_TOL {
            return Err(Error::ProgrammeMismatch { residual });
        }
        let raw = self.raw_result(spec, prog, alpha);
        Ok(ProtocolResult::from_experiments(
            raw.without_sigma_zc.scaled(self.calibration),
            raw.with_sigma_zc.scaled(self.calibration),
        ))
    }
}

/// [`PulseEngine::run`] on a freshly calibrated default engine.
pub fn run_pulse_protocol(
    spec: &QubitStateSpec,
    prog: &AncillaProgramme,
    alpha: Degrees,
) -> Result<ProtocolResult> {
    PulseEngine::new(SpinSystem::default(), CompileOptions::default())?.run(spec, prog, alpha)
}
