//! Gate-to-pulse compilation of the discrimination circuit.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::discriminator::{polar_form, AncillaProgramme, InputState, QubitStateSpec};
use crate::Degrees;

use super::operators::{SpinSystem, Targets};
use super::pulse::PulseEvent;

const X: f64 = 0.0;
const Y: f64 = FRAC_PI_2;
const MINUS_Y: f64 = 1.5 * PI;

/// How z-rotations reach the event list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZMode {
    /// (π/2)_y–(θ)_x–(π/2)_{−y} transverse pulses, as run on hardware.
    #[default]
    Composite,
    /// Ideal [`PulseEvent::ZRotation`] events.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompileOptions {
    pub z_mode: ZMode,
    /// Phase error added to the first carbon pulse of each CNOT. Zero in
    /// normal use; a non-zero value exists so validation can be shown to
    /// detect a mis-set pulse.
    pub cnot_phase_error_deg: f64,
}

/// e^{−iθI_z} on `targets` as three transverse pulses.
pub fn composite_z(targets: Targets, angle: Degrees) -> [PulseEvent; 3] {
    [
        PulseEvent::rf_rad(targets, FRAC_PI_2, Y),
        PulseEvent::rf_rad(targets, angle.radians(), X),
        PulseEvent::rf_rad(targets, FRAC_PI_2, MINUS_Y),
    ]
}

fn z_events(targets: Targets, angle: Degrees, mode: ZMode) -> Vec<PulseEvent> {
    match mode {
        ZMode::Composite => composite_z(targets, angle).to_vec(),
        ZMode::Exact => vec![PulseEvent::z(targets, angle)],
    }
}

/// CNOT (proton control, carbon target):
/// (π/2)_z¹ – (π/2)_y² – 1/2J – (π/2)_x² – (π/2)_{−z}².
///
/// In composite mode the carbon −z rotation is (π/2)_{−x}–(π/2)_{−y}–(π/2)_x;
/// its leading −x pulse cancels the preceding x pulse, leaving the tail
/// (π/2)_{−y}² – (π/2)_x².
pub fn cnot_sequence(sys: &SpinSystem, opts: &CompileOptions) -> Vec<PulseEvent> {
    let mut out = z_events(Targets::Data, Degrees(90.0), opts.z_mode);
    out.push(PulseEvent::rf_rad(
        Targets::Ancilla,
        FRAC_PI_2,
        Y + opts.cnot_phase_error_deg.to_radians(),
    ));
    out.push(PulseEvent::delay(sys.half_j_delay()));
    match opts.z_mode {
        ZMode::Composite => {
            out.push(PulseEvent::rf_rad(Targets::Ancilla, FRAC_PI_2, MINUS_Y));
            out.push(PulseEvent::rf_rad(Targets::Ancilla, FRAC_PI_2, X));
        }
        ZMode::Exact => {
            out.push(PulseEvent::rf_rad(Targets::Ancilla, FRAC_PI_2, X));
            out.push(PulseEvent::z(Targets::Ancilla, Degrees(-90.0)));
        }
    }
    out
}

/// Controlled-σz: (π/2)_{−z} on both spins, then 1/2J.
///
/// Under e^{−iπI₁zI₂z} this product is e^{iπ/4}·diag(1, 1, 1, −1).
pub fn sigma_zc_sequence(sys: &SpinSystem, opts: &CompileOptions) -> Vec<PulseEvent> {
    let mut out = z_events(Targets::Both, Degrees(-90.0), opts.z_mode);
    out.push(PulseEvent::delay(sys.half_j_delay()));
    out
}

/// NOT¹ – CNOT – u₁² – CNOT – u₂² – NOT¹, with NOT = (π)_x, u₁ = (α)_{−y},
/// u₂ = (α)_y.
pub fn u_pulse_sequence(
    sys: &SpinSystem,
    alpha: Degrees,
    opts: &CompileOptions,
) -> Vec<PulseEvent> {
    let not_data = PulseEvent::rf_rad(Targets::Data, PI, X);
    let cnot = cnot_sequence(sys, opts);
    let mut out = vec![not_data];
    out.extend_from_slice(&cnot);
    out.push(PulseEvent::rf_rad(
        Targets::Ancilla,
        alpha.radians(),
        MINUS_Y,
    ));
    out.extend_from_slice(&cnot);
    out.push(PulseEvent::rf_rad(Targets::Ancilla, alpha.radians(), Y));
    out.push(not_data);
    out
}

/// (2η)_{π/2+φ} for ψ₁; the same flip about the opposite axis for ψ₂.
pub fn data_prep_pulse(spec: &QubitStateSpec) -> PulseEvent {
    let (a1, b1) = spec.pair_amplitudes();
    let polar = polar_form(a1, b1);
    let phase = match spec.which() {
        InputState::Psi1 => FRAC_PI_2 + polar.phi,
        InputState::Psi2 => FRAC_PI_2 + polar.phi + PI,
    };
    PulseEvent::rf_rad(Targets::Data, 2.0 * polar.eta, phase)
}

pub fn ancilla_prep_pulse(prog: &AncillaProgramme) -> PulseEvent {
    PulseEvent::rf_rad(Targets::Ancilla, prog.prep_angle_2eta, prog.prep_phase)
}

/// Full pulse program in time order, composite z-pulses.
pub fn compile_protocol(
    sys: &SpinSystem,
    spec: &QubitStateSpec,
    prog: &AncillaProgramme,
    alpha: Degrees,
    with_sigma_zc: bool,
) -> Vec<PulseEvent> {
    compile_protocol_with(
        sys,
        spec,
        prog,
        alpha,
        with_sigma_zc,
        &CompileOptions::default(),
    )
}

pub fn compile_protocol_with(
    sys: &SpinSystem,
    spec: &QubitStateSpec,
    prog: &AncillaProgramme,
    alpha: Degrees,
    with_sigma_zc: bool,
    opts: &CompileOptions,
) -> Vec<PulseEvent> {
    let mut out = vec![data_prep_pulse(spec), ancilla_prep_pulse(prog)];
    out.extend(u_pulse_sequence(sys, alpha, opts));
    if with_sigma_zc {
        out.extend(sigma_zc_sequence(sys, opts));
    }
    out
}
