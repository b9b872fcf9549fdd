//! Pulse-level simulation of the discriminator on a heteronuclear spin pair.
//!
//! The data qubit is the proton (spin 1), the programme qubit the carbon
//! (spin 2). States are traceless deviation density matrices; RF pulses are
//! instantaneous and on resonance, so between pulses only the scalar
//! coupling 2πJ·I₁zI₂z acts.

mod compile;
mod density;
mod engine;
mod operators;
mod pseudopure;
mod pulse;
mod spectrum;
pub mod trace;

pub use compile::{
    ancilla_prep_pulse, cnot_sequence, compile_protocol, compile_protocol_with, composite_z,
    data_prep_pulse, sigma_zc_sequence, u_pulse_sequence, CompileOptions, ZMode,
};
pub use density::{gradient_crush, DeviationDensityMatrix};
pub use engine::{run_pulse_protocol, PulseEngine};
pub use operators::{
    j_evolution, on_targets, rf_unitary, spin_operator, z_rotation, Axis, ProductOperator, Spin,
    SpinSystem, Targets,
};
pub use pseudopure::{
    prepare_pseudopure, pseudopure_checkpoints, pseudopure_excess, pseudopure_sequence, Checkpoint,
    CHECKPOINT_TOL,
};
pub use pulse::{evolve, evolve_traced, program_unitary, PulseEvent};
pub use spectrum::{read_spectrum, spectrum, Spectrum, SpectrumLine, Transition, RECEIVER_PHASE};
