//! Programmable unambiguous discrimination of a pair of single-qubit states
//! with a one-qubit programme register.
//!
//! Two engines execute the same protocol:
//!
//! - [`discriminator`] works on pure two-qubit kets and ideal gates.
//! - [`nmrsim`] works on the deviation density matrix of a heteronuclear
//!   spin pair and compiles every gate into hard RF pulses and J-coupling
//!   delays, starting from a pseudopure state prepared by spatial averaging.
//!
//! [`harness`] drives both engines over parameter grids and writes CSV and
//! plot data. All angles cross the public API in degrees ([`Degrees`]).

pub mod discriminator;
pub mod error;
pub mod harness;
pub mod nmrsim;
pub mod numfmt;
pub mod qalgebra;
mod units;

pub use error::{Error, Result};
pub use units::Degrees;
