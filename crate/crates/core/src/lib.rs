//! Fidelity versus mutual information as figures of merit for error
//! correction under bit-flip noise.
//!
//! Two settings are covered:
//!
//! * [`classical`]: a 4-bit repetition code over a symmetric bit-flip channel.
//! * [`fivequbit`] + [`fom`]: the five-qubit perfect code, with quantum
//!   mutual information and average fidelity of the decoded qubit.
//!
//! In both, detected-but-uncorrectable outcomes are either replaced by a
//! random (maximally mixed) value, which favours fidelity, or tagged and
//! discarded, which favours transmitted information. [`sweep`] turns these
//! into figure-ready tables.

pub mod classical;
pub mod error;
pub mod fivequbit;
pub mod fom;
pub mod numerics;
pub mod sweep;

pub use error::{Error, Result};
pub use fivequbit::{JointState, LogicalState, Strategy, SyndromeBasis};
pub use fom::FomResult;
