//! The five-qubit code under independent bit-flip noise.
//!
//! Pipeline per sent logical state: encode, apply [`bitflip_channel`],
//! project with [`measure_syndromes`], then recover with strategy I
//! ([`recover_strategy1`]) or strategy II ([`recover_strategy2`]).
//! [`joint_state`] runs the pipeline for both members of the ensemble
//! `{|g⟩, |g⊥⟩}`.

mod channel;
mod code;
mod joint;
mod measure;

pub use channel::{bitflip_channel, FlipPattern};
pub use code::{
    build_codewords, build_syndrome_basis, ket_index, qubit_mask, single_qubit_flip, FlipKind,
    SyndromeBasis, SyndromeLabel, DIM, NUM_QUBITS, ORTHONORMALITY_TOL,
};
pub use joint::{joint_state, transmit, JointState, LogicalState, Strategy, MIN_KEPT_FRACTION};
pub use measure::{
    correctable_part, measure_syndromes, recover_strategy1, recover_strategy2,
    uncorrectable_weight, KeptState, SyndromeOutcome,
};
