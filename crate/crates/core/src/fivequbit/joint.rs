//! Sender/receiver joint state for the two-state ensemble `{|g⟩, |g⊥⟩}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{c64, ComplexMatrix, StateVector, C64, HERMITIAN_TOL};

use super::channel::bitflip_channel;
use super::code::SyndromeBasis;
use super::measure::{measure_syndromes, recover_strategy1, recover_strategy2, SyndromeOutcome};

/// Below this kept fraction a strategy-II ensemble is treated as empty.
pub const MIN_KEPT_FRACTION: f64 = 1e-14;

/// How detected-but-uncorrectable outcomes are handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Replace with the maximally mixed logical state.
    I,
    /// Tag and discard.
    II,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::I => "I",
            Strategy::II => "II",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" | "i" => Ok(Strategy::I),
            "II" | "2" | "ii" => Ok(Strategy::II),
            other => Err(Error::Config(format!("unknown strategy `{other}`"))),
        }
    }
}

/// `|g⟩ = sin α |0_L⟩ + e^{iφ} cos α |1_L⟩`
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogicalState {
    pub alpha: f64,
    pub phi: f64,
}

impl LogicalState {
    pub fn new(alpha: f64, phi: f64) -> Self {
        Self { alpha, phi }
    }

    /// Logical amplitudes of `|g⟩`.
    pub fn amplitudes(&self) -> [C64; 2] {
        let phase = c64(0.0, self.phi).exp();
        [c64(self.alpha.sin(), 0.0), phase * self.alpha.cos()]
    }

    /// Logical amplitudes of `|g⊥⟩ = cos α |0_L⟩ - e^{iφ} sin α |1_L⟩`.
    pub fn orthogonal_amplitudes(&self) -> [C64; 2] {
        let phase = c64(0.0, self.phi).exp();
        [c64(self.alpha.cos(), 0.0), -phase * self.alpha.sin()]
    }

    pub fn ket(&self) -> StateVector {
        StateVector::unnormalised(self.amplitudes().to_vec()).expect("two amplitudes")
    }

    pub fn orthogonal_ket(&self) -> StateVector {
        StateVector::unnormalised(self.orthogonal_amplitudes().to_vec()).expect("two amplitudes")
    }
}

/// Encodes logical amplitudes, sends them through the bit-flip channel and
/// measures the syndrome.
pub fn transmit(
    basis: &SyndromeBasis,
    amplitudes: [C64; 2],
    q: f64,
) -> Result<Vec<SyndromeOutcome>> {
    let encoded = basis.encode(amplitudes[0], amplitudes[1]);
    let received = bitflip_channel(&encoded.projector(), q)?;
    measure_syndromes(basis, &received)
}

/// `ρ_C` in the basis `{|0_L⟩⊗g, |1_L⟩⊗g, |0_L⟩⊗g⊥, |1_L⟩⊗g⊥}`: the sender
/// label is the slow index, the receiver's logical qubit the fast one.
#[derive(Clone, Debug)]
pub struct JointState {
    matrix: ComplexMatrix,
    kept_fraction: f64,
    strategy: Option<Strategy>,
    uncorrectable: [f64; 2],
}

impl JointState {
    /// Wraps an arbitrary normalised 4×4 joint density matrix.
    pub fn from_matrix(matrix: ComplexMatrix, kept_fraction: f64) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > 1e-9 {
            return Err(Error::NotDensityMatrix(format!(
                "joint state trace {trace}"
            )));
        }
        if !(0.0..=1.0).contains(&kept_fraction) {
            return Err(Error::domain(format!(
                "kept fraction {kept_fraction} outside [0, 1]"
            )));
        }
        Ok(Self {
            matrix,
            kept_fraction,
            strategy: None,
            uncorrectable: [0.0; 2],
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `𝒩`: fraction of the ensemble that was not discarded. 1 for strategy I.
    pub fn kept_fraction(&self) -> f64 {
        self.kept_fraction
    }

    pub fn strategy(&self) -> Option<Strategy> {
        self.strategy
    }

    /// `D(ρ_g)` and `D(ρ_g⊥)`.
    pub fn uncorrectable_weights(&self) -> [f64; 2] {
        self.uncorrectable
    }

    /// 2×2 diagonal block for sender label `s` (0 for `g`, 1 for `g⊥`).
    pub fn block(&self, s: usize) -> ComplexMatrix {
        assert!(s < 2);
        ComplexMatrix::from_fn(2, 2, |i, j| self.matrix[(2 * s + i, 2 * s + j)])
    }

    /// Largest entry of the off-diagonal blocks.
    pub fn off_block_magnitude(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 2..4 {
                m = m
                    .max(self.matrix[(i, j)].norm())
                    .max(self.matrix[(j, i)].norm());
            }
        }
        m
    }
}

/// Runs both ensemble members through encoding, channel, syndrome
/// measurement and the chosen recovery, and assembles
/// `ρ_C = ½ diag(ρ̂, ρ̂⊥)`.
///
/// For strategy II the matrix is renormalised by
/// `𝒩 = (Tr ρ̂_kept + Tr ρ̂⊥_kept) / 2`.
pub fn joint_state(
    basis: &SyndromeBasis,
    g: &LogicalState,
    q: f64,
    strategy: Strategy,
) -> Result<JointState> {
    let mut blocks = Vec::with_capacity(2);
    let mut uncorrectable = [0.0; 2];
    for (s, amps) in [g.amplitudes(), g.orthogonal_amplitudes()]
        .into_iter()
        .enumerate()
    {
        let outcomes = transmit(basis, amps, q)?;
        let block = match strategy {
            Strategy::I => {
                let rho = recover_strategy1(&outcomes);
                uncorrectable[s] = super::measure::uncorrectable_weight(&outcomes);
                rho
            }
            Strategy::II => {
                let kept = recover_strategy2(&outcomes);
                uncorrectable[s] = kept.discarded_weight;
                kept.rho_kept
            }
        };
        blocks.push(block);
    }

    let kept_fraction = match strategy {
        Strategy::I => 1.0,
        Strategy::II => (blocks[0].trace().re + blocks[1].trace().re) / 2.0,
    };
    if kept_fraction < MIN_KEPT_FRACTION {
        return Err(Error::DegenerateEnsemble);
    }
    let norm = 0.5 / kept_fraction;
    let mut matrix = ComplexMatrix::zeros(4, 4);
    for (s, block) in blocks.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                matrix[(2 * s + i, 2 * s + j)] = block[(i, j)] * norm;
            }
        }
    }
    Ok(JointState {
        matrix,
        kept_fraction: kept_fraction.min(1.0),
        strategy: Some(strategy),
        uncorrectable,
    })
}
