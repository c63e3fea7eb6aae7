//! Syndrome measurement with 16 two-dimensional projectors, and the two
//! recovery strategies applied to its outcomes.

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, StateVector};

use super::code::{SyndromeBasis, SyndromeLabel, DIM};

/// Unnormalised logical state left after projecting onto one syndrome pair.
#[derive(Clone, Debug)]
pub struct SyndromeOutcome {
    pub label: SyndromeLabel,
    /// `[j, j'] = ⟨S_jkl|ρ|S_j'kl⟩`, logical basis.
    pub collapsed_block: ComplexMatrix,
    /// Probability of the outcome, the trace of the block.
    pub weight: f64,
}

impl SyndromeOutcome {
    pub fn k(&self) -> usize {
        self.label.k()
    }

    pub fn l(&self) -> usize {
        self.label.l()
    }
}

/// Projects `rho_out` onto each syndrome pair `{|S_0kl⟩, |S_1kl⟩}`.
///
/// Returns 16 outcomes in [`SyndromeLabel::all`] order. The pair is kept
/// degenerate so coherences between `|0_L⟩` and `|1_L⟩` survive.
pub fn measure_syndromes(
    basis: &SyndromeBasis,
    rho_out: &ComplexMatrix,
) -> Result<Vec<SyndromeOutcome>> {
    if rho_out.rows() != DIM || rho_out.cols() != DIM {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            found: rho_out.rows().max(rho_out.cols()),
        });
    }
    let outcomes = SyndromeLabel::all()
        .map(|label| {
            let pair: [&StateVector; 2] = [basis.vector(0, label), basis.vector(1, label)];
            let images: Vec<StateVector> = pair.iter().map(|s| rho_out.apply(s)).collect();
            let block = ComplexMatrix::from_fn(2, 2, |j, jp| pair[j].inner(&images[jp]));
            let weight = block.trace().re;
            SyndromeOutcome {
                label,
                collapsed_block: block,
                weight,
            }
        })
        .collect();
    Ok(outcomes)
}

/// `D`: total weight of the sign- and combined-flip syndromes.
pub fn uncorrectable_weight(outcomes: &[SyndromeOutcome]) -> f64 {
    outcomes
        .iter()
        .filter(|o| !o.label.is_correctable())
        .map(|o| o.weight)
        .sum()
}

/// Code-space block plus the single-bit-flip blocks.
///
/// Each `l = 1` block is already the image of the correction unitary
/// `U_k = |0_L⟩⟨S_0k1| + |1_L⟩⟨S_1k1|`.
pub fn correctable_part(outcomes: &[SyndromeOutcome]) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(2, 2);
    for o in outcomes.iter().filter(|o| o.label.is_correctable()) {
        acc += &o.collapsed_block;
    }
    acc
}

/// Strategy I: uncorrectable outcomes are replaced by `I/2`.
pub fn recover_strategy1(outcomes: &[SyndromeOutcome]) -> ComplexMatrix {
    let d = uncorrectable_weight(outcomes);
    &correctable_part(outcomes) + &ComplexMatrix::identity(2).scaled(d / 2.0)
}

#[derive(Clone, Debug)]
pub struct KeptState {
    /// Unnormalised logical state of the outcomes that were kept.
    pub rho_kept: ComplexMatrix,
    pub discarded_weight: f64,
}

/// Strategy II: uncorrectable outcomes are tagged and dropped.
pub fn recover_strategy2(outcomes: &[SyndromeOutcome]) -> KeptState {
    KeptState {
        rho_kept: correctable_part(outcomes),
        discarded_weight: uncorrectable_weight(outcomes),
    }
}
