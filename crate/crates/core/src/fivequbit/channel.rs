//! Independent bit-flip noise on each of the five physical qubits.

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, HERMITIAN_TOL};

use super::code::{qubit_mask, DIM, NUM_QUBITS};

/// A set of flipped qubits, as a mask over basis-index bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlipPattern(pub u32);

impl FlipPattern {
    /// All 32 patterns in mask order.
    pub fn all() -> impl Iterator<Item = FlipPattern> {
        (0..DIM as u32).map(FlipPattern)
    }

    /// Pattern flipping the given 1-based qubits.
    pub fn of_qubits(qubits: &[usize]) -> Self {
        FlipPattern(
            qubits
                .iter()
                .map(|&k| qubit_mask(k) as u32)
                .fold(0, |m, b| m | b),
        )
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// `q^|s| (1 - q)^(5 - |s|)`
    pub fn probability(self, q: f64) -> f64 {
        let w = self.weight() as i32;
        q.powi(w) * (1.0 - q).powi(NUM_QUBITS as i32 - w)
    }
}

/// `Σ_s q^|s| (1-q)^(5-|s|) X_s ρ X_s` over all flip patterns `s`.
pub fn bitflip_channel(rho: &ComplexMatrix, q: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!(
            "flip probability {q} outside [0, 1]"
        )));
    }
    if rho.rows() != DIM || rho.cols() != DIM {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            found: rho.rows().max(rho.cols()),
        });
    }
    let deviation = rho.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for pattern in FlipPattern::all() {
        let p = pattern.probability(q);
        if p == 0.0 {
            continue;
        }
        let s = pattern.0 as usize;
        // (X_s ρ X_s)_ij = ρ_{i⊕s, j⊕s}
        let src = rho.as_slice();
        for (i, row) in out.as_mut_slice().chunks_exact_mut(DIM).enumerate() {
            let r = i ^ s;
            let src_row = &src[r * DIM..(r + 1) * DIM];
            for (j, x) in row.iter_mut().enumerate() {
                *x += src_row[j ^ s] * p;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fivequbit::code::build_codewords;
    use crate::numerics::{c64, psd_eigenvalues, StateVector};
    use proptest::prelude::*;

    fn codeword_state() -> ComplexMatrix {
        let (zero, one) = build_codewords();
        zero.combine(c64(0.6, 0.0), &one, c64(0.0, 0.8)).projector()
    }

    #[test]
    fn noiseless_channel_is_identity() {
        let rho = codeword_state();
        assert_eq!(bitflip_channel(&rho, 0.0).unwrap(), rho);
    }

    #[test]
    fn certain_flip_applies_x_everywhere() {
        let rho = codeword_state();
        let out = bitflip_channel(&rho, 1.0).unwrap();
        let all = DIM - 1;
        let expected = ComplexMatrix::from_fn(DIM, DIM, |i, j| rho[(i ^ all, j ^ all)]);
        assert_eq!(out, expected);
    }

    #[test]
    fn pattern_probability() {
        let q: f64 = 0.13;
        let p = FlipPattern::of_qubits(&[1, 2, 3]);
        assert_eq!(p.0, 0b11100);
        assert!((p.probability(q) - q.powi(3) * (1.0 - q).powi(2)).abs() < 1e-18);
        let total: f64 = FlipPattern::all().map(|s| s.probability(q)).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let rho = codeword_state();
        assert!(matches!(bitflip_channel(&rho, 1.5), Err(Error::Domain(_))));
        assert!(matches!(
            bitflip_channel(&ComplexMatrix::identity(4), 0.1),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut skew = rho.clone();
        skew[(0, 1)] += c64(0.1, 0.0);
        assert!(matches!(
            bitflip_channel(&skew, 0.1),
            Err(Error::NotHermitian { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn channel_preserves_trace_and_positivity(
            re in prop::collection::vec(-1.0f64..1.0, DIM),
            im in prop::collection::vec(-1.0f64..1.0, DIM),
            mix in 0.0f64..1.0,
            q in 0.0f64..=1.0,
        ) {
            let v = StateVector::unnormalised(re.iter().zip(&im).map(|(&r, &i)| c64(r, i)).collect()).unwrap();
            let v = v.scaled(c64(1.0 / v.norm(), 0.0));
            let rho = &v.projector().scaled(mix) + &ComplexMatrix::identity(DIM).scaled((1.0 - mix) / DIM as f64);
            let out = bitflip_channel(&rho, q).unwrap();
            prop_assert!((out.trace().re - 1.0).abs() <= 1e-12);
            let min = psd_eigenvalues(&out).unwrap()[0];
            prop_assert!(min >= 0.0);
        }
    }
}
