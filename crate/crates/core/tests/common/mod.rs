//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here goes through the library's channel, measurement, recovery
//! or entropy code. The five-qubit oracle re-transcribes the codewords,
//! builds Pauli operators as Kronecker products with nalgebra, carries an
//! explicit sender reference qubit through a 64-dimensional state and
//! applies recovery as Kraus operators.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix, DVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex<f64>;

fn c(re: f64) -> C {
    Complex::new(re, 0.0)
}

// ---------------------------------------------------------------- classical

/// `(p_ok, p_err, p_unc)` by enumerating all 16 flip patterns of both
/// codewords and majority-decoding the received word.
pub fn repetition4_brute_force(q: f64) -> (f64, f64, f64) {
    let (mut ok, mut err, mut unc) = (0.0, 0.0, 0.0);
    for sent in [0u8, 1] {
        let word: u8 = if sent == 1 { 0b1111 } else { 0 };
        for pattern in 0u8..16 {
            let flips = pattern.count_ones() as i32;
            let p = 0.5 * q.powi(flips) * (1.0 - q).powi(4 - flips);
            let ones = (word ^ pattern).count_ones();
            match ones {
                2 => unc += p,
                n if (n > 2) == (sent == 1) => ok += p,
                _ => err += p,
            }
        }
    }
    (ok, err, unc)
}

// ---------------------------------------------------------------- five-qubit

const ZERO_L: [(f64, &str); 8] = [
    (-1.0, "00000"),
    (1.0, "01111"),
    (-1.0, "10011"),
    (1.0, "11100"),
    (1.0, "00110"),
    (1.0, "01001"),
    (1.0, "10101"),
    (1.0, "11010"),
];
const ONE_L: [(f64, &str); 8] = [
    (-1.0, "11111"),
    (1.0, "10000"),
    (1.0, "01100"),
    (-1.0, "00011"),
    (1.0, "11001"),
    (1.0, "10110"),
    (-1.0, "01010"),
    (-1.0, "00101"),
];

/// Computational basis ket `|b1 b2 b3 b4 b5⟩` as a Kronecker product.
fn ket(bits: &str) -> DVector<C> {
    let zero = DVector::from_vec(vec![c(1.0), c(0.0)]);
    let one = DVector::from_vec(vec![c(0.0), c(1.0)]);
    bits.chars()
        .map(|b| if b == '1' { one.clone() } else { zero.clone() })
        .reduce(|acc, k| acc.kronecker(&k))
        .unwrap()
}

fn codeword(terms: &[(f64, &str)]) -> DVector<C> {
    let mut v = DVector::zeros(32);
    for &(s, bits) in terms {
        v += ket(bits) * c(s);
    }
    v / c(8f64.sqrt())
}

fn single(kind: usize) -> DMatrix<C> {
    let m = match kind {
        0 => [1.0, 0.0, 0.0, 1.0],
        1 => [0.0, 1.0, 1.0, 0.0],
        2 => [1.0, 0.0, 0.0, -1.0],
        // iY: |0⟩ → |1⟩, |1⟩ → -|0⟩
        3 => [0.0, -1.0, 1.0, 0.0],
        _ => unreachable!(),
    };
    DMatrix::from_row_slice(2, 2, &m.map(c))
}

/// Tensor product over qubits 1..=5 (qubit 1 leftmost) of per-qubit operators.
fn on_qubits(kinds: [usize; 5]) -> DMatrix<C> {
    kinds
        .iter()
        .map(|&k| single(k))
        .reduce(|acc, m| acc.kronecker(&m))
        .unwrap()
}

fn flip_operator(pattern: [bool; 5]) -> DMatrix<C> {
    on_qubits(pattern.map(|f| if f { 1 } else { 0 }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleStrategy {
    Mixed,
    Discard,
}

pub struct FiveQubitOracle {
    pub zero: DVector<C>,
    pub one: DVector<C>,
    /// `(k, l, [|S_0kl⟩, |S_1kl⟩])`, code space first.
    pub syndromes: Vec<(usize, usize, [DVector<C>; 2])>,
    patterns: Vec<(u32, DMatrix<C>)>,
}

impl FiveQubitOracle {
    pub fn new() -> Self {
        let zero = codeword(&ZERO_L);
        let one = codeword(&ONE_L);
        let mut syndromes = vec![(0, 0, [zero.clone(), one.clone()])];
        for k in 1..=5 {
            for l in 1..=3 {
                let mut kinds = [0; 5];
                kinds[k - 1] = l;
                let op = on_qubits(kinds);
                syndromes.push((k, l, [&op * &zero, &op * &one]));
            }
        }
        let patterns = (0u32..32)
            .map(|m| {
                let bits = [0, 1, 2, 3, 4].map(|i| m & (1 << i) != 0);
                (m, flip_operator(bits))
            })
            .collect();
        Self {
            zero,
            one,
            syndromes,
            patterns,
        }
    }

    pub fn encode(&self, a0: C, a1: C) -> DVector<C> {
        &self.zero * a0 + &self.one * a1
    }

    fn amplitudes(alpha: f64, phi: f64) -> ([C; 2], [C; 2]) {
        let e = Complex::from_polar(1.0, phi);
        (
            [c(alpha.sin()), e * alpha.cos()],
            [c(alpha.cos()), -e * alpha.sin()],
        )
    }

    /// Kraus operators (2×32) of the recovery.
    fn kraus(&self, strategy: OracleStrategy) -> Vec<DMatrix<C>> {
        let mut ops = Vec::new();
        for (_, l, pair) in &self.syndromes {
            if *l <= 1 {
                let mut k = DMatrix::zeros(2, 32);
                for (j, s) in pair.iter().enumerate() {
                    k.set_row(j, &s.adjoint());
                }
                ops.push(k);
            } else if strategy == OracleStrategy::Mixed {
                for out in 0..2 {
                    for s in pair {
                        let mut k = DMatrix::zeros(2, 32);
                        k.set_row(out, &(s.adjoint() * c(0.5f64.sqrt())));
                        ops.push(k);
                    }
                }
            }
        }
        ops
    }

    /// Normalised 4×4 joint state (sender slow, receiver fast) and the kept
    /// fraction.
    pub fn joint(
        &self,
        alpha: f64,
        phi: f64,
        q: f64,
        strategy: OracleStrategy,
    ) -> (DMatrix<C>, f64) {
        let (g, gp) = Self::amplitudes(alpha, phi);
        let sender0 = DVector::from_vec(vec![c(1.0), c(0.0)]);
        let sender1 = DVector::from_vec(vec![c(0.0), c(1.0)]);
        let psi0 = sender0.kronecker(&self.encode(g[0], g[1]));
        let psi1 = sender1.kronecker(&self.encode(gp[0], gp[1]));
        let rho0 = (&psi0 * psi0.adjoint() + &psi1 * psi1.adjoint()) * c(0.5);

        let id2 = DMatrix::<C>::identity(2, 2);
        let mut rho1 = DMatrix::<C>::zeros(64, 64);
        for (mask, x) in &self.patterns {
            let w = mask.count_ones() as i32;
            let p = q.powi(w) * (1.0 - q).powi(5 - w);
            if p == 0.0 {
                continue;
            }
            let u = id2.kronecker(x);
            rho1 += (&u * &rho0 * u.adjoint()) * c(p);
        }

        let mut joint = DMatrix::<C>::zeros(4, 4);
        for k in self.kraus(strategy) {
            let big = id2.kronecker(&k);
            joint += &big * &rho1 * big.adjoint();
        }
        let kept = joint.trace().re;
        (joint / c(kept), kept)
    }

    /// `(mutual information, fidelity, kept fraction)` with strategy-II
    /// weighting by the kept fraction.
    pub fn figures(
        &self,
        alpha: f64,
        phi: f64,
        q: f64,
        strategy: OracleStrategy,
    ) -> (f64, f64, f64) {
        let (joint, kept) = self.joint(alpha, phi, q, strategy);
        let mut rho_s = DMatrix::<C>::zeros(2, 2);
        let mut rho_r = DMatrix::<C>::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                for x in 0..2 {
                    rho_s[(a, b)] += joint[(2 * a + x, 2 * b + x)];
                    rho_r[(a, b)] += joint[(2 * x + a, 2 * x + b)];
                }
            }
        }
        let mi = entropy(&rho_s) + entropy(&rho_r) - entropy(&joint);
        let fid = uhlmann(&rho_s, &rho_r);
        match strategy {
            OracleStrategy::Mixed => (mi, fid, kept),
            OracleStrategy::Discard => (kept * mi, kept * fid, kept),
        }
    }

    /// Syndrome weights (code space first, then qubit-major) of the
    /// five-qubit state `psi`.
    pub fn syndrome_weights(&self, psi: &DVector<C>) -> Vec<f64> {
        self.syndromes
            .iter()
            .map(|(_, _, pair)| pair.iter().map(|s| s.dotc(psi).norm_sqr()).sum())
            .collect()
    }

    /// Monte Carlo estimate of the syndrome weights: per sample, each qubit
    /// flips independently with probability `q`. Returns per-label
    /// `(mean, standard error)`.
    pub fn monte_carlo_weights(
        &self,
        a0: C,
        a1: C,
        q: f64,
        samples: usize,
        seed: u64,
    ) -> Vec<(f64, f64)> {
        let psi = self.encode(a0, a1);
        // Outcome weights for each flip pattern, indexed by mask.
        let per_pattern: Vec<Vec<f64>> = self
            .patterns
            .iter()
            .map(|(_, x)| self.syndrome_weights(&(x * &psi)))
            .collect();
        let labels = self.syndromes.len();
        let mut sum = vec![0.0; labels];
        let mut sum_sq = vec![0.0; labels];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut mask = 0usize;
            for bit in 0..5 {
                if rng.random::<f64>() < q {
                    mask |= 1 << bit;
                }
            }
            for (i, &w) in per_pattern[mask].iter().enumerate() {
                sum[i] += w;
                sum_sq[i] += w * w;
            }
        }
        let n = samples as f64;
        sum.iter()
            .zip(&sum_sq)
            .map(|(&s, &s2)| {
                let mean = s / n;
                let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0);
                (mean, (var / n).sqrt())
            })
            .collect()
    }
}

pub fn entropy(rho: &DMatrix<C>) -> f64 {
    let eig = rho.clone().symmetric_eigen();
    eig.eigenvalues
        .iter()
        .filter(|&&l| l > 1e-15)
        .map(|&l| -l * l.log2())
        .sum()
}

fn psd_sqrt(rho: &DMatrix<C>) -> DMatrix<C> {
    let mut eig = rho.clone().symmetric_eigen();
    eig.eigenvalues
        .iter_mut()
        .for_each(|l| *l = l.max(0.0).sqrt());
    eig.recompose()
}

pub fn uhlmann(a: &DMatrix<C>, b: &DMatrix<C>) -> f64 {
    let sa = psd_sqrt(a);
    let m = &sa * b * &sa;
    let m = (&m + m.adjoint()) * c(0.5);
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .sum()
}
