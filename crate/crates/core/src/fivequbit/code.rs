//! Codewords of the five-qubit code and the 32-vector syndrome basis.
//!
//! Qubit `k` (1-based, left to right in `|b1 b2 b3 b4 b5⟩`) is bit `5 - k`
//! of the basis index, so qubit 1 is the most significant bit.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{c64, StateVector, C64};

pub const NUM_QUBITS: usize = 5;
pub const DIM: usize = 1 << NUM_QUBITS;

/// Gram-matrix tolerance for the syndrome basis.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;

const ZERO_L_TERMS: [(i8, &str); 8] = [
    (-1, "00000"),
    (1, "01111"),
    (-1, "10011"),
    (1, "11100"),
    (1, "00110"),
    (1, "01001"),
    (1, "10101"),
    (1, "11010"),
];

const ONE_L_TERMS: [(i8, &str); 8] = [
    (-1, "11111"),
    (1, "10000"),
    (1, "01100"),
    (-1, "00011"),
    (1, "11001"),
    (1, "10110"),
    (-1, "01010"),
    (-1, "00101"),
];

/// Index of a computational basis ket written as a bit string, qubit 1 first.
pub fn ket_index(bits: &str) -> usize {
    assert_eq!(
        bits.len(),
        NUM_QUBITS,
        "expected a {NUM_QUBITS}-qubit bit string"
    );
    usize::from_str_radix(bits, 2).expect("bit string")
}

/// Bit mask of qubit `k` in a basis index.
pub fn qubit_mask(k: usize) -> usize {
    debug_assert!((1..=NUM_QUBITS).contains(&k));
    1 << (NUM_QUBITS - k)
}

fn codeword(terms: &[(i8, &str); 8]) -> StateVector {
    let amp = 1.0 / 8f64.sqrt();
    let mut amps = vec![C64::default(); DIM];
    for &(sign, bits) in terms {
        amps[ket_index(bits)] = c64(f64::from(sign) * amp, 0.0);
    }
    StateVector::new(amps).expect("codeword is normalised")
}

/// `(|0_L⟩, |1_L⟩)`
pub fn build_codewords() -> (StateVector, StateVector) {
    (codeword(&ZERO_L_TERMS), codeword(&ONE_L_TERMS))
}

/// Single-qubit error type, numbered as the `l` index of `|S_jkl⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlipKind {
    /// `X`
    Bit = 1,
    /// `Z`
    Sign = 2,
    /// `iY = [[0, -1], [1, 0]]`: `|0⟩ → |1⟩`, `|1⟩ → -|0⟩`.
    Both = 3,
}

impl FlipKind {
    pub const ALL: [FlipKind; 3] = [FlipKind::Bit, FlipKind::Sign, FlipKind::Both];

    pub fn from_index(l: usize) -> Result<Self> {
        match l {
            1 => Ok(FlipKind::Bit),
            2 => Ok(FlipKind::Sign),
            3 => Ok(FlipKind::Both),
            _ => Err(Error::InvalidIndex(format!(
                "error type l = {l} not in 1..=3"
            ))),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Applies `X`, `Z` or `iY` to qubit `k` of a five-qubit ket.
pub fn single_qubit_flip(v: &StateVector, k: usize, l: usize) -> Result<StateVector> {
    if v.dim() != DIM {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            found: v.dim(),
        });
    }
    if !(1..=NUM_QUBITS).contains(&k) {
        return Err(Error::InvalidIndex(format!("qubit k = {k} not in 1..=5")));
    }
    Ok(apply_flip(v, k, FlipKind::from_index(l)?))
}

pub(crate) fn apply_flip(v: &StateVector, k: usize, kind: FlipKind) -> StateVector {
    let mask = qubit_mask(k);
    let src = v.amplitudes();
    let mut out = vec![C64::default(); src.len()];
    for (i, &a) in src.iter().enumerate() {
        let set = i & mask != 0;
        match kind {
            FlipKind::Bit => out[i ^ mask] = a,
            FlipKind::Sign => out[i] = if set { -a } else { a },
            FlipKind::Both => out[i ^ mask] = if set { -a } else { a },
        }
    }
    StateVector::unnormalised(out).expect("non-empty")
}

/// Syndrome subspace label `(k, l)`: `(0, 0)` is the code space, otherwise
/// an error of type `l` on qubit `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SyndromeLabel {
    k: u8,
    l: u8,
}

impl SyndromeLabel {
    pub const CODESPACE: SyndromeLabel = SyndromeLabel { k: 0, l: 0 };
    pub const COUNT: usize = 1 + NUM_QUBITS * 3;

    pub fn new(k: usize, l: usize) -> Result<Self> {
        let valid = (k == 0 && l == 0) || ((1..=NUM_QUBITS).contains(&k) && (1..=3).contains(&l));
        if !valid {
            return Err(Error::InvalidIndex(format!(
                "no syndrome with (k, l) = ({k}, {l})"
            )));
        }
        Ok(Self {
            k: k as u8,
            l: l as u8,
        })
    }

    /// All 16 labels, code space first, then qubit-major.
    pub fn all() -> impl Iterator<Item = SyndromeLabel> {
        std::iter::once(Self::CODESPACE).chain(
            (1..=NUM_QUBITS as u8).flat_map(|k| (1..=3u8).map(move |l| SyndromeLabel { k, l })),
        )
    }

    pub fn k(self) -> usize {
        self.k as usize
    }

    pub fn l(self) -> usize {
        self.l as usize
    }

    pub fn kind(self) -> Option<FlipKind> {
        FlipKind::from_index(self.l()).ok()
    }

    /// Code space or a single bit flip; sign and combined flips are not.
    pub fn is_correctable(self) -> bool {
        self.l <= 1
    }

    /// Position in [`SyndromeLabel::all`].
    pub fn index(self) -> usize {
        if self.k == 0 {
            0
        } else {
            1 + (self.k() - 1) * 3 + (self.l() - 1)
        }
    }
}

impl fmt::Debug for SyndromeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(k={}, l={})", self.k, self.l)
    }
}

/// The vectors `|S_jkl⟩`: codewords and their images under single-qubit
/// `X`, `Z` and `iY` flips.
#[derive(Clone, Debug)]
pub struct SyndromeBasis {
    /// Indexed `j * 16 + label.index()`.
    vectors: Vec<StateVector>,
}

impl SyndromeBasis {
    pub fn new() -> Result<Self> {
        build_syndrome_basis()
    }

    pub fn vector(&self, j: usize, label: SyndromeLabel) -> &StateVector {
        assert!(j < 2, "logical index j = {j} not in 0..=1");
        &self.vectors[j * SyndromeLabel::COUNT + label.index()]
    }

    pub fn get(&self, j: usize, k: usize, l: usize) -> Result<&StateVector> {
        if j > 1 {
            return Err(Error::InvalidIndex(format!(
                "logical index j = {j} not in 0..=1"
            )));
        }
        Ok(self.vector(j, SyndromeLabel::new(k, l)?))
    }

    pub fn codewords(&self) -> (&StateVector, &StateVector) {
        (
            self.vector(0, SyndromeLabel::CODESPACE),
            self.vector(1, SyndromeLabel::CODESPACE),
        )
    }

    /// `a0·|0_L⟩ + a1·|1_L⟩`
    pub fn encode(&self, a0: C64, a1: C64) -> StateVector {
        let (zero, one) = self.codewords();
        zero.combine(a0, one, a1)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StateVector> {
        self.vectors.iter()
    }

    /// `max |⟨S_a|S_b⟩ - δ_ab|` over all pairs.
    pub fn gram_deviation(&self) -> f64 {
        gram_deviation(&self.vectors)
    }
}

fn gram_deviation(vectors: &[StateVector]) -> f64 {
    let mut dev = 0.0f64;
    for (a, va) in vectors.iter().enumerate() {
        for (b, vb) in vectors.iter().enumerate().skip(a) {
            let expected = if a == b { 1.0 } else { 0.0 };
            dev = dev.max((va.inner(vb) - c64(expected, 0.0)).norm());
        }
    }
    dev
}

pub fn build_syndrome_basis() -> Result<SyndromeBasis> {
    let (zero, one) = build_codewords();
    let mut vectors = Vec::with_capacity(2 * SyndromeLabel::COUNT);
    for word in [&zero, &one] {
        for label in SyndromeLabel::all() {
            let v = match label.kind() {
                None => word.clone(),
                Some(kind) => apply_flip(word, label.k(), kind),
            };
            vectors.push(v);
        }
    }
    let deviation = gram_deviation(&vectors);
    if deviation > ORTHONORMALITY_TOL {
        return Err(Error::OrthonormalityViolation { deviation });
    }
    Ok(SyndromeBasis { vectors })
}
