//! Dense complex linear algebra sized for this crate: kets and matrices of
//! dimension at most 64, Kronecker products, a Hermitian eigensolver and the
//! entropy helpers built on top of it.
//!
//! Everything here is value-typed. Matrices are stored row-major.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Entrywise tolerance for `M = M†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `[-CLAMP_TOL, 0)` are treated as round-off and set to zero.
pub const CLAMP_TOL: f64 = 1e-10;
/// Tolerance on the norm of a `StateVector` built with [`StateVector::new`].
pub const NORM_TOL: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 64;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Builds a normalised ket; fails if `‖v‖` differs from 1 by more than [`NORM_TOL`].
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let v = Self::unnormalised(amps)?;
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!("state vector norm {norm} is not 1")));
        }
        Ok(v)
    }

    pub fn unnormalised(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::domain("state vector must have positive dimension"));
        }
        Ok(Self { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&a| c64(a, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dimension {dim}"
        );
        let mut amps = vec![C64::default(); dim];
        amps[index] = c64(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product of mismatched kets");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `a·|self⟩ + b·|other⟩`, left unnormalised.
    pub fn combine(&self, a: C64, other: &StateVector, b: C64) -> StateVector {
        assert_eq!(
            self.dim(),
            other.dim(),
            "linear combination of mismatched kets"
        );
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| a * x + b * y)
            .collect();
        StateVector { amps }
    }

    pub fn scaled(&self, factor: C64) -> StateVector {
        StateVector {
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// `|self⟩⟨self|`
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }

    /// `|self⟩⟨other|`
    pub fn outer(&self, other: &StateVector) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.amps[i] * other.amps[j].conj()
        })
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

impl Index<usize> for StateVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![C64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                c64(1.0, 0.0)
            } else {
                C64::default()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| c64(x, 0.0)))
            .collect();
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                c64(values[i], 0.0)
            } else {
                C64::default()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Real diagonal, ignoring imaginary round-off.
    pub fn real_diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].re)
            .collect()
    }

    /// `max |M_ij - conj(M_ji)|`, or infinity for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `⟨bra|M|ket⟩`
    pub fn sandwich(&self, bra: &StateVector, ket: &StateVector) -> C64 {
        assert_eq!(self.rows, bra.dim());
        assert_eq!(self.cols, ket.dim());
        let mut acc = C64::default();
        for i in 0..self.rows {
            let b = bra[i].conj();
            if b == C64::default() {
                continue;
            }
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let r: C64 = row.iter().zip(ket.amplitudes()).map(|(m, k)| m * k).sum();
            acc += b * r;
        }
        acc
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim());
        let amps = (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(m, x)| m * x)
                    .sum()
            })
            .collect();
        StateVector { amps }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product of mismatched shapes");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::default() {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "sum of mismatched shapes"
        );
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "difference of mismatched shapes"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Kronecker product. The left operand's index varies slowest.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        StateVector { amps }
    }
}

impl Tensor for ComplexMatrix {
    fn tensor(&self, other: &Self) -> Self {
        let (r, c) = (other.rows, other.cols);
        ComplexMatrix::from_fn(self.rows * r, self.cols * c, |i, j| {
            self[(i / r, j / c)] * other[(i % r, j % c)]
        })
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// Eigen-decomposition of a Hermitian matrix: `m = V diag(values) V†`.
#[derive(Clone, Debug)]
pub struct Eigh {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
}

impl Eigh {
    pub fn vector(&self, i: usize) -> StateVector {
        let n = self.vectors.rows();
        StateVector {
            amps: (0..n).map(|r| self.vectors[(r, i)]).collect(),
        }
    }

    /// `V f(Λ) V†`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then zeroes it with a real Givens rotation.
pub fn eigh(m: &ComplexMatrix) -> Result<Eigh> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows();
    // Symmetrise so the iteration sees an exactly Hermitian matrix.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);

    let scale = a
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let target = (f64::EPSILON * scale).powi(2);

    let mut converged = n == 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        converged = off <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Eigh { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Negligible pivots relative to their diagonal are left alone.
    if mag <= 1e-3 * f64::EPSILON * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::default();
        a[(q, p)] = C64::default();
        return;
    }
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();

    // J = [[c, s], [-s·e^{-iθ}, c·e^{-iθ}]] on (p, q); A ← J† A J, V ← V J.
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * pc * s;
        a[(k, q)] = akp * s + akq * pc * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * pc * s;
        v[(k, q)] = vkp * s + vkq * pc * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::default();
    a[(q, p)] = C64::default();
    a[(p, p)] = c64(a[(p, p)].re, 0.0);
    a[(q, q)] = c64(a[(q, q)].re, 0.0);
}

/// Eigenvalues of a positive semidefinite matrix with round-off clamping.
pub fn psd_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eigh(m)?.values.into_iter().map(clamp_eigenvalue).collect()
}

pub fn clamp_eigenvalue(l: f64) -> Result<f64> {
    if l >= 0.0 {
        Ok(l)
    } else if l >= -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::NegativeEigenvalue(l))
    }
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = eigh(m)?;
    for &l in &e.values {
        clamp_eigenvalue(l)?;
    }
    Ok(e.reconstruct_with(|l| l.max(0.0).sqrt()))
}

/// `-x log2 x` with `0 log 0 = 0`.
#[inline]
pub fn neg_xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy `-Σ p_i log2 p_i` in bits.
pub fn binary_entropy_terms(p: &[f64]) -> Result<f64> {
    const TOL: f64 = 1e-12;
    for &pi in p {
        if !(-TOL..=1.0 + TOL).contains(&pi) {
            return Err(Error::domain(format!("probability {pi} outside [0, 1]")));
        }
    }
    let total: f64 = p.iter().sum();
    if total > 1.0 + 1e-9 {
        return Err(Error::domain(format!("probabilities sum to {total} > 1")));
    }
    Ok(p.iter().map(|&pi| neg_xlog2x(pi)).sum())
}

/// Binary entropy function `h2(p)`.
pub fn h2(p: f64) -> Result<f64> {
    binary_entropy_terms(&[p, 1.0 - p])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_hermitian(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        let mut it = entries.iter().cycle();
        for i in 0..n {
            for j in i..n {
                let &(re, im) = it.next().unwrap();
                if i == j {
                    m[(i, i)] = c64(re, 0.0);
                } else {
                    m[(i, j)] = c64(re, im);
                    m[(j, i)] = c64(re, -im);
                }
            }
        }
        m
    }

    fn check_decomposition(m: &ComplexMatrix, tol: f64) {
        let e = eigh(m).unwrap();
        let n = m.rows();
        let recon = e.reconstruct_with(|l| l);
        assert!(
            recon.max_abs_diff(m) <= tol,
            "reconstruction {}",
            recon.max_abs_diff(m)
        );
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= tol);
        for i in 0..n {
            let v = e.vector(i);
            let mv = m.apply(&v);
            let lv = v.scaled(c64(e.values[i], 0.0));
            let res = mv
                .amplitudes()
                .iter()
                .zip(lv.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(res <= tol, "residual {res}");
        }
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tensor_examples() {
        let e0 = StateVector::basis(2, 0);
        assert_eq!(e0.tensor(&e0), StateVector::basis(4, 0));
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let g = StateVector::from_real(&[h, h]).unwrap();
        let gg = g.tensor(&g);
        for a in gg.amplitudes() {
            assert!((a - c64(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_orders_left_index_slowest() {
        let a = StateVector::from_real(&[0.0, 1.0]).unwrap();
        let b = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let ab = a.tensor(&b);
        assert_eq!(ab[2], c64(0.6, 0.0));
        assert_eq!(ab[3], c64(0.8, 0.0));
        assert_eq!(ab[0], C64::default());
    }

    #[test]
    fn eigh_examples() {
        let e = eigh(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);

        let e = eigh(&ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        assert!((e.values[0] - 0.25).abs() < 1e-15 && (e.values[1] - 0.75).abs() < 1e-15);

        let proj = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let e = eigh(&proj).unwrap();
        assert!(e.values[0].abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        check_decomposition(&proj, 1e-12);
    }

    #[test]
    fn eigh_complex_pauli_y() {
        let mut y = ComplexMatrix::zeros(2, 2);
        y[(0, 1)] = c64(0.0, -1.0);
        y[(1, 0)] = c64(0.0, 1.0);
        let e = eigh(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        check_decomposition(&y, 1e-12);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigh_degenerate_32() {
        // Block of repeated eigenvalues plus a rank-one perturbation.
        let v = StateVector::new(
            (0..32)
                .map(|i| c64(1.0 / 32f64.sqrt(), 0.0) * c64(0.0, i as f64 * 0.3).exp())
                .collect(),
        )
        .unwrap();
        let m = &ComplexMatrix::identity(32) + &v.projector().scaled(0.5);
        check_decomposition(&m, 1e-12);
        let e = eigh(&m).unwrap();
        assert!((e.values[31] - 1.5).abs() < 1e-12);
        assert!((e.values[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clamping() {
        assert_eq!(clamp_eigenvalue(-5e-11).unwrap(), 0.0);
        assert!(matches!(
            clamp_eigenvalue(-1e-9),
            Err(Error::NegativeEigenvalue(_))
        ));
        let m = ComplexMatrix::diag(&[1.0, -1e-3]);
        assert!(psd_eigenvalues(&m).is_err());
        assert!(psd_sqrt(&m).is_err());
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = ComplexMatrix::from_real_rows(&[&[0.7, 0.2], &[0.2, 0.3]]).unwrap();
        let r = psd_sqrt(&m).unwrap();
        assert!((&r * &r).max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy_terms(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(binary_entropy_terms(&[1.0, 0.0]).unwrap(), 0.0);
        let h = binary_entropy_terms(&[0.01, 0.99]).unwrap();
        assert!((h - 0.0808).abs() < 5e-5, "{h}");
    }

    #[test]
    fn entropy_domain_errors() {
        assert!(binary_entropy_terms(&[-0.1, 1.1]).is_err());
        assert!(binary_entropy_terms(&[0.7, 0.7]).is_err());
        assert!(binary_entropy_terms(&[-1e-13, 1.0]).is_ok());
    }

    #[test]
    fn entropy_maximised_at_uniform_on_grid() {
        let steps = 60;
        let uniform = binary_entropy_terms(&[1.0 / 3.0; 3]).unwrap();
        for i in 0..=steps {
            for j in 0..=steps - i {
                let p = [
                    i as f64 / steps as f64,
                    j as f64 / steps as f64,
                    (steps - i - j) as f64 / steps as f64,
                ];
                let h = binary_entropy_terms(&p).unwrap();
                assert!(h <= uniform + 1e-12);
                let perm = binary_entropy_terms(&[p[2], p[0], p[1]]).unwrap();
                assert!((h - perm).abs() < 1e-14);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eigh_random_hermitian(
            n in 1usize..=32,
            entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..600),
        ) {
            let m = random_hermitian(n, &entries);
            check_decomposition(&m, 1e-9);
        }

        #[test]
        fn tensor_is_associative(
            a in prop::collection::vec(-1.0f64..1.0, 4),
            b in prop::collection::vec(-1.0f64..1.0, 6),
            c in prop::collection::vec(-1.0f64..1.0, 2),
        ) {
            let mk = |r: usize, c: usize, v: &[f64]| {
                ComplexMatrix::from_fn(r, c, |i, j| c64(v[i * c + j], v[(i + j) % v.len()]))
            };
            let (a, b, c) = (mk(2, 2, &a), mk(2, 3, &b), mk(1, 2, &c));
            let left = a.tensor(&b).tensor(&c);
            let right = a.tensor(&b.tensor(&c));
            prop_assert!(left.max_abs_diff(&right) <= 1e-15);
        }
    }
}
