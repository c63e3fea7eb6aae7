//! Classical side: a symmetric bit-flip channel protected by the 4-bit
//! repetition code, decoded either by random assignment of uncorrectable
//! words (strategy I) or by tagging and discarding them (strategy II).
//!
//! Inputs are assumed uniform, `p(x = 0) = p(x = 1) = 1/2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{binary_entropy_terms, h2, neg_xlog2x};

const SUM_TOL: f64 = 1e-12;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {p} is not a probability")))
    }
}

/// Per-bit flip probability, optionally derived from a flip rate and elapsed time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    q: f64,
}

impl ChannelParams {
    pub fn new(q: f64) -> Result<Self> {
        check_probability("q", q)?;
        Ok(Self { q })
    }

    pub fn from_rate(q0: f64, gamma: f64, t: f64) -> Result<Self> {
        Self::new(evolve_flip_probability(q0, gamma, t)?)
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Flip probability after time `t` for a bit flipped at rate `gamma`,
/// starting from flip probability `q0`. Relaxes to 1/2.
pub fn evolve_flip_probability(q0: f64, gamma: f64, t: f64) -> Result<f64> {
    check_probability("q0", q0)?;
    if gamma.is_nan() || gamma < 0.0 {
        return Err(Error::domain(format!(
            "flip rate {gamma} must be non-negative"
        )));
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(format!("time {t} must be non-negative")));
    }
    let decay = (-2.0 * gamma * t).exp();
    // gamma = 0 with t = inf gives NaN; no evolution in that case.
    let decay = if decay.is_nan() { 1.0 } else { decay };
    Ok((q0 - 0.5) * decay + 0.5)
}

/// Probabilities that a decoded word is correct, wrong, or flagged
/// uncorrectable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalChannelMatrix {
    p_ok: f64,
    p_err: f64,
    p_unc: f64,
}

impl ClassicalChannelMatrix {
    pub fn new(p_ok: f64, p_err: f64, p_unc: f64) -> Result<Self> {
        check_probability("p_ok", p_ok)?;
        check_probability("p_err", p_err)?;
        check_probability("p_unc", p_unc)?;
        let sum = p_ok + p_err + p_unc;
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::domain(format!(
                "channel matrix entries sum to {sum}"
            )));
        }
        Ok(Self { p_ok, p_err, p_unc })
    }

    pub fn p_ok(&self) -> f64 {
        self.p_ok
    }

    pub fn p_err(&self) -> f64 {
        self.p_err
    }

    pub fn p_unc(&self) -> f64 {
        self.p_unc
    }

    /// Probability that the decoded bit equals the sent bit under strategy I.
    pub fn success_strategy1(&self) -> f64 {
        self.p_ok + self.p_unc / 2.0
    }

    /// Under strategy II a tagged bit counts as a failure.
    pub fn success_strategy2(&self) -> f64 {
        self.p_ok
    }

    /// Joint table `p(x, y)` after strategy I, rows `x`, columns `y ∈ {0, 1}`.
    pub fn strategy1_joint(&self) -> [[f64; 2]; 2] {
        let (good, bad) = strategy1_matrix(self);
        [[good / 2.0, bad / 2.0], [bad / 2.0, good / 2.0]]
    }

    /// Joint table `p(x, y)` after strategy II, columns `y ∈ {0, 1, tagged}`.
    pub fn strategy2_joint(&self) -> [[f64; 3]; 2] {
        let (ok, err, unc) = (self.p_ok / 2.0, self.p_err / 2.0, self.p_unc / 2.0);
        [[ok, err, unc], [err, ok, unc]]
    }
}

/// Channel of the 4-bit repetition code with majority decoding, where
/// weight-2 error patterns are detected but cannot be corrected.
pub fn repetition4_channel(q: f64) -> Result<ClassicalChannelMatrix> {
    check_probability("q", q)?;
    let r = 1.0 - q;
    let p_ok = r.powi(4) + 4.0 * q * r.powi(3);
    let p_unc = 6.0 * q * q * r * r;
    let p_err = q.powi(4) + 4.0 * q.powi(3) * r;
    ClassicalChannelMatrix::new(p_ok, p_err, p_unc)
}

/// Uncorrectable words replaced by a random bit: `(p_correct, p_wrong)`.
pub fn strategy1_matrix(m: &ClassicalChannelMatrix) -> (f64, f64) {
    (m.p_ok + m.p_unc / 2.0, m.p_err + m.p_unc / 2.0)
}

pub fn mutual_info_strategy1(m: &ClassicalChannelMatrix) -> f64 {
    let (good, bad) = strategy1_matrix(m);
    1.0 - neg_xlog2x(good) - neg_xlog2x(bad)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Strategy2Info {
    /// Information per kept (untagged) bit.
    pub i_ok: f64,
    /// Information per transmitted bit, `(1 - p_unc)·i_ok`.
    pub i_avg: f64,
}

pub fn mutual_info_strategy2(m: &ClassicalChannelMatrix) -> Result<Strategy2Info> {
    let kept = 1.0 - m.p_unc;
    if kept <= 0.0 {
        return Err(Error::DegenerateChannel);
    }
    let i_ok = 1.0 - neg_xlog2x(m.p_ok / kept) - neg_xlog2x(m.p_err / kept);
    Ok(Strategy2Info {
        i_ok,
        i_avg: kept * i_ok,
    })
}

fn check_joint<R: AsRef<[f64]>>(joint: &[R]) -> Result<()> {
    let mut sum = 0.0;
    for row in joint {
        for &p in row.as_ref() {
            if p < 0.0 || !p.is_finite() {
                return Err(Error::domain(format!("joint probability {p} is negative")));
            }
            sum += p;
        }
    }
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::domain(format!("joint table sums to {sum}")));
    }
    Ok(())
}

fn marginals<R: AsRef<[f64]>>(joint: &[R]) -> (Vec<f64>, Vec<f64>) {
    let cols = joint.iter().map(|r| r.as_ref().len()).max().unwrap_or(0);
    let px = joint.iter().map(|r| r.as_ref().iter().sum()).collect();
    let mut py = vec![0.0; cols];
    for row in joint {
        for (acc, p) in py.iter_mut().zip(row.as_ref()) {
            *acc += p;
        }
    }
    (px, py)
}

/// `-Σ p(x,y) log2[p(x)p(y)/p(x,y)]` over the non-zero cells of a joint table.
pub fn mutual_info_generic<R: AsRef<[f64]>>(joint: &[R]) -> Result<f64> {
    check_joint(joint)?;
    let (px, py) = marginals(joint);
    let mut info = 0.0;
    for (x, row) in joint.iter().enumerate() {
        for (y, &p) in row.as_ref().iter().enumerate() {
            if p > 0.0 {
                info -= p * (px[x] * py[y] / p).log2();
            }
        }
    }
    Ok(info)
}

/// `S(X) + S(Y) - S(X,Y)` of a joint table.
pub fn mutual_info_entropies<R: AsRef<[f64]>>(joint: &[R]) -> Result<f64> {
    check_joint(joint)?;
    let (px, py) = marginals(joint);
    let cells: Vec<f64> = joint
        .iter()
        .flat_map(|r| r.as_ref().iter().copied())
        .collect();
    Ok(binary_entropy_terms(&px)? + binary_entropy_terms(&py)? - binary_entropy_terms(&cells)?)
}

/// The uncoded 1000-bit/s example with a symmetric error rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShannonReport {
    pub bits_per_second: f64,
    pub err_rate: f64,
    /// Rate lost to not knowing where the errors are, `n·h2(err_rate)`.
    pub equivocation_rate: f64,
    /// Matching bits per second when detected errors are replaced by random bits.
    pub similarity_matches: f64,
    /// Bits per second discarded when detected errors are tagged instead.
    pub erasure_loss: f64,
}

impl ShannonReport {
    pub fn equivocation_fraction(&self) -> f64 {
        if self.bits_per_second == 0.0 {
            0.0
        } else {
            self.equivocation_rate / self.bits_per_second
        }
    }
}

pub fn shannon_example(bits_per_second: f64, err_rate: f64) -> Result<ShannonReport> {
    if !(0.0..=0.5).contains(&err_rate) {
        return Err(Error::domain(format!(
            "error rate {err_rate} outside [0, 1/2]"
        )));
    }
    if !(bits_per_second >= 0.0 && bits_per_second.is_finite()) {
        return Err(Error::domain(format!(
            "bit rate {bits_per_second} must be non-negative"
        )));
    }
    let n = bits_per_second;
    Ok(ShannonReport {
        bits_per_second: n,
        err_rate,
        equivocation_rate: n * h2(err_rate)?,
        similarity_matches: n * (1.0 - err_rate) + n * err_rate / 2.0,
        erasure_loss: n * err_rate,
    })
}
