//! C ABI over `qecmerit`.
//!
//! Conventions:
//! * every fallible call returns a [`QmStatus`]; results go through out-pointers;
//! * the syndrome basis and sweep tables are opaque handles, released with
//!   their matching `*_free` function;
//! * the message of the last failure on the calling thread is available from
//!   [`qm_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qecmerit::classical::{
    mutual_info_strategy1, mutual_info_strategy2, repetition4_channel, shannon_example,
};
use qecmerit::fivequbit::joint_state;
use qecmerit::fom::evaluate;
use qecmerit::sweep::{self, Mode, StrategySet, SweepConfig, Table};
use qecmerit::{Error, LogicalState, Strategy, SyndromeBasis};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    NullPointer = 1,
    /// Argument outside its domain (probability not in [0, 1], bad index, ...).
    Domain = 2,
    /// Every outcome was discarded or uncorrectable.
    Degenerate = 3,
    /// Eigensolver, Hermiticity or positivity failure.
    Numerical = 4,
    /// Two independent evaluation routes disagreed.
    Consistency = 5,
    /// Output buffer too small; the required size was reported.
    BufferTooSmall = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QmStrategy {
    /// Uncorrectable outcomes replaced by the maximally mixed state.
    I = 1,
    /// Uncorrectable outcomes tagged and discarded.
    Ii = 2,
}

impl From<QmStrategy> for Strategy {
    fn from(s: QmStrategy) -> Self {
        match s {
            QmStrategy::I => Strategy::I,
            QmStrategy::Ii => Strategy::II,
        }
    }
}

/// Opaque syndrome basis of the five-qubit code.
pub struct QmBasis {
    inner: SyndromeBasis,
}

/// Opaque sweep result table.
pub struct QmTable {
    inner: Table,
    csv: CString,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QmChannelMatrix {
    pub p_ok: f64,
    pub p_err: f64,
    pub p_unc: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QmClassicalInfo {
    pub i_strategy1: f64,
    /// Per kept bit.
    pub i_ok: f64,
    /// Per transmitted bit.
    pub i_strategy2: f64,
    pub success_strategy1: f64,
    pub success_strategy2: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QmFom {
    pub mutual_info: f64,
    pub fidelity: f64,
    pub kept_fraction: f64,
}

/// Row-major 4×4 joint density matrix, basis `{0_L⊗g, 1_L⊗g, 0_L⊗g⊥, 1_L⊗g⊥}`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QmJointState {
    pub re: [f64; 16],
    pub im: [f64; 16],
    pub kept_fraction: f64,
    /// Uncorrectable weight for `g` and `g⊥`.
    pub uncorrectable: [f64; 2],
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QmShannonReport {
    pub bits_per_second: f64,
    pub err_rate: f64,
    pub equivocation_rate: f64,
    pub similarity_matches: f64,
    pub erasure_loss: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> QmStatus {
    match err {
        Error::Domain(_)
        | Error::InvalidIndex(_)
        | Error::DimensionMismatch { .. }
        | Error::Config(_) => QmStatus::Domain,
        Error::DegenerateChannel | Error::DegenerateEnsemble => QmStatus::Degenerate,
        Error::NotHermitian { .. }
        | Error::NegativeEigenvalue(_)
        | Error::NotDensityMatrix(_)
        | Error::NoConvergence { .. }
        | Error::OrthonormalityViolation { .. } => QmStatus::Numerical,
        Error::ConsistencyViolation { .. } => QmStatus::Consistency,
        Error::Io(_) => QmStatus::Io,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (QmStatus, String)>) -> QmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside qecmerit".into());
            QmStatus::Panic
        }
    }
}

fn fail(err: Error) -> (QmStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(name: &str) -> (QmStatus, String) {
    (QmStatus::NullPointer, format!("{name} is null"))
}

/// Copies the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL,
/// or 0 when there is no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qm_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_deref() else { return 0 };
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds and verifies the 32-vector syndrome basis. Returns null on failure.
#[no_mangle]
pub extern "C" fn qm_basis_new() -> *mut QmBasis {
    let mut out = ptr::null_mut();
    let status = guard(|| {
        let inner = SyndromeBasis::new().map_err(fail)?;
        out = Box::into_raw(Box::new(QmBasis { inner }));
        Ok(())
    });
    if status == QmStatus::Ok {
        out
    } else {
        ptr::null_mut()
    }
}

/// # Safety
/// `basis` must be null or a pointer returned by [`qm_basis_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn qm_basis_free(basis: *mut QmBasis) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

/// Maximum Gram-matrix deviation of the basis from the identity.
///
/// # Safety
/// `basis` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_basis_gram_deviation(basis: *const QmBasis, out: *mut f64) -> QmStatus {
    guard(|| {
        let basis = basis.as_ref().ok_or_else(|| null("basis"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = basis.inner.gram_deviation();
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_repetition4_channel(q: f64, out: *mut QmChannelMatrix) -> QmStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let m = repetition4_channel(q).map_err(fail)?;
        *out = QmChannelMatrix {
            p_ok: m.p_ok(),
            p_err: m.p_err(),
            p_unc: m.p_unc(),
        };
        Ok(())
    })
}

/// Mutual information and success probability of both strategies at `q`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_classical_info(q: f64, out: *mut QmClassicalInfo) -> QmStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let m = repetition4_channel(q).map_err(fail)?;
        let s2 = mutual_info_strategy2(&m).map_err(fail)?;
        *out = QmClassicalInfo {
            i_strategy1: mutual_info_strategy1(&m),
            i_ok: s2.i_ok,
            i_strategy2: s2.i_avg,
            success_strategy1: m.success_strategy1(),
            success_strategy2: m.success_strategy2(),
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_shannon_example(
    bits_per_second: f64,
    err_rate: f64,
    out: *mut QmShannonReport,
) -> QmStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r = shannon_example(bits_per_second, err_rate).map_err(fail)?;
        *out = QmShannonReport {
            bits_per_second: r.bits_per_second,
            err_rate: r.err_rate,
            equivocation_rate: r.equivocation_rate,
            similarity_matches: r.similarity_matches,
            erasure_loss: r.erasure_loss,
        };
        Ok(())
    })
}

/// Joint sender/receiver state for `|g⟩ = sin α|0_L⟩ + e^{iφ} cos α|1_L⟩`.
///
/// # Safety
/// `basis` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_joint_state(
    basis: *const QmBasis,
    alpha: f64,
    phi: f64,
    q: f64,
    strategy: QmStrategy,
    out: *mut QmJointState,
) -> QmStatus {
    guard(|| {
        let basis = basis.as_ref().ok_or_else(|| null("basis"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let j = joint_state(
            &basis.inner,
            &LogicalState::new(alpha, phi),
            q,
            strategy.into(),
        )
        .map_err(fail)?;
        let mut res = QmJointState {
            kept_fraction: j.kept_fraction(),
            uncorrectable: j.uncorrectable_weights(),
            ..Default::default()
        };
        for (i, z) in j.matrix().as_slice().iter().enumerate() {
            res.re[i] = z.re;
            res.im[i] = z.im;
        }
        *out = res;
        Ok(())
    })
}

/// Mutual information and fidelity at one point. Strategy II values are
/// already weighted by the kept fraction.
///
/// # Safety
/// `basis` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_evaluate(
    basis: *const QmBasis,
    alpha: f64,
    phi: f64,
    q: f64,
    strategy: QmStrategy,
    out: *mut QmFom,
) -> QmStatus {
    guard(|| {
        let basis = basis.as_ref().ok_or_else(|| null("basis"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r = evaluate(
            &basis.inner,
            &LogicalState::new(alpha, phi),
            q,
            strategy.into(),
        )
        .map_err(fail)?;
        *out = QmFom {
            mutual_info: r.mutual_info,
            fidelity: r.fidelity,
            kept_fraction: r.kept_fraction,
        };
        Ok(())
    })
}

fn run_sweep(cfg: &SweepConfig) -> Result<*mut QmTable, (QmStatus, String)> {
    let inner = sweep::run(cfg).map_err(fail)?;
    let csv = CString::new(inner.to_csv()).map_err(|e| (QmStatus::Panic, e.to_string()))?;
    Ok(Box::into_raw(Box::new(QmTable { inner, csv })))
}

/// Classical sweep over `q_steps` points in `[q_min, q_max]`, both strategies.
///
/// # Safety
/// `out` must be valid for a write; the handle it receives is released with
/// [`qm_table_free`].
#[no_mangle]
pub unsafe extern "C" fn qm_classical_sweep(
    q_min: f64,
    q_max: f64,
    q_steps: usize,
    jobs: usize,
    out: *mut *mut QmTable,
) -> QmStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let mut cfg = SweepConfig::new(Mode::Classical);
        (cfg.q_min, cfg.q_max, cfg.q_steps, cfg.jobs) = (q_min, q_max, q_steps, jobs.max(1));
        *out = run_sweep(&cfg)?;
        Ok(())
    })
}

/// Five-qubit sweep over `alpha_steps × q_steps` points, both strategies.
///
/// # Safety
/// `out` must be valid for a write; the handle it receives is released with
/// [`qm_table_free`].
#[no_mangle]
pub unsafe extern "C" fn qm_quantum_sweep(
    q_min: f64,
    q_max: f64,
    q_steps: usize,
    alpha_steps: usize,
    phi: f64,
    jobs: usize,
    out: *mut *mut QmTable,
) -> QmStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let mut cfg = SweepConfig::new(Mode::Quantum);
        (cfg.q_min, cfg.q_max, cfg.q_steps, cfg.alpha_steps) = (q_min, q_max, q_steps, alpha_steps);
        cfg.phi = phi;
        cfg.jobs = jobs.max(1);
        cfg.strategies = StrategySet::BOTH;
        *out = run_sweep(&cfg)?;
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qm_table_free(table: *mut QmTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live handle; `rows` and `cols` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_table_shape(
    table: *const QmTable,
    rows: *mut usize,
    cols: *mut usize,
) -> QmStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let rows = rows.as_mut().ok_or_else(|| null("rows"))?;
        let cols = cols.as_mut().ok_or_else(|| null("cols"))?;
        *rows = t.inner.rows.len();
        *cols = t.inner.columns.len();
        Ok(())
    })
}

/// # Safety
/// `table` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_table_value(
    table: *const QmTable,
    row: usize,
    col: usize,
    out: *mut f64,
) -> QmStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = *t
            .inner
            .rows
            .get(row)
            .and_then(|r| r.get(col))
            .ok_or_else(|| {
                (
                    QmStatus::Domain,
                    format!("cell ({row}, {col}) out of range"),
                )
            })?;
        Ok(())
    })
}

/// Copies the CSV rendering into `buf`. `needed` receives the byte length
/// including the trailing NUL; a short buffer yields `BufferTooSmall`.
///
/// # Safety
/// `table` must be a live handle, `buf` null or valid for `len` bytes, and
/// `needed` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qm_table_csv(
    table: *const QmTable,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QmStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let needed = needed.as_mut().ok_or_else(|| null("needed"))?;
        let bytes = t.csv.as_bytes_with_nul();
        *needed = bytes.len();
        if buf.is_null() || len < bytes.len() {
            return Err((
                QmStatus::BufferTooSmall,
                format!("need {} bytes", bytes.len()),
            ));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
        Ok(())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
