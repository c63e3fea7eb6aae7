//! Figures of merit on the joint sender/receiver state: quantum mutual
//! information and average fidelity, each evaluated along two independent
//! routes that must agree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fivequbit::{joint_state, JointState, LogicalState, Strategy, SyndromeBasis};
use crate::numerics::{eigh, neg_xlog2x, psd_eigenvalues, psd_sqrt, ComplexMatrix, CLAMP_TOL};

/// Agreement required between the two routes of each figure of merit.
pub const ROUTE_TOL: f64 = 1e-9;

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    if !rho.is_square() {
        return Err(Error::NotDensityMatrix(format!(
            "{}x{} matrix",
            rho.rows(),
            rho.cols()
        )));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-9 || trace.im.abs() > 1e-9 {
        return Err(Error::NotDensityMatrix(format!("trace {trace}")));
    }
    let values = psd_eigenvalues(rho).map_err(|e| match e {
        Error::NegativeEigenvalue(l) => Error::NotDensityMatrix(format!("eigenvalue {l:e}")),
        Error::NotHermitian { deviation } => {
            Error::NotDensityMatrix(format!("not Hermitian ({deviation:e})"))
        }
        other => other,
    })?;
    Ok(values.into_iter().map(neg_xlog2x).sum())
}

/// `ρ_S`: trace over the receiver, indexed by sender label.
pub fn sender_marginal(joint: &JointState) -> ComplexMatrix {
    let m = joint.matrix();
    ComplexMatrix::from_fn(2, 2, |s, t| (0..2).map(|r| m[(2 * s + r, 2 * t + r)]).sum())
}

/// `ρ_R = [[ρ11+ρ33, ρ12+ρ34], [ρ21+ρ43, ρ22+ρ44]]`: trace over the sender.
pub fn receiver_marginal(joint: &JointState) -> ComplexMatrix {
    let m = joint.matrix();
    ComplexMatrix::from_fn(2, 2, |i, j| (0..2).map(|s| m[(2 * s + i, 2 * s + j)]).sum())
}

fn check_uniform_sender(rho_s: &ComplexMatrix) -> Result<()> {
    let deviation = rho_s.max_abs_diff(&ComplexMatrix::identity(2).scaled(0.5));
    if deviation > ROUTE_TOL {
        return Err(Error::ConsistencyViolation {
            check: "sender marginal is I/2",
            deviation,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MutualInfoRoutes {
    /// `S(ρ_S) + S(ρ_R) - S(ρ_C)`
    pub full: f64,
    /// `1 + S(ρ_R) - S(ρ_C)`
    pub simplified: f64,
}

pub fn mutual_info_routes(joint: &JointState) -> Result<MutualInfoRoutes> {
    let rho_s = sender_marginal(joint);
    check_uniform_sender(&rho_s)?;
    let s_c = von_neumann_entropy(joint.matrix())?;
    let s_r = von_neumann_entropy(&receiver_marginal(joint))?;
    let s_s = von_neumann_entropy(&rho_s)?;
    Ok(MutualInfoRoutes {
        full: s_s + s_r - s_c,
        simplified: 1.0 + s_r - s_c,
    })
}

/// Quantum mutual information `S(ρ_S) + S(ρ_R) - S(ρ_C)` in bits.
///
/// Fails if the sender marginal is not `I/2` or the shortcut
/// `1 + S(ρ_R) - S(ρ_C)` disagrees by more than [`ROUTE_TOL`].
pub fn quantum_mutual_info(joint: &JointState) -> Result<f64> {
    let routes = mutual_info_routes(joint)?;
    let deviation = (routes.full - routes.simplified).abs();
    if deviation > ROUTE_TOL {
        return Err(Error::ConsistencyViolation {
            check: "mutual information routes",
            deviation,
        });
    }
    Ok(routes.full)
}

/// `Tr √(√a b √a)`, without the outer square.
pub fn uhlmann_fidelity(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let sa = psd_sqrt(a)?;
    let inner = &(&sa * b) * &sa;
    // Symmetrise away round-off before the eigensolver's Hermitian check.
    let inner = &inner.scaled(0.5) + &inner.adjoint().scaled(0.5);
    let values = eigh(&inner)?.values;
    let mut f = 0.0;
    for l in values {
        if l < -CLAMP_TOL {
            return Err(Error::NegativeEigenvalue(l));
        }
        f += l.max(0.0).sqrt();
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FidelityRoutes {
    /// `(√λ1 + √λ2)/√2` from the eigenvalues of `ρ_R`.
    pub eigenvalue: f64,
    /// `Tr √(√ρ_S ρ_R √ρ_S)` with `ρ_S` taken from the joint state.
    pub uhlmann: f64,
}

pub fn fidelity_routes(joint: &JointState) -> Result<FidelityRoutes> {
    let rho_s = sender_marginal(joint);
    check_uniform_sender(&rho_s)?;
    let rho_r = receiver_marginal(joint);
    let eigenvalue = psd_eigenvalues(&rho_r)?
        .iter()
        .map(|l| l.sqrt())
        .sum::<f64>()
        / 2f64.sqrt();
    let uhlmann = uhlmann_fidelity(&rho_s, &rho_r)?;
    Ok(FidelityRoutes {
        eigenvalue,
        uhlmann,
    })
}

/// Average fidelity between sender and decoded receiver qubit.
pub fn average_fidelity(joint: &JointState) -> Result<f64> {
    let routes = fidelity_routes(joint)?;
    let deviation = (routes.eigenvalue - routes.uhlmann).abs();
    if deviation > ROUTE_TOL {
        return Err(Error::ConsistencyViolation {
            check: "fidelity routes",
            deviation,
        });
    }
    Ok(routes.eigenvalue)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FomResult {
    pub mutual_info: f64,
    pub fidelity: f64,
    /// `𝒩`; 1 for strategy I.
    pub kept_fraction: f64,
    pub strategy: Strategy,
    pub alpha: f64,
    pub phi: f64,
    pub q: f64,
}

impl FomResult {
    /// Fidelity of the kept states alone, without crediting discards as 0.
    pub fn conditional_fidelity(&self) -> Option<f64> {
        (self.kept_fraction > 0.0).then(|| self.fidelity / self.kept_fraction)
    }

    pub fn conditional_mutual_info(&self) -> Option<f64> {
        (self.kept_fraction > 0.0).then(|| self.mutual_info / self.kept_fraction)
    }
}

/// Scales both figures of merit by the kept fraction `n`: discarded states
/// carry no information and contribute zero fidelity.
pub fn strategy2_weighted(result_on_kept: FomResult, n: f64) -> Result<FomResult> {
    if !(0.0..=1.0).contains(&n) {
        return Err(Error::domain(format!("kept fraction {n} outside [0, 1]")));
    }
    Ok(FomResult {
        mutual_info: n * result_on_kept.mutual_info,
        fidelity: n * result_on_kept.fidelity,
        kept_fraction: n,
        ..result_on_kept
    })
}

/// Both figures of merit for one `(α, φ, q)` point and strategy.
///
/// An empty strategy-II ensemble yields the `𝒩 → 0` limit: zero
/// information and zero fidelity.
pub fn evaluate(
    basis: &SyndromeBasis,
    g: &LogicalState,
    q: f64,
    strategy: Strategy,
) -> Result<FomResult> {
    let base = FomResult {
        mutual_info: 0.0,
        fidelity: 0.0,
        kept_fraction: 0.0,
        strategy,
        alpha: g.alpha,
        phi: g.phi,
        q,
    };
    let joint = match joint_state(basis, g, q, strategy) {
        Ok(j) => j,
        Err(Error::DegenerateEnsemble) if strategy == Strategy::II => return Ok(base),
        Err(e) => return Err(e),
    };
    let on_kept = FomResult {
        mutual_info: quantum_mutual_info(&joint)?,
        fidelity: average_fidelity(&joint)?,
        kept_fraction: 1.0,
        ..base
    };
    match strategy {
        Strategy::I => Ok(on_kept),
        Strategy::II => strategy2_weighted(on_kept, joint.kept_fraction()),
    }
}
