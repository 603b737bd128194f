//! Equilibria of the education-choice game: conditions, regime
//! classification, edge and symmetric solvers, stability, adjustment
//! dynamics and exhaustive enumeration.

mod dynamics;
mod enumerate;
mod solve;
mod stability;

pub use dynamics::{simulate_dynamics, DynamicsOptions, DynamicsTrace};
pub use enumerate::{enumerate_equilibria, stable_equilibria};
pub use solve::{
    find_mu_hat, laissez_faire_mu, partial_roots, solve_partial, solve_symmetric, symmetric_roots, SymmetricSolution,
};
pub use stability::{jacobian, stability, StabilityReport, BOUNDARY_STRICTNESS, DEFAULT_FD_STEP};

use crate::error::{Error, Result};
use crate::model::{Group, MarketState, Model, StrategyProfile};
use serde::Serialize;

/// Default tolerance on payoff gaps when checking equilibrium conditions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Inward offset used to evaluate limits at the two singular corners.
pub const CORNER_PROBE: f64 = 1e-9;

/// Keeps root scans off the singular edge end points.
pub(crate) const EDGE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EquilibriumKind {
    CompleteSegregation,
    PartialSegregation,
    SymmetricInterior,
    Corner,
    Other,
}

impl EquilibriumKind {
    pub fn of(profile: &StrategyProfile) -> Self {
        let edge = |m: f64| m == 0.0 || m == 1.0;
        let (r, g) = (profile.mu_r(), profile.mu_g());
        match (edge(r), edge(g)) {
            (true, true) if r != g => EquilibriumKind::CompleteSegregation,
            (true, true) => EquilibriumKind::Corner,
            (true, false) | (false, true) => EquilibriumKind::PartialSegregation,
            (false, false) if r == g => EquilibriumKind::SymmetricInterior,
            (false, false) => EquilibriumKind::Other,
        }
    }

    pub fn is_segregated(self) -> bool {
        matches!(self, EquilibriumKind::CompleteSegregation | EquilibriumKind::PartialSegregation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Stability {
    Stable,
    /// All conditions hold, but some boundary coordinate has a zero payoff gap
    /// and is held only by the inward slope.
    BoundaryStable,
    Unstable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Complete segregation is the stable outcome.
    Complete,
    /// One group specializes in A, the other mixes.
    Partial,
}

/// Verdict on one group's equilibrium condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionVerdict {
    pub mu: f64,
    pub gap: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumCheck {
    pub red: ConditionVerdict,
    pub green: ConditionVerdict,
}

impl EquilibriumCheck {
    pub fn satisfied(&self) -> bool {
        self.red.holds && self.green.holds
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub profile: StrategyProfile,
    pub kind: EquilibriumKind,
    pub satisfies_conditions: bool,
    pub stability: Stability,
    /// `jacobian[x][y] = ∂ΔΠ^x / ∂μ_y`, rows and columns ordered (R, G).
    pub jacobian: [[f64; 2]; 2],
    pub det_jacobian: f64,
    /// `None` only at the singular corners.
    pub market: Option<MarketState>,
}

impl EquilibriumReport {
    pub fn build(model: &Model, profile: StrategyProfile, tol: f64) -> Self {
        let satisfies_conditions = check_equilibrium(model, &profile, tol).satisfied();
        let st = stability(model, &profile, DEFAULT_FD_STEP, tol);
        EquilibriumReport {
            profile,
            kind: EquilibriumKind::of(&profile),
            satisfies_conditions,
            stability: st.stability,
            jacobian: st.jacobian,
            det_jacobian: st.det,
            market: model.market_state(&profile).ok(),
        }
    }

    pub fn is_stable(&self) -> bool {
        self.stability == Stability::Stable
    }
}

/// Payoff gaps, with the singular corners replaced by an inward probe.
pub fn probed_gaps(model: &Model, profile: &StrategyProfile) -> (f64, f64) {
    let probe = if profile.mu_r() == 0.0 && profile.mu_g() == 0.0 {
        StrategyProfile::symmetric(CORNER_PROBE)
    } else if profile.mu_r() == 1.0 && profile.mu_g() == 1.0 {
        StrategyProfile::symmetric(1.0 - CORNER_PROBE)
    } else {
        *profile
    };
    model.payoff_gaps(&probe).expect("probe profile has positive supplies")
}

pub fn probed_gap(model: &Model, profile: &StrategyProfile, group: Group) -> f64 {
    let (r, g) = probed_gaps(model, profile);
    match group {
        Group::Red => r,
        Group::Green => g,
    }
}

fn verdict(mu: f64, gap: f64, tol: f64) -> ConditionVerdict {
    let holds = if mu == 0.0 {
        gap <= tol
    } else if mu == 1.0 {
        gap >= -tol
    } else {
        gap.abs() <= tol
    };
    ConditionVerdict { mu, gap, holds }
}

/// Nash conditions per group: `ΔΠ ≤ 0` at `μ = 0`, `ΔΠ = 0` inside, `ΔΠ ≥ 0` at `μ = 1`.
pub fn check_equilibrium(model: &Model, profile: &StrategyProfile, tol: f64) -> EquilibriumCheck {
    let (gr, gg) = probed_gaps(model, profile);
    EquilibriumCheck {
        red: verdict(profile.mu_r(), gr, tol),
        green: verdict(profile.mu_g(), gg, tol),
    }
}

/// Compares `U(w_A(1,0)) / U(w_B(1,0))` with `s_H / s_L`.
pub fn classify_regime(model: &Model) -> Result<Regime> {
    let (ratio, threshold) = regime_ratio(model)?;
    Ok(if ratio <= threshold { Regime::Complete } else { Regime::Partial })
}

/// `(U(w_A(1,0)) / U(w_B(1,0)), s_H / s_L)`.
pub fn regime_ratio(model: &Model) -> Result<(f64, f64)> {
    let m = model.market_state(&StrategyProfile::new(1.0, 0.0))?;
    if m.w_a < m.w_b * (1.0 - 1e-12) {
        return Err(Error::RelabelRequired { w_a: m.w_a, w_b: m.w_b });
    }
    let ratio = model.utility(m.w_a)? / model.utility(m.w_b)?;
    Ok((ratio, model.s_high() / model.s_low()))
}
