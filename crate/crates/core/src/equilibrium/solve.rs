use super::{regime_ratio, EDGE_EPS};
use crate::error::{Error, Result};
use crate::model::{Model, StrategyProfile};
use crate::roots::{find_roots, RootTol};
use serde::Serialize;

/// Pre-scan resolution for bracketing roots on `[0, 1]`.
const SCAN_CELLS: usize = 1000;

fn edge_tol(f_tol: f64) -> RootTol {
    RootTol { x_tol: 1e-12, f_tol }
}

fn green_gap_on_red_edge(model: &Model, mu_g: f64) -> f64 {
    let p = StrategyProfile::new(1.0, mu_g.min(1.0 - EDGE_EPS));
    model.payoff_gaps(&p).map(|g| g.1).unwrap_or(f64::NAN)
}

/// Every zero of `ΔΠ^G(1, ·)` on `[0, 1)`.
pub fn partial_roots(model: &Model, tol: f64) -> Vec<f64> {
    find_roots(|m| green_gap_on_red_edge(model, m), 0.0, 1.0, SCAN_CELLS, edge_tol(tol))
        .into_iter()
        .map(|m| m.min(1.0 - EDGE_EPS))
        .collect()
}

/// The mixing share `μ*` of the partially segregated equilibrium `(1, μ*)`.
///
/// When `ΔΠ^G(1, ·)` has several zeros the first downward crossing is returned;
/// [`partial_roots`] lists all of them.
pub fn solve_partial(model: &Model, tol: f64) -> Result<f64> {
    let roots = partial_roots(model, tol);
    let h = 1e-7;
    roots
        .iter()
        .copied()
        .find(|&m| {
            let up = green_gap_on_red_edge(model, (m + h).min(1.0));
            let dn = green_gap_on_red_edge(model, (m - h).max(0.0));
            up <= dn
        })
        .or_else(|| roots.first().copied())
        .ok_or_else(|| Error::NoRoot("ΔΠ^G(1, μ) keeps one sign on [0, 1): not a partial regime".into()))
}

/// Share `μ̂` at which `w_A(1, μ̂) = w_B(1, μ̂)`.
pub fn find_mu_hat(model: &Model, tol: f64) -> Result<f64> {
    let theta = model.params().theta();
    let f = |mu: f64| {
        let p = StrategyProfile::new(1.0, mu.min(1.0 - EDGE_EPS));
        let (la, lb) = model.labor_supplies(&p);
        model.wages(la, lb).map(|(wa, wb)| (wa - wb) / theta).unwrap_or(f64::NAN)
    };
    find_roots(f, 0.0, 1.0, SCAN_CELLS, edge_tol(tol))
        .first()
        .copied()
        .ok_or_else(|| Error::NoRoot("wages never cross along the (1, μ) edge".into()))
}

/// Zeros of the common gap `ΔΠ(μ, μ)` on the diagonal, with the selected root.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricSolution {
    /// Root with the highest welfare when there are several.
    pub mu_s: f64,
    pub roots: Vec<f64>,
}

impl SymmetricSolution {
    pub fn is_multiple(&self) -> bool {
        self.roots.len() > 1
    }
}

pub fn symmetric_roots(model: &Model, tol: f64) -> Vec<f64> {
    let f = |mu: f64| {
        let p = StrategyProfile::symmetric(mu.clamp(EDGE_EPS, 1.0 - EDGE_EPS));
        model.payoff_gaps(&p).map(|g| g.0).unwrap_or(f64::NAN)
    };
    find_roots(f, 0.0, 1.0, SCAN_CELLS, edge_tol(tol))
        .into_iter()
        .map(|m| m.clamp(EDGE_EPS, 1.0 - EDGE_EPS))
        .collect()
}

/// The symmetric equilibrium `(μ^S, μ^S)`.
pub fn solve_symmetric(model: &Model, tol: f64) -> Result<SymmetricSolution> {
    let roots = symmetric_roots(model, tol);
    let welfare = |mu: f64| {
        crate::welfare::welfare(model, &StrategyProfile::symmetric(mu)).unwrap_or(f64::NEG_INFINITY)
    };
    let mu_s = roots
        .iter()
        .copied()
        .fold(None, |best: Option<f64>, m| match best {
            Some(b) if welfare(b) >= welfare(m) => Some(b),
            _ => Some(m),
        })
        .ok_or_else(|| Error::NoRoot("no symmetric equilibrium on the diagonal".into()))?;
    Ok(SymmetricSolution { mu_s, roots })
}

/// `μ*` of the laissez-faire equilibrium `(1, μ*)`: zero in the complete regime.
pub fn laissez_faire_mu(model: &Model, tol: f64) -> Result<f64> {
    let (ratio, threshold) = regime_ratio(model)?;
    if ratio <= threshold {
        Ok(0.0)
    } else {
        solve_partial(model, tol)
    }
}
