//! Diagnostic checks of the two regularity assumptions used in the
//! uniqueness arguments. The solvers never depend on them; these only
//! report whether a parameter set satisfies them.

use super::{Model, StrategyProfile};
use serde::Serialize;

/// Scarce-labor wage limit: does `U(w_A(x, x))` (and `U(w_B(1-x, 1-x))`) grow
/// without bound as `x -> 0`?
#[derive(Debug, Clone, Serialize)]
pub struct WageLimitCheck {
    /// `(x, U(w_A(x,x)), U(w_B(1-x,1-x)))` at decade probes `x = 1e-2 .. 1e-12`.
    pub probes: Vec<(f64, f64, f64)>,
    pub appears_unbounded: bool,
}

/// Employment-elasticity condition on an interior grid.
#[derive(Debug, Clone, Serialize)]
pub struct ElasticityCheck {
    pub points_checked: usize,
    pub violations: usize,
    pub first_violation: Option<StrategyProfile>,
}

impl ElasticityCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

pub fn check_wage_limit(model: &Model) -> WageLimitCheck {
    let probes: Vec<(f64, f64, f64)> = (2..=12)
        .step_by(2)
        .filter_map(|k| {
            let x = 10f64.powi(-k);
            let a = model.market_state(&StrategyProfile::symmetric(x)).ok()?;
            let b = model.market_state(&StrategyProfile::symmetric(1.0 - x)).ok()?;
            Some((x, model.utility(a.w_a).ok()?, model.utility(b.w_b).ok()?))
        })
        .collect();
    let growing = |sel: fn(&(f64, f64, f64)) -> f64| {
        let vals: Vec<f64> = probes.iter().map(sel).collect();
        if vals.len() < 3 {
            return false;
        }
        let incs: Vec<f64> = vals.windows(2).map(|w| w[1] - w[0]).collect();
        let first = incs[0];
        let last = *incs.last().unwrap();
        incs.iter().all(|&d| d > 0.0) && last >= 0.5 * first
    };
    let appears_unbounded = growing(|t| t.1) && growing(|t| t.2);
    WageLimitCheck { probes, appears_unbounded }
}

/// Checks `|∂ln s / ∂μ_X| < |∂ln U(w) / ∂μ_X|` for both occupations and groups
/// at the interior points of an `n x n` grid, by central differences.
pub fn check_employment_elasticity(model: &Model, n: usize) -> ElasticityCheck {
    let h = 1e-6;
    let mut checked = 0;
    let mut violations = 0;
    let mut first = None;
    for i in 1..n {
        for j in 1..n {
            let profile = StrategyProfile::new(i as f64 / n as f64, j as f64 / n as f64);
            for group in [super::Group::Red, super::Group::Green] {
                let mu = profile.mu(group);
                let up = profile.with(group, mu + h);
                let dn = profile.with(group, mu - h);
                let (Ok(su), Ok(sd)) = (model.market_state(&up), model.market_state(&dn)) else {
                    continue;
                };
                let (ea, eb, ua, ub) = match group {
                    super::Group::Red => (
                        (su.s_ar.ln() - sd.s_ar.ln()) / (2.0 * h),
                        (su.s_br.ln() - sd.s_br.ln()) / (2.0 * h),
                        log_utility_slope(model, su.w_a, sd.w_a, h),
                        log_utility_slope(model, su.w_b, sd.w_b, h),
                    ),
                    super::Group::Green => (
                        (su.s_ag.ln() - sd.s_ag.ln()) / (2.0 * h),
                        (su.s_bg.ln() - sd.s_bg.ln()) / (2.0 * h),
                        log_utility_slope(model, su.w_a, sd.w_a, h),
                        log_utility_slope(model, su.w_b, sd.w_b, h),
                    ),
                };
                checked += 1;
                if !(ea.abs() < ua.abs() && eb.abs() < ub.abs()) {
                    violations += 1;
                    first.get_or_insert(profile);
                }
            }
        }
    }
    ElasticityCheck { points_checked: checked, violations, first_violation: first }
}

fn log_utility_slope(model: &Model, w_up: f64, w_dn: f64, h: f64) -> f64 {
    let u = |w| model.utility(w).unwrap_or(f64::NAN);
    (u(w_up).ln() - u(w_dn).ln()) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;

    #[test]
    fn bounded_cara_utility_fails_the_wage_limit() {
        let m = Model::new(ModelParams::calibrated());
        let check = check_wage_limit(&m);
        assert!(!check.appears_unbounded);
        assert!(check.probes.iter().all(|&(_, ua, ub)| ua <= 1.0 && ub <= 1.0));
    }

    #[test]
    fn elasticity_condition_is_violated_somewhere_for_large_alpha() {
        let m = Model::new(ModelParams::calibrated().with_alpha(0.9).unwrap());
        let check = check_employment_elasticity(&m, 40);
        assert!(check.points_checked > 0);
        assert!(!check.holds());
    }
}
