//! From moment targets to model parameters, and the threshold share `α̂`.

use crate::error::{Error, Result};
use crate::model::{Model, ModelParams, StrategyProfile};
use crate::roots::{bisect, RootTol};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationTargets {
    /// Fraction of jobs found through friends.
    pub informal_share: f64,
    /// `λ / (p + κ)`.
    pub homophily_ratio: f64,
    /// Employment rate of every worker under complete segregation.
    pub target_employment: f64,
    /// Mean wage at `α = 0.5`.
    pub target_income: f64,
    pub rho: f64,
}

impl Default for CalibrationTargets {
    fn default() -> Self {
        CalibrationTargets {
            informal_share: 0.5,
            homophily_ratio: 3.0,
            target_employment: 0.95,
            target_income: 40_000.0,
            rho: 1e-4,
        }
    }
}

/// Separation of the identified products into genuine tie probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TieSplit {
    pub c1: f64,
    pub kappa: f64,
}

impl Default for TieSplit {
    /// `c1 = 25`, giving `p + κ = 0.19` and `λ = 0.57`, with `κ = 0.10`.
    fn default() -> Self {
        TieSplit { c1: 25.0, kappa: 0.10 }
    }
}

/// Rate-product parameters hitting the targets, at `α = 0.5`.
pub fn calibrate(targets: &CalibrationTargets) -> Result<ModelParams> {
    let t = targets;
    let infeasible = |msg: String| Err(Error::InfeasibleTarget(msg));
    if !(t.informal_share > 0.0 && t.informal_share < 1.0) {
        return infeasible(format!("informal_share must lie in (0, 1), got {}", t.informal_share));
    }
    if !(t.target_employment > 0.0 && t.target_employment < 1.0) {
        return infeasible(format!("target_employment must lie in (0, 1), got {}", t.target_employment));
    }
    if !(t.homophily_ratio > 0.0 && t.homophily_ratio.is_finite()) {
        return infeasible(format!("homophily_ratio must be positive, got {}", t.homophily_ratio));
    }
    if !(t.target_income > 0.0 && t.rho > 0.0) {
        return infeasible("target_income and rho must be positive".into());
    }
    // total arrival rate c0 + c1 (p+κ+λ)/2 that yields the target employment
    let rate = t.target_employment / (1.0 - t.target_employment);
    let c0 = rate * (1.0 - t.informal_share);
    let s0 = c0 / (1.0 + c0);
    if t.target_employment <= s0 {
        return infeasible(format!("target employment {} not above the direct-search floor {s0}", t.target_employment));
    }
    let c1_total = 2.0 * rate * t.informal_share;
    let c1_p_kappa = c1_total / (1.0 + t.homophily_ratio);
    let c1_lambda = c1_total - c1_p_kappa;
    ModelParams::from_products(c0, c1_p_kappa, c1_lambda, 2.0 * t.target_income, 0.5, t.rho)
}

/// Calibrated parameters with an explicit tie-probability split.
pub fn calibrate_with_split(targets: &CalibrationTargets, split: &TieSplit) -> Result<ModelParams> {
    let q = calibrate(targets)?;
    apply_split(&q, split)
}

/// Re-expresses `params` with genuine probabilities, holding the products fixed.
pub fn apply_split(params: &ModelParams, split: &TieSplit) -> Result<ModelParams> {
    if !(split.c1 > 0.0) {
        return Err(Error::InvalidSplit(format!("c1 must be positive, got {}", split.c1)));
    }
    let p_kappa = params.c1_p_kappa() / split.c1;
    let lambda = params.c1_lambda() / split.c1;
    let p = p_kappa - split.kappa;
    if split.kappa < 0.0 || p < -1e-12 {
        return Err(Error::InvalidSplit(format!("kappa = {} outside [0, p + kappa = {p_kappa}]", split.kappa)));
    }
    if p_kappa + lambda > 1.0 + 1e-12 {
        return Err(Error::InvalidSplit(format!("p + kappa + lambda = {} exceeds 1", p_kappa + lambda)));
    }
    ModelParams::new(
        p.max(0.0),
        split.kappa,
        lambda,
        params.c0(),
        split.c1,
        params.theta(),
        params.alpha(),
        params.rho(),
    )
    .map_err(|e| Error::InvalidSplit(e.to_string()))
}

/// `ΔΠ^G(1, 0) / Π_B^G(1, 0)` as a function of `α`.
fn corner_gap(params: &ModelParams, alpha: f64) -> f64 {
    let Ok(q) = params.with_alpha(alpha) else {
        return f64::NAN;
    };
    match Model::new(q).market_state(&StrategyProfile::new(1.0, 0.0)) {
        Ok(m) => m.d_pi_g / m.pi_bg,
        Err(_) => f64::NAN,
    }
}

/// Share `α̂` in `(0.5, 1)` at which complete segregation stops being an equilibrium.
pub fn find_alpha_hat(params: &ModelParams, tol: f64) -> Result<f64> {
    let f = |a: f64| corner_gap(params, a);
    bisect(f, 0.5, 1.0 - 1e-9, RootTol { x_tol: tol, f_tol: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_reproduce_the_parameter_table() {
        let q = calibrate(&CalibrationTargets::default()).unwrap();
        assert!((q.c0() - 9.5).abs() < 1e-12);
        assert!((q.s0() - 19.0 / 21.0).abs() < 1e-12);
        assert!((q.c1_p_kappa() - 4.75).abs() < 1e-12);
        assert!((q.c1_lambda() - 14.25).abs() < 1e-12);
        assert_eq!(q.theta(), 80_000.0);
        assert_eq!(q.rho(), 1e-4);
        // an even informal share means direct and network arrival rates match
        assert!((q.c0() - q.c1() * (q.p() + q.kappa() + q.lambda()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn default_split_preserves_products() {
        let q = calibrate_with_split(&CalibrationTargets::default(), &TieSplit::default()).unwrap();
        assert!((q.p() - 0.09).abs() < 1e-12 && (q.kappa() - 0.10).abs() < 1e-12);
        assert!((q.lambda() - 0.57).abs() < 1e-12);
        assert!((q.c1_p_kappa() - 4.75).abs() < 1e-12 && (q.c1_lambda() - 14.25).abs() < 1e-12);
    }

    #[test]
    fn split_exceeding_unit_probability_is_rejected() {
        let split = TieSplit { c1: 10.0, kappa: 0.1 };
        let err = calibrate_with_split(&CalibrationTargets::default(), &split).unwrap_err();
        assert!(matches!(err, Error::InvalidSplit(_)));
    }

    #[test]
    fn infeasible_targets() {
        for t in [
            CalibrationTargets { target_employment: 1.0, ..Default::default() },
            CalibrationTargets { informal_share: 0.0, ..Default::default() },
            CalibrationTargets { target_income: -1.0, ..Default::default() },
        ] {
            assert!(matches!(calibrate(&t), Err(Error::InfeasibleTarget(_))));
        }
    }

    #[test]
    fn alpha_hat_matches_reference() {
        let a = find_alpha_hat(&ModelParams::calibrated(), 1e-12).unwrap();
        assert!((a - 0.590_414_050_955_106_4).abs() < 1e-10, "{a}");
    }
}
