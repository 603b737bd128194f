//! Utilitarian welfare, the planner's first-best, and the second-best
//! comparison between stabilized integration and laissez-faire segregation.

use crate::equilibrium::{laissez_faire_mu, solve_symmetric, EquilibriumKind};
use crate::error::{Error, Result};
use crate::model::{Model, StrategyProfile};
use rayon::prelude::*;
use serde::Serialize;

/// Relative tolerance between the two welfare formulations.
pub const WELFARE_CONSISTENCY_TOL: f64 = 1e-10;

/// Relative tolerance for treating two welfare values as tied.
pub const TIE_TOL: f64 = 1e-10;

/// Share-weighted sum of the four payoffs.
pub fn welfare_by_payoffs(model: &Model, profile: &StrategyProfile) -> Result<f64> {
    let m = model.market_state(profile)?;
    let (r, g) = (profile.mu_r(), profile.mu_g());
    Ok(0.5 * (r * m.pi_ar + (1.0 - r) * m.pi_br + g * m.pi_ag + (1.0 - g) * m.pi_bg))
}

/// `L_A U(∂F/∂L_A) + L_B U(∂F/∂L_B)`.
pub fn welfare_by_supplies(model: &Model, profile: &StrategyProfile) -> Result<f64> {
    let (l_a, l_b) = model.labor_supplies(profile);
    let (w_a, w_b) = model.wages(l_a, l_b)?;
    Ok(l_a * model.utility(w_a)? + l_b * model.utility(w_b)?)
}

/// Utilitarian welfare. Both formulations are evaluated and must agree.
pub fn welfare(model: &Model, profile: &StrategyProfile) -> Result<f64> {
    let by_payoffs = welfare_by_payoffs(model, profile)?;
    let by_supplies = welfare_by_supplies(model, profile)?;
    let scale = by_payoffs.abs().max(by_supplies.abs()).max(f64::MIN_POSITIVE);
    if (by_payoffs - by_supplies).abs() > WELFARE_CONSISTENCY_TOL * scale {
        return Err(Error::InconsistentWelfare { by_payoffs, by_supplies });
    }
    Ok(by_payoffs)
}

/// Lowest payoff among (group, education) cells that have positive mass.
pub fn min_realized_payoff(model: &Model, profile: &StrategyProfile) -> Result<f64> {
    let m = model.market_state(profile)?;
    let (r, g) = (profile.mu_r(), profile.mu_g());
    Ok([(r, m.pi_ar), (1.0 - r, m.pi_br), (g, m.pi_ag), (1.0 - g, m.pi_bg)]
        .iter()
        .filter(|(mass, _)| *mass > 0.0)
        .map(|&(_, pi)| pi)
        .fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcavityCheck {
    pub holds: bool,
    /// Grid point with the smallest relative margin `(s'' + (4/λ) s') / s'`.
    pub worst_x: f64,
    pub worst_margin: f64,
    pub points: usize,
}

/// Checks `s''(x) > -(4/λ) s'(x)` on a `1e-3` grid over `[0, (p+κ+λ)/2]`.
pub fn concavity_condition(model: &Model) -> ConcavityCheck {
    let q = model.params();
    let upper = 0.5 * (q.p() + q.kappa() + q.lambda());
    let s = model.employment_fn();
    let n = (upper / 1e-3).ceil() as usize;
    let mut worst = (0.0, f64::INFINITY);
    for i in 0..=n {
        let x = (i as f64 * 1e-3).min(upper);
        let slope = s.derivative(x);
        let mut margin = s.second_derivative(x) + 4.0 / q.lambda() * slope;
        if slope > 0.0 {
            margin /= slope;
        }
        if margin < worst.1 {
            worst = (x, margin);
        }
    }
    ConcavityCheck { holds: worst.1 > 0.0, worst_x: worst.0, worst_margin: worst.1, points: n + 1 }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstBest {
    /// Lexicographically smallest maximizer.
    pub profile: StrategyProfile,
    pub welfare: f64,
    pub kind: EquilibriumKind,
    /// Every maximizer found, sorted.
    pub ties: Vec<StrategyProfile>,
}

/// Planner's optimum over the unit square: grid search, then coordinate refinement.
pub fn first_best(model: &Model, grid_n: usize) -> Result<FirstBest> {
    if grid_n < 200 {
        return Err(Error::InvalidArgument(format!("grid_n must be at least 200, got {grid_n}")));
    }
    let nodes: Vec<(usize, usize, f64)> = (0..=grid_n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..=grid_n).filter_map(move |j| {
                let p = StrategyProfile::new(i as f64 / grid_n as f64, j as f64 / grid_n as f64);
                welfare(model, &p).ok().map(|w| (i, j, w))
            })
        })
        .collect();
    let best = nodes.iter().map(|n| n.2).fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return Err(Error::NoRoot("welfare undefined on the whole grid".into()));
    }
    let radius = 2.0 / grid_n as f64;
    let mut refined: Vec<(StrategyProfile, f64)> = nodes
        .iter()
        .filter(|n| n.2 >= best - TIE_TOL * best.abs())
        .map(|&(i, j, _)| refine(model, (i as f64 / grid_n as f64, j as f64 / grid_n as f64), radius))
        .collect();
    let top = refined.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    refined.retain(|r| r.1 >= top - TIE_TOL * top.abs());
    refined.sort_by(|a, b| (a.0.mu_r(), a.0.mu_g()).partial_cmp(&(b.0.mu_r(), b.0.mu_g())).unwrap());
    let mut ties: Vec<StrategyProfile> = Vec::new();
    for (p, _) in &refined {
        if !ties.iter().any(|t| t.distance(p) < 1e-6) {
            ties.push(*p);
        }
    }
    let profile = ties[0];
    Ok(FirstBest { profile, welfare: welfare(model, &profile)?, kind: EquilibriumKind::of(&profile), ties })
}

/// Cyclic coordinate ascent inside a box of half-width `radius`, comparing
/// golden-section interior maxima with the box end points.
fn refine(model: &Model, start: (f64, f64), radius: f64) -> (StrategyProfile, f64) {
    let w = |r: f64, g: f64| welfare(model, &StrategyProfile::new(r, g)).unwrap_or(f64::NEG_INFINITY);
    let (mut r, mut g) = start;
    let (r0, g0) = start;
    for _ in 0..100 {
        let (pr, pg) = (r, g);
        r = line_max(|x| w(x, g), (r0 - radius).max(0.0), (r0 + radius).min(1.0));
        g = line_max(|x| w(r, x), (g0 - radius).max(0.0), (g0 + radius).min(1.0));
        if (r - pr).abs().max((g - pg).abs()) < 1e-10 {
            break;
        }
    }
    (StrategyProfile::new(r, g), w(r, g))
}

fn line_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-11 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(lo, f(lo)), (hi, f(hi)), (mid, f(mid))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |acc, (x, v)| if v > acc.1 { (x, v) } else { acc })
        .0
}

/// Second-best comparison: stabilized symmetric equilibrium versus `(1, μ*)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondBest {
    pub mu_s: f64,
    pub symmetric_roots: Vec<f64>,
    pub multiple_symmetric_roots: bool,
    /// Zero when complete segregation is the laissez-faire outcome.
    pub mu_star: f64,
    pub welfare_integrated: f64,
    pub welfare_segregated: f64,
    pub pi_bg_integrated: f64,
    pub pi_bg_segregated: f64,
    /// `W(μ^S, μ^S) / W(1, μ*) - 1`.
    pub integration_gain: f64,
    /// `Π_B^G(μ^S, μ^S) / Π_B^G(1, μ*) - 1`.
    pub maximin_gain: f64,
}

const SOLVER_TOL: f64 = 1e-12;

pub fn second_best(model: &Model) -> Result<SecondBest> {
    let mu_star = laissez_faire_mu(model, SOLVER_TOL)?;
    let sym = solve_symmetric(model, SOLVER_TOL)?;
    let integrated = StrategyProfile::symmetric(sym.mu_s);
    let segregated = StrategyProfile::new(1.0, mu_star);
    let welfare_integrated = welfare(model, &integrated)?;
    let welfare_segregated = welfare(model, &segregated)?;
    let worst_integrated = model.market_state(&integrated)?.pi_bg;
    let worst_segregated = model.market_state(&segregated)?.pi_bg;
    Ok(SecondBest {
        mu_s: sym.mu_s,
        multiple_symmetric_roots: sym.is_multiple(),
        symmetric_roots: sym.roots,
        mu_star,
        welfare_integrated,
        welfare_segregated,
        pi_bg_integrated: worst_integrated,
        pi_bg_segregated: worst_segregated,
        integration_gain: welfare_integrated / welfare_segregated - 1.0,
        maximin_gain: worst_integrated / worst_segregated - 1.0,
    })
}

pub fn integration_gain(model: &Model) -> Result<f64> {
    Ok(second_best(model)?.integration_gain)
}

pub fn maximin_gain(model: &Model) -> Result<f64> {
    Ok(second_best(model)?.maximin_gain)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WelfareReport {
    pub profile: StrategyProfile,
    pub w_value: f64,
    pub first_best_profile: StrategyProfile,
    pub first_best_kind: EquilibriumKind,
    pub first_best_ties: Vec<StrategyProfile>,
    pub concavity_condition_holds: bool,
    pub integration_gain: f64,
    pub maximin_gain: f64,
}

pub fn welfare_report(model: &Model, profile: &StrategyProfile, grid_n: usize) -> Result<WelfareReport> {
    let fb = first_best(model, grid_n)?;
    let sb = second_best(model)?;
    Ok(WelfareReport {
        profile: *profile,
        w_value: welfare(model, profile)?,
        first_best_profile: fb.profile,
        first_best_kind: fb.kind,
        first_best_ties: fb.ties,
        concavity_condition_holds: concavity_condition(model).holds,
        integration_gain: sb.integration_gain,
        maximin_gain: sb.maximin_gain,
    })
}
