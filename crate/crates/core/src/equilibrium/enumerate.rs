use super::{check_equilibrium, probed_gaps, symmetric_roots, EquilibriumReport, DEFAULT_TOL, EDGE_EPS};
use crate::error::{Error, Result};
use crate::model::{Group, Model, StrategyProfile};
use crate::roots::{find_roots, RootTol};
use rayon::prelude::*;

/// Candidates closer than this (max-norm) are the same equilibrium. Kept
/// small because at high alpha the partial and symmetric equilibria sit
/// within 1e-8 of the (1, 1) corner.
const DEDUP_DIST: f64 = 1e-10;

/// All equilibria found by checking the corners, the four edges, the diagonal
/// and a `grid_n x grid_n` interior sweep for joint sign changes of the gaps.
///
/// Output is sorted by `(μ_R, μ_G)` and does not depend on thread scheduling.
pub fn enumerate_equilibria(model: &Model, grid_n: usize) -> Result<Vec<EquilibriumReport>> {
    if grid_n < 100 {
        return Err(Error::InvalidArgument(format!("grid_n must be at least 100, got {grid_n}")));
    }
    let tol = RootTol { x_tol: 1e-12, f_tol: 1e-12 };
    let mut candidates: Vec<StrategyProfile> = [(1.0, 0.0), (0.0, 1.0), (0.0, 0.0), (1.0, 1.0)]
        .iter()
        .map(|&(r, g)| StrategyProfile::new(r, g))
        .collect();

    // edges: one coordinate fixed, roots of the other group's gap
    for (fixed_group, fixed) in [(Group::Red, 1.0), (Group::Red, 0.0), (Group::Green, 1.0), (Group::Green, 0.0)] {
        let free = fixed_group.other();
        let at = |m: f64| {
            let m = m.clamp(EDGE_EPS, 1.0 - EDGE_EPS);
            StrategyProfile::new(0.0, 0.0).with(fixed_group, fixed).with(free, m)
        };
        let f = |m: f64| {
            let (r, g) = probed_gaps(model, &at(m));
            if free == Group::Red { r } else { g }
        };
        for m in find_roots(f, 0.0, 1.0, 1000, tol) {
            if m > 0.0 && m < 1.0 {
                candidates.push(at(m));
            }
        }
    }

    candidates.extend(symmetric_roots(model, 1e-12).into_iter().map(StrategyProfile::symmetric));
    candidates.extend(interior_sweep(model, grid_n));

    let mut unique: Vec<StrategyProfile> = Vec::new();
    for c in candidates.into_iter().filter(|p| check_equilibrium(model, p, DEFAULT_TOL).satisfied()) {
        if !unique.iter().any(|u| u.distance(&c) < DEDUP_DIST) {
            unique.push(c);
        }
    }
    let mut reports: Vec<EquilibriumReport> =
        unique.into_iter().map(|p| EquilibriumReport::build(model, p, DEFAULT_TOL)).collect();
    reports.sort_by(|a, b| {
        (a.profile.mu_r(), a.profile.mu_g())
            .partial_cmp(&(b.profile.mu_r(), b.profile.mu_g()))
            .expect("finite shares")
    });
    Ok(reports)
}

/// The stable subset of [`enumerate_equilibria`].
pub fn stable_equilibria(model: &Model, grid_n: usize) -> Result<Vec<EquilibriumReport>> {
    Ok(enumerate_equilibria(model, grid_n)?.into_iter().filter(|r| r.is_stable()).collect())
}

/// Interior cells where both gaps change sign, refined by Newton's method.
fn interior_sweep(model: &Model, n: usize) -> Vec<StrategyProfile> {
    let node = |i: usize| (i as f64 / n as f64).clamp(EDGE_EPS, 1.0 - EDGE_EPS);
    let gaps: Vec<Vec<(f64, f64)>> = (0..=n)
        .into_par_iter()
        .map(|i| (0..=n).map(|j| probed_gaps(model, &StrategyProfile::new(node(i), node(j)))).collect())
        .collect();
    let changes = |vals: [f64; 4]| {
        let pos = vals.iter().any(|&v| v > 0.0);
        let neg = vals.iter().any(|&v| v < 0.0);
        (pos && neg) || vals.contains(&0.0)
    };
    let mut found: Vec<StrategyProfile> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let gaps = &gaps;
            (0..n).filter_map(move |j| {
                let corners = [gaps[i][j], gaps[i + 1][j], gaps[i][j + 1], gaps[i + 1][j + 1]];
                if !(changes(corners.map(|g| g.0)) && changes(corners.map(|g| g.1))) {
                    return None;
                }
                let start = ((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64);
                newton(model, start)
            })
        })
        .collect();
    found.sort_by(|a, b| (a.mu_r(), a.mu_g()).partial_cmp(&(b.mu_r(), b.mu_g())).unwrap());
    found
}

fn newton(model: &Model, start: (f64, f64)) -> Option<StrategyProfile> {
    let h = 1e-7;
    let inside = |m: (f64, f64)| m.0 > 0.0 && m.0 < 1.0 && m.1 > 0.0 && m.1 < 1.0;
    let gaps = |m: (f64, f64)| probed_gaps(model, &StrategyProfile::new(m.0, m.1));
    let mut x = start;
    for _ in 0..60 {
        let f = gaps(x);
        if f.0.abs().max(f.1.abs()) < 1e-13 {
            return Some(StrategyProfile::new(x.0, x.1));
        }
        let fr = gaps((x.0 + h, x.1));
        let fg = gaps((x.0, x.1 + h));
        let (a, b) = ((fr.0 - f.0) / h, (fg.0 - f.0) / h);
        let (c, d) = ((fr.1 - f.1) / h, (fg.1 - f.1) / h);
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = ((d * f.0 - b * f.1) / det, (-c * f.0 + a * f.1) / det);
        let next = (x.0 - dx.0, x.1 - dx.1);
        if !inside(next) {
            return None;
        }
        if (next.0 - x.0).abs().max((next.1 - x.1).abs()) < 1e-15 {
            x = next;
            break;
        }
        x = next;
    }
    let f = gaps(x);
    (f.0.abs().max(f.1.abs()) < 1e-10).then(|| StrategyProfile::new(x.0, x.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{EquilibriumKind, Stability};
    use crate::model::ModelParams;

    fn calibrated(alpha: f64) -> Model {
        Model::new(ModelParams::calibrated().with_alpha(alpha).unwrap())
    }

    #[test]
    fn complete_regime_has_two_stable_corners() {
        let eqs = enumerate_equilibria(&calibrated(0.55), 100).unwrap();
        let stable: Vec<_> = eqs.iter().filter(|r| r.is_stable()).collect();
        assert_eq!(stable.len(), 2);
        assert!(stable.iter().all(|r| r.kind == EquilibriumKind::CompleteSegregation));
        assert!(eqs.iter().any(|r| r.kind == EquilibriumKind::SymmetricInterior
            && r.stability == Stability::Unstable));
        assert!(eqs.iter().all(|r| r.kind != EquilibriumKind::Other));
    }

    #[test]
    fn small_grid_is_rejected() {
        assert!(enumerate_equilibria(&calibrated(0.55), 50).is_err());
    }
}
