use super::{check_equilibrium, probed_gaps, Stability};
use crate::model::{Group, Model, StrategyProfile};
use serde::Serialize;

pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Minimum payoff-gap magnitude for a boundary coordinate to count as strictly held.
pub const BOUNDARY_STRICTNESS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityReport {
    pub stability: Stability,
    pub jacobian: [[f64; 2]; 2],
    pub det: f64,
}

/// `D ΔΠ` by finite differences with step `h`: central inside the square,
/// one-sided on its boundary.
pub fn jacobian(model: &Model, profile: &StrategyProfile, h: f64) -> [[f64; 2]; 2] {
    let mut jac = [[0.0; 2]; 2];
    for (col, group) in [Group::Red, Group::Green].into_iter().enumerate() {
        let mu = profile.mu(group);
        let (lo, hi) = if mu - h >= 0.0 && mu + h <= 1.0 {
            (mu - h, mu + h)
        } else if mu + h <= 1.0 {
            (mu, mu + h)
        } else {
            (mu - h, mu)
        };
        let up = probed_gaps(model, &profile.with(group, hi));
        let dn = probed_gaps(model, &profile.with(group, lo));
        jac[0][col] = (up.0 - dn.0) / (hi - lo);
        jac[1][col] = (up.1 - dn.1) / (hi - lo);
    }
    jac
}

/// Stability under the adjustment flow `dμ_X/dt = k ΔΠ^X`.
///
/// Interior coordinates need a negative own-slope, and a negative-definite
/// pattern (`det > 0`) when both gaps vanish. Boundary coordinates need a
/// strictly signed gap pushing outward; a gap within `tol` of zero with an
/// inward-restoring slope gives [`Stability::BoundaryStable`]. The off-diagonal
/// Jacobian terms are not used for edge equilibria.
pub fn stability(model: &Model, profile: &StrategyProfile, h: f64, tol: f64) -> StabilityReport {
    let jac = jacobian(model, profile, h);
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    let report = |stability| StabilityReport { stability, jacobian: jac, det };

    if !check_equilibrium(model, profile, tol).satisfied() {
        return report(Stability::Unstable);
    }
    let (gr, gg) = probed_gaps(model, profile);
    let mut weak = false;
    let mut zero_gaps = 0;
    for (i, group) in [Group::Red, Group::Green].into_iter().enumerate() {
        let mu = profile.mu(group);
        let gap = if i == 0 { gr } else { gg };
        let own_slope = jac[i][i];
        let outward = if mu == 1.0 {
            Some(gap > BOUNDARY_STRICTNESS)
        } else if mu == 0.0 {
            Some(gap < -BOUNDARY_STRICTNESS)
        } else {
            None
        };
        match outward {
            Some(true) => {}
            Some(false) => {
                if own_slope >= 0.0 {
                    return report(Stability::Unstable);
                }
                weak = true;
                zero_gaps += 1;
            }
            None => {
                if own_slope >= 0.0 {
                    return report(Stability::Unstable);
                }
                zero_gaps += 1;
            }
        }
    }
    if zero_gaps == 2 && det <= 0.0 {
        return report(Stability::Unstable);
    }
    report(if weak { Stability::BoundaryStable } else { Stability::Stable })
}
