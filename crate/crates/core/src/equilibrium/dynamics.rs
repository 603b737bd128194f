use super::probed_gaps;
use crate::error::{Error, Result};
use crate::model::{Model, StrategyProfile};
use serde::Serialize;

/// Settings for integrating `dμ_X/dt = k ΔΠ^X(μ)` on the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicsOptions {
    /// Adjustment speed `k`.
    pub k: f64,
    pub step: f64,
    pub horizon: f64,
    /// Record every n-th step in the trace.
    pub record_every: usize,
    /// Converged once the projected velocity is below this.
    pub velocity_tol: f64,
}

impl Default for DynamicsOptions {
    fn default() -> Self {
        DynamicsOptions { k: 1.0, step: 0.1, horizon: 5000.0, record_every: 100, velocity_tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DynamicsTrace {
    pub samples: Vec<(f64, StrategyProfile)>,
    pub terminal: StrategyProfile,
    pub converged: bool,
    pub steps: usize,
}

/// Velocity with components that would leave the square zeroed.
fn projected_velocity(model: &Model, mu: (f64, f64), k: f64) -> (f64, f64) {
    let p = StrategyProfile::new(mu.0, mu.1);
    let (gr, gg) = probed_gaps(model, &p);
    let project = |m: f64, v: f64| {
        if (m >= 1.0 && v > 0.0) || (m <= 0.0 && v < 0.0) {
            0.0
        } else {
            v
        }
    };
    (project(p.mu_r(), k * gr), project(p.mu_g(), k * gg))
}

/// Fixed-step fourth-order Runge-Kutta integration of the projected flow.
///
/// Never fails on non-convergence; check [`DynamicsTrace::converged`].
pub fn simulate_dynamics(
    model: &Model,
    start: StrategyProfile,
    opts: &DynamicsOptions,
) -> Result<DynamicsTrace> {
    if !(opts.k > 0.0 && opts.step > 0.0 && opts.horizon > 0.0) {
        return Err(Error::InvalidArgument("k, step and horizon must be positive".into()));
    }
    let dt = opts.step;
    let max_steps = (opts.horizon / dt).ceil() as usize;
    let every = opts.record_every.max(1);
    let clamp = |m: (f64, f64)| (m.0.clamp(0.0, 1.0), m.1.clamp(0.0, 1.0));
    let mut mu = (start.mu_r(), start.mu_g());
    let mut samples = vec![(0.0, start)];
    let mut converged = false;
    let mut steps = 0;

    let speed = |v: (f64, f64)| v.0.abs().max(v.1.abs());
    if speed(projected_velocity(model, mu, opts.k)) < opts.velocity_tol {
        converged = true;
    }
    while !converged && steps < max_steps {
        let f = |m: (f64, f64)| projected_velocity(model, clamp(m), opts.k);
        let k1 = f(mu);
        let k2 = f((mu.0 + 0.5 * dt * k1.0, mu.1 + 0.5 * dt * k1.1));
        let k3 = f((mu.0 + 0.5 * dt * k2.0, mu.1 + 0.5 * dt * k2.1));
        let k4 = f((mu.0 + dt * k3.0, mu.1 + dt * k3.1));
        mu = clamp((
            mu.0 + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            mu.1 + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        ));
        steps += 1;
        converged = speed(projected_velocity(model, mu, opts.k)) < opts.velocity_tol;
        if steps % every == 0 || converged || steps == max_steps {
            samples.push((steps as f64 * dt, StrategyProfile::new(mu.0, mu.1)));
        }
    }
    Ok(DynamicsTrace { samples, terminal: StrategyProfile::new(mu.0, mu.1), converged, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;

    fn calibrated(alpha: f64) -> Model {
        Model::new(ModelParams::calibrated().with_alpha(alpha).unwrap())
    }

    #[test]
    fn reds_in_a_basin_reaches_complete_segregation() {
        let m = calibrated(0.5);
        let t = simulate_dynamics(&m, StrategyProfile::new(0.6, 0.4), &DynamicsOptions::default()).unwrap();
        assert!(t.converged);
        assert_eq!(t.terminal, StrategyProfile::new(1.0, 0.0));
        assert!(t.samples.iter().all(|(_, p)| (0.0..=1.0).contains(&p.mu_r()) && (0.0..=1.0).contains(&p.mu_g())));
    }

    #[test]
    fn symmetric_rest_point_stays_put() {
        let m = calibrated(0.5);
        let t = simulate_dynamics(&m, StrategyProfile::symmetric(0.5), &DynamicsOptions::default()).unwrap();
        assert!(t.converged);
        assert_eq!(t.steps, 0);
        assert_eq!(t.terminal, StrategyProfile::symmetric(0.5));
    }

    #[test]
    fn rejects_nonpositive_speed() {
        let m = calibrated(0.5);
        let opts = DynamicsOptions { k: 0.0, ..Default::default() };
        assert!(simulate_dynamics(&m, StrategyProfile::symmetric(0.5), &opts).is_err());
    }
}
