use super::population::Population;
use crate::error::{Error, Result};
use crate::model::{Education, Group, ModelParams, RateEmployment, TieForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

/// Mixed into the seed so labor draws never share a stream with the graph.
const LABOR_DOMAIN: u64 = 0x6c61_626f_725f_6d63;

/// Employed workers lose their job at this rate.
pub const SEPARATION_RATE: f64 = 1.0;

/// Employment statistics of one (group, education) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellResult {
    pub group: Group,
    pub education: Education,
    pub agents: usize,
    /// Cell made of probe agents because no real agent sits in it.
    pub probe: bool,
    /// Time-averaged employment, mean over replications.
    pub mean: f64,
    /// 95% confidence half-width across replications.
    pub half_width: f64,
    pub mean_x: f64,
    /// `s` at the cell's mean friend measure.
    pub s_at_mean_x: f64,
    /// Mean of the agents' exact steady-state employment given the graph.
    pub steady_state_mean: f64,
}

impl CellResult {
    /// `mean_i s(x_i) - s(mean_i x_i)`, the curvature bias of the reduced form.
    pub fn jensen_gap(&self) -> f64 {
        self.steady_state_mean - self.s_at_mean_x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaborSimResult {
    pub n: usize,
    pub replications: usize,
    pub burn_in: f64,
    pub horizon: f64,
    pub cells: Vec<CellResult>,
}

impl LaborSimResult {
    pub fn cell(&self, group: Group, education: Education) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.group == group && c.education == education)
    }
}

fn rate_model(params: &ModelParams) -> Result<RateEmployment> {
    if params.form() != TieForm::Probabilities {
        return Err(Error::InvalidSplit("tie probabilities are needed, not rate products".into()));
    }
    Ok(params.employment())
}

/// Exact long-run employment of agent `i`: `c(x_i) / (1 + c(x_i))`.
pub fn agent_steady_state(pop: &Population, params: &ModelParams, i: usize) -> Result<f64> {
    let c = rate_model(params)?.arrival_rate(pop.friend_measure(i));
    Ok(c / (SEPARATION_RATE + c))
}

fn exponential<R: Rng>(rng: &mut R, rate: f64) -> f64 {
    -(1.0 - rng.random::<f64>()).ln() / rate
}

/// Share of `[burn_in, burn_in + horizon]` spent employed by a two-state chain
/// that starts employed at time zero.
pub fn occupancy<R: Rng>(rng: &mut R, hire_rate: f64, burn_in: f64, horizon: f64) -> f64 {
    let end = burn_in + horizon;
    let (mut t, mut employed, mut time_employed) = (0.0, true, 0.0);
    while t < end {
        let rate = if employed { SEPARATION_RATE } else { hire_rate };
        let next = t + exponential(rng, rate);
        if employed {
            time_employed += (next.min(end) - t.max(burn_in)).max(0.0);
        }
        t = next;
        employed = !employed;
    }
    time_employed / horizon
}

/// Per-agent time-averaged employment in one replication, for every agent
/// including probes.
pub fn agent_occupancies(
    pop: &Population,
    params: &ModelParams,
    burn_in: f64,
    horizon: f64,
    replication: u64,
) -> Result<Vec<f64>> {
    let s = rate_model(params)?;
    check_horizons(burn_in, horizon)?;
    let seed = pop.seed() ^ LABOR_DOMAIN;
    Ok((0..pop.agents().len())
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((replication << 32) | i as u64);
            occupancy(&mut rng, s.arrival_rate(pop.friend_measure(i)), burn_in, horizon)
        })
        .collect())
}

fn check_horizons(burn_in: f64, horizon: f64) -> Result<()> {
    if !(burn_in >= 0.0 && horizon > 0.0 && burn_in.is_finite() && horizon.is_finite()) {
        return Err(Error::InvalidArgument(format!("need burn_in >= 0 and horizon > 0, got {burn_in}, {horizon}")));
    }
    Ok(())
}

/// Simulates the labor process on the fixed graph `replications` times and
/// summarizes each populated cell. Replication `r` of agent `i` uses its own
/// random stream, so results do not depend on the thread count.
pub fn simulate_labor(
    pop: &Population,
    params: &ModelParams,
    burn_in: f64,
    horizon: f64,
    replications: usize,
) -> Result<LaborSimResult> {
    let s = rate_model(params)?;
    check_horizons(burn_in, horizon)?;
    if replications == 0 {
        return Err(Error::InvalidArgument("replications must be positive".into()));
    }
    let runs: Vec<Vec<f64>> = (0..replications as u64)
        .map(|r| agent_occupancies(pop, params, burn_in, horizon, r))
        .collect::<Result<_>>()?;
    let t_quantile = if replications > 1 {
        StudentsT::new(0.0, 1.0, (replications - 1) as f64)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .inverse_cdf(0.975)
    } else {
        f64::INFINITY
    };

    let mut cells = Vec::new();
    for group in [Group::Red, Group::Green] {
        for education in [Education::A, Education::B] {
            let members: Vec<usize> = (0..pop.agents().len())
                .filter(|&i| {
                    let a = pop.agents()[i];
                    a.group == group && a.education == education
                })
                .collect();
            if members.is_empty() {
                continue;
            }
            let k = members.len() as f64;
            let per_rep: Vec<f64> = runs.iter().map(|occ| members.iter().map(|&i| occ[i]).sum::<f64>() / k).collect();
            let mean = per_rep.iter().sum::<f64>() / replications as f64;
            let half_width = if replications > 1 {
                let var = per_rep.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (replications - 1) as f64;
                t_quantile * (var / replications as f64).sqrt()
            } else {
                f64::INFINITY
            };
            let xs: Vec<f64> = members.iter().map(|&i| pop.friend_measure(i)).collect();
            let mean_x = xs.iter().sum::<f64>() / k;
            let steady = |x: f64| {
                let c = s.arrival_rate(x);
                c / (SEPARATION_RATE + c)
            };
            cells.push(CellResult {
                group,
                education,
                agents: members.len(),
                probe: pop.agents()[members[0]].probe,
                mean,
                half_width,
                mean_x,
                s_at_mean_x: steady(mean_x),
                steady_state_mean: xs.iter().map(|&x| steady(x)).sum::<f64>() / k,
            });
        }
    }
    Ok(LaborSimResult { n: pop.n(), replications, burn_in, horizon, cells })
}

/// Jensen gap of every cell, in cell order.
pub fn jensen_gaps(result: &LaborSimResult) -> Vec<(Group, Education, f64)> {
    result.cells.iter().map(|c| (c.group, c.education, c.jensen_gap())).collect()
}
