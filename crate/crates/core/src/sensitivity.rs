//! Elasticities of `α̂` and of the maximal wage gap `G(1,0) = 2 - 1/α̂`.

use crate::calibration::find_alpha_hat;
use crate::error::{Error, Result};
use crate::model::ModelParams;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_REL_STEP: f64 = 1e-2;

/// Central and one-sided estimates disagree when they differ by more than
/// `max(10% relative, 0.02 absolute)`.
const DISAGREEMENT_REL: f64 = 0.10;
const DISAGREEMENT_ABS: f64 = 0.02;

const ALPHA_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Parameter {
    S0,
    C1PKappa,
    C1Lambda,
    Rho,
    Theta,
}

impl Parameter {
    pub const ALL: [Parameter; 5] =
        [Parameter::S0, Parameter::C1PKappa, Parameter::C1Lambda, Parameter::Rho, Parameter::Theta];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::S0 => "s0",
            Parameter::C1PKappa => "c1_p_kappa",
            Parameter::C1Lambda => "c1_lambda",
            Parameter::Rho => "rho",
            Parameter::Theta => "theta",
        }
    }

    pub fn value(self, q: &ModelParams) -> f64 {
        match self {
            Parameter::S0 => q.s0(),
            Parameter::C1PKappa => q.c1_p_kappa(),
            Parameter::C1Lambda => q.c1_lambda(),
            Parameter::Rho => q.rho(),
            Parameter::Theta => q.theta(),
        }
    }

    /// `q` with this parameter multiplied by `factor`. Scaling `s0` moves `c0`
    /// and leaves the `c1` products alone.
    pub fn scaled(self, q: &ModelParams, factor: f64) -> Result<ModelParams> {
        let v = self.value(q) * factor;
        match self {
            Parameter::S0 => {
                if !(v > 0.0 && v < 1.0) {
                    return Err(Error::Domain { what: "s0", value: v });
                }
                q.with_c0(v / (1.0 - v))
            }
            Parameter::C1PKappa => q.with_c1_p_kappa(v),
            Parameter::C1Lambda => q.with_c1_lambda(v),
            Parameter::Rho => q.with_rho(v),
            Parameter::Theta => q.with_theta(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElasticityRow {
    pub parameter: Parameter,
    pub alpha_hat: f64,
    pub wage_gap: f64,
    pub alpha_hat_forward: f64,
    pub wage_gap_forward: f64,
    /// Set when central and forward estimates disagree beyond tolerance.
    pub disagree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElasticityTable {
    pub rel_step: f64,
    pub base_alpha_hat: f64,
    pub base_wage_gap: f64,
    pub rows: Vec<ElasticityRow>,
}

impl ElasticityTable {
    pub fn row(&self, parameter: Parameter) -> Option<&ElasticityRow> {
        self.rows.iter().find(|r| r.parameter == parameter)
    }
}

fn wage_gap(alpha_hat: f64) -> f64 {
    2.0 - 1.0 / alpha_hat
}

fn differs(a: f64, b: f64) -> bool {
    (a - b).abs() > (DISAGREEMENT_REL * a.abs().max(b.abs())).max(DISAGREEMENT_ABS)
}

pub fn elasticities(params: &ModelParams, rel_step: f64) -> Result<ElasticityTable> {
    if !(1e-4..=1e-1).contains(&rel_step) {
        return Err(Error::InvalidArgument(format!("rel_step must lie in [1e-4, 0.1], got {rel_step}")));
    }
    let a0 = find_alpha_hat(params, ALPHA_TOL)?;
    let g0 = wage_gap(a0);
    let h = rel_step;
    let rows = Parameter::ALL
        .par_iter()
        .map(|&parameter| {
            let up = find_alpha_hat(&parameter.scaled(params, 1.0 + h)?, ALPHA_TOL)?;
            let dn = find_alpha_hat(&parameter.scaled(params, 1.0 - h)?, ALPHA_TOL)?;
            let alpha_hat = (up - dn) / a0 / (2.0 * h);
            let gap = (wage_gap(up) - wage_gap(dn)) / g0 / (2.0 * h);
            let alpha_hat_forward = (up - a0) / a0 / h;
            let wage_gap_forward = (wage_gap(up) - g0) / g0 / h;
            Ok(ElasticityRow {
                parameter,
                alpha_hat,
                wage_gap: gap,
                alpha_hat_forward,
                wage_gap_forward,
                disagree: differs(alpha_hat, alpha_hat_forward) || differs(gap, wage_gap_forward),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ElasticityTable { rel_step, base_alpha_hat: a0, base_wage_gap: g0, rows })
}
