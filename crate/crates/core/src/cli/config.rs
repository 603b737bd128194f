//! Flat `key = value` run configuration.
//!
//! Lines starting with `#` are comments, except in files written by this tool:
//! there the `# key = value` lines of the leading header are read back, so an
//! output file can be passed to `--config` to reproduce it.

use crate::calibration::{apply_split, calibrate, CalibrationTargets, TieSplit};
use crate::model::{ModelParams, StrategyProfile};
use std::fmt;
use std::str::FromStr;

pub const SIGNATURE: &str = "# netseg";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("format must be csv or json, got {s:?}")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub targets: CalibrationTargets,
    /// Explicit parameters override the calibrated ones.
    pub c0: Option<f64>,
    pub c1_p_kappa: Option<f64>,
    pub c1_lambda: Option<f64>,
    pub theta: Option<f64>,
    pub alpha: f64,
    pub split: TieSplit,
    pub mu_r: f64,
    pub mu_g: f64,
    pub grid: usize,
    pub tol: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_step: f64,
    pub mu_points: usize,
    pub rel_step: f64,
    pub seed: u64,
    pub n: usize,
    pub replications: usize,
    pub burn_in: f64,
    pub horizon: f64,
    pub probes: usize,
    pub stable_only: bool,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            targets: CalibrationTargets::default(),
            c0: None,
            c1_p_kappa: None,
            c1_lambda: None,
            theta: None,
            alpha: 0.5,
            split: TieSplit::default(),
            mu_r: 1.0,
            mu_g: 0.0,
            grid: 200,
            tol: 1e-9,
            alpha_min: 0.5,
            alpha_max: 0.95,
            alpha_step: 0.01,
            mu_points: 101,
            rel_step: 1e-2,
            seed: 1,
            n: 5000,
            replications: 20,
            burn_in: 200.0,
            horizon: 1000.0,
            probes: crate::netmc::DEFAULT_PROBES,
            stable_only: false,
            format: Format::Csv,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("bad value for {key}: {value:?}"))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let t = &mut self.targets;
        match key {
            "informal_share" => t.informal_share = parse(key, value)?,
            "homophily_ratio" => t.homophily_ratio = parse(key, value)?,
            "target_employment" => t.target_employment = parse(key, value)?,
            "target_income" => t.target_income = parse(key, value)?,
            "rho" => t.rho = parse(key, value)?,
            "c0" => self.c0 = Some(parse(key, value)?),
            "c1_p_kappa" => self.c1_p_kappa = Some(parse(key, value)?),
            "c1_lambda" => self.c1_lambda = Some(parse(key, value)?),
            "theta" => self.theta = Some(parse(key, value)?),
            "alpha" => self.alpha = parse(key, value)?,
            "split_c1" => self.split.c1 = parse(key, value)?,
            "split_kappa" => self.split.kappa = parse(key, value)?,
            "mu_r" => self.mu_r = parse(key, value)?,
            "mu_g" => self.mu_g = parse(key, value)?,
            "grid" => self.grid = parse(key, value)?,
            "tol" => self.tol = parse(key, value)?,
            "alpha_min" => self.alpha_min = parse(key, value)?,
            "alpha_max" => self.alpha_max = parse(key, value)?,
            "alpha_step" => self.alpha_step = parse(key, value)?,
            "mu_points" => self.mu_points = parse(key, value)?,
            "rel_step" => self.rel_step = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "n" => self.n = parse(key, value)?,
            "replications" => self.replications = parse(key, value)?,
            "burn_in" => self.burn_in = parse(key, value)?,
            "horizon" => self.horizon = parse(key, value)?,
            "probes" => self.probes = parse(key, value)?,
            "stable_only" => self.stable_only = parse(key, value)?,
            "format" => self.format = value.parse()?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Reads settings from text: a plain config, or the header of an output file.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        if text.trim_start().starts_with('{') {
            return self.apply_json(text);
        }
        let from_output = text.starts_with(SIGNATURE);
        for (no, raw) in text.lines().enumerate() {
            let line = if from_output {
                if no == 0 {
                    continue;
                }
                match raw.strip_prefix('#') {
                    Some(rest) => rest,
                    None => break,
                }
            } else {
                raw.split('#').next().unwrap_or("")
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
            self.set(key.trim(), value.trim()).map_err(|e| format!("line {}: {e}", no + 1))?;
        }
        Ok(())
    }

    fn apply_json(&mut self, text: &str) -> Result<(), String> {
        let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))?;
        let config = doc
            .get("config")
            .and_then(|c| c.as_object())
            .ok_or_else(|| "JSON input needs a \"config\" object".to_string())?;
        for (key, value) in config {
            let value = value.as_str().ok_or_else(|| format!("config value for {key} must be a string"))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    /// Every setting with its resolved value, in a fixed order.
    pub fn entries(&self) -> Result<Vec<(&'static str, String)>, String> {
        let q = self.params()?;
        let t = &self.targets;
        Ok(vec![
            ("informal_share", t.informal_share.to_string()),
            ("homophily_ratio", t.homophily_ratio.to_string()),
            ("target_employment", t.target_employment.to_string()),
            ("target_income", t.target_income.to_string()),
            ("rho", q.rho().to_string()),
            ("c0", q.c0().to_string()),
            ("c1_p_kappa", q.c1_p_kappa().to_string()),
            ("c1_lambda", q.c1_lambda().to_string()),
            ("theta", q.theta().to_string()),
            ("alpha", q.alpha().to_string()),
            ("split_c1", self.split.c1.to_string()),
            ("split_kappa", self.split.kappa.to_string()),
            ("mu_r", self.mu_r.to_string()),
            ("mu_g", self.mu_g.to_string()),
            ("grid", self.grid.to_string()),
            ("tol", self.tol.to_string()),
            ("alpha_min", self.alpha_min.to_string()),
            ("alpha_max", self.alpha_max.to_string()),
            ("alpha_step", self.alpha_step.to_string()),
            ("mu_points", self.mu_points.to_string()),
            ("rel_step", self.rel_step.to_string()),
            ("seed", self.seed.to_string()),
            ("n", self.n.to_string()),
            ("replications", self.replications.to_string()),
            ("burn_in", self.burn_in.to_string()),
            ("horizon", self.horizon.to_string()),
            ("probes", self.probes.to_string()),
            ("stable_only", self.stable_only.to_string()),
            ("format", self.format.to_string()),
        ])
    }

    /// Rate-product parameters: calibrated from the targets, then overridden.
    pub fn params(&self) -> Result<ModelParams, String> {
        let base = calibrate(&self.targets).map_err(|e| e.to_string())?;
        ModelParams::from_products(
            self.c0.unwrap_or(base.c0()),
            self.c1_p_kappa.unwrap_or(base.c1_p_kappa()),
            self.c1_lambda.unwrap_or(base.c1_lambda()),
            self.theta.unwrap_or(base.theta()),
            self.alpha,
            self.targets.rho,
        )
        .map_err(|e| e.to_string())
    }

    pub fn split_params(&self) -> Result<ModelParams, String> {
        apply_split(&self.params()?, &self.split).map_err(|e| e.to_string())
    }

    pub fn profile(&self) -> Result<StrategyProfile, String> {
        if !((0.0..=1.0).contains(&self.mu_r) && (0.0..=1.0).contains(&self.mu_g)) {
            return Err(format!("mu_r and mu_g must lie in [0, 1], got {}, {}", self.mu_r, self.mu_g));
        }
        Ok(StrategyProfile::new(self.mu_r, self.mu_g))
    }

    /// `alpha_min, alpha_min + alpha_step, ...` up to `alpha_max`.
    pub fn alpha_grid(&self) -> Result<Vec<f64>, String> {
        if !(self.alpha_step > 0.0 && self.alpha_min > 0.0 && self.alpha_max < 1.0 && self.alpha_min <= self.alpha_max)
        {
            return Err("need 0 < alpha_min <= alpha_max < 1 and alpha_step > 0".into());
        }
        let steps = ((self.alpha_max - self.alpha_min) / self.alpha_step + 1e-9).floor() as usize;
        Ok((0..=steps).map(|i| self.alpha_min + i as f64 * self.alpha_step).collect())
    }
}
