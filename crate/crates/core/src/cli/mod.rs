//! Command-line front end: configuration, subcommands and file output.

mod commands;
pub mod config;
pub mod output;

use crate::error::Error;
use clap::{Parser, Subcommand};
use config::{Format, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("solver failure: {0}")]
    Solver(Error),
    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<Error> for CliError {
    /// Errors caused by input values are configuration errors.
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::InvalidSplit(_) | Error::InfeasibleTarget(_) | Error::InvalidArgument(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Solver(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

const CONFIG_HELP: &str = "\
Config files hold one `key = value` per line; `#` starts a comment and
unknown keys are rejected. Any file written by netseg is also a valid
config: its header reproduces the run. Keys: informal_share,
homophily_ratio, target_employment, target_income, rho, c0, c1_p_kappa,
c1_lambda, theta, alpha, split_c1, split_kappa, mu_r, mu_g, grid, tol,
alpha_min, alpha_max, alpha_step, mu_points, rel_step, seed, n,
replications, burn_in, horizon, probes, stable_only, format.

Exit codes: 0 ok, 2 config error, 3 solver failure, 4 I/O error.
Set RAYON_NUM_THREADS to limit worker threads.";

#[derive(Debug, Parser)]
#[command(name = "netseg", version, about = "Equilibria, welfare and Monte Carlo checks for network-driven occupational segregation", after_help = CONFIG_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Configuration file (`key = value` lines, or a previous output file).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// All equilibria at one alpha.
    #[command(after_help = "equilibria.csv: mu_r, mu_g, kind, satisfies_conditions, stability, \
j_rr, j_rg, j_gr, j_gg (dGap_row/dmu_col), det_jacobian, then the market state \
s_ar, s_ag, s_br, s_bg, l_a, l_b, w_a, w_b, pi_ar, pi_ag, pi_br, pi_bg, d_pi_r, d_pi_g \
(NaN at the singular corners). Set stable_only = true to drop unstable rows.")]
    Equilibria,
    /// Figure data over the alpha grid.
    #[command(after_help = "fig1.csv: alpha, mu_g, d_pi_g (Green gap along mu_r = 1)\n\
fig2.csv: alpha, regime, mu_star, w_a, w_b, wage_gap at the laissez-faire equilibrium\n\
fig3.csv: alpha, mu_star, s_ar, s_ag, s_br, s_bg at the same point\n\
fig4.csv: alpha, mu_s, mu_star, welfare_integrated, welfare_segregated, integration_gain, multiple_roots\n\
fig5.csv: alpha, pi_bg_integrated, pi_bg_segregated, maximin_gain")]
    Sweep,
    /// Welfare at (mu_r, mu_g), the first-best and the second-best gains.
    #[command(after_help = "welfare.csv: mu_r, mu_g, welfare, first_best_mu_r, first_best_mu_g, \
first_best_kind, first_best_ties (r:g pairs separated by ;), concavity_condition_holds, \
integration_gain, maximin_gain")]
    Welfare,
    /// Parameters implied by the calibration targets, and alpha-hat.
    #[command(after_help = "calibration.csv: parameter, value")]
    Calibrate,
    /// Elasticities of alpha-hat and of the maximal wage gap.
    #[command(after_help = "sensitivity.csv: parameter, value, alpha_hat, wage_gap (central), \
alpha_hat_forward, wage_gap_forward (one-sided), disagree")]
    Sensitivity,
    /// Monte Carlo labor process on a sampled network.
    #[command(after_help = "mc.csv: group, education, agents, probe, mean, half_width (95%), \
mean_x, s_at_mean_x, steady_state_mean, jensen_gap, reduced_form")]
    Mc,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Equilibria => "equilibria",
            Command::Sweep => "sweep",
            Command::Welfare => "welfare",
            Command::Calibrate => "calibrate",
            Command::Sensitivity => "sensitivity",
            Command::Mc => "mc",
        }
    }
}

/// Defaults, then the config file, then command-line flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
        cfg.apply_text(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(alpha) = cli.alpha {
        cfg.alpha = alpha;
    }
    if let Some(grid) = cli.grid {
        cfg.grid = grid;
    }
    if let Some(format) = &cli.format {
        cfg.format = format.parse::<Format>().map_err(CliError::Config)?;
    }
    Ok(cfg)
}

/// Runs one command and returns the files written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let cfg = resolve_config(cli)?;
    let entries = cfg.entries().map_err(CliError::Config)?;
    let tables = match cli.command {
        Command::Equilibria => commands::equilibria(&cfg)?,
        Command::Sweep => commands::sweep(&cfg)?,
        Command::Welfare => commands::welfare(&cfg)?,
        Command::Calibrate => commands::calibrate(&cfg)?,
        Command::Sensitivity => commands::sensitivity(&cfg)?,
        Command::Mc => commands::mc(&cfg)?,
    };
    output::write_tables(&cli.out, &tables, cli.command.name(), &entries, cfg.format)
        .map_err(|source| CliError::Io { path: cli.out.clone(), source })
}

pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("netseg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
