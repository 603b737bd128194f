use thiserror::Error;

/// Errors raised by the model, its solvers and the Monte Carlo layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// A labor supply is zero, so the marginal product of the other factor is unbounded.
    #[error("singular labor supply (L_A = {l_a}, L_B = {l_b})")]
    SingularSupply { l_a: f64, l_b: f64 },

    /// Occupation A must be the weakly better job at equal supplies.
    #[error("occupation B pays more at complete segregation (w_A = {w_a}, w_B = {w_b}); relabel occupations")]
    RelabelRequired { w_a: f64, w_b: f64 },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("invalid tie-probability split: {0}")]
    InvalidSplit(String),

    #[error("infeasible calibration target: {0}")]
    InfeasibleTarget(String),

    #[error("welfare formulations disagree: {by_payoffs} vs {by_supplies}")]
    InconsistentWelfare { by_payoffs: f64, by_supplies: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
