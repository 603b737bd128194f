//! Occupational segregation through homophilous job-contact networks.
//!
//! The [`model`] module evaluates employment rates, wages and payoffs at a
//! strategy profile. [`equilibrium`] finds and classifies the Nash equilibria
//! of the education choice, [`welfare`] compares them with the planner's
//! optimum, [`calibration`] and [`sensitivity`] map moment targets to
//! parameters, and [`netmc`] checks the reduced form against a simulated
//! finite network.

// `!(x >= 0.0)` style checks are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calibration;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod model;
pub mod netmc;
pub mod roots;
pub mod sensitivity;
pub mod welfare;

pub use error::{Error, Result};
pub use model::{Education, Group, MarketState, Model, ModelParams, StrategyProfile};
