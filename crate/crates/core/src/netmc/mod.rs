//! Finite-population check of the reduced-form employment function: random
//! homophilous graphs and a continuous-time employment process on them.

mod labor;
mod population;

pub use labor::{
    agent_occupancies, agent_steady_state, jensen_gaps, occupancy, simulate_labor, CellResult, LaborSimResult,
    SEPARATION_RATE,
};
pub use population::{generate_population, Agent, Population};

/// Probes per empty cell used by the CLI and the acceptance runs.
pub const DEFAULT_PROBES: usize = 200;
