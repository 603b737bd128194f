use crate::error::{Error, Result};
use crate::model::{Education, Group, ModelParams, StrategyProfile, TieForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Draw offset separating probe rows from real rows in the graph stream.
const PROBE_STREAM: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Agent {
    pub group: Group,
    pub education: Education,
    /// Probes observe the network without being part of it: they link to real
    /// agents but never count as anyone's friend.
    pub probe: bool,
}

/// Agents, their labels, and an undirected friendship graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    n: usize,
    seed: u64,
    agents: Vec<Agent>,
    neighbors: Vec<Vec<u32>>,
}

impl Population {
    /// A population from an explicit edge list over real agents `0..labels.len()`.
    pub fn from_edges(labels: &[(Group, Education)], edges: &[(usize, usize)], seed: u64) -> Result<Self> {
        let n = labels.len();
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::InvalidArgument(format!("bad edge ({i}, {j}) for {n} agents")));
            }
            neighbors[i].push(j as u32);
            neighbors[j].push(i as u32);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        let agents = labels.iter().map(|&(group, education)| Agent { group, education, probe: false }).collect();
        Ok(Population { n, seed, agents, neighbors })
    }

    /// Number of real agents.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    /// Real agents first, then probes.
    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[i]
    }

    /// Undirected edges between real agents, each listed once with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors[i].iter().map(move |&j| (i, j as usize)).filter(|&(i, j)| i < j)
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Number of real same-education friends.
    pub fn same_education_friends(&self, i: usize) -> usize {
        let ed = self.agents[i].education;
        self.neighbors[i]
            .iter()
            .filter(|&&j| (j as usize) < self.n && self.agents[j as usize].education == ed)
            .count()
    }

    /// Finite-population friend measure: same-education friend count over `n`.
    pub fn friend_measure(&self, i: usize) -> f64 {
        self.same_education_friends(i) as f64 / self.n as f64
    }
}

fn labels(n: usize, profile: &StrategyProfile) -> Vec<(Group, Education)> {
    let half = n / 2;
    let mut out = Vec::with_capacity(n);
    for group in [Group::Red, Group::Green] {
        let a = (profile.mu(group) * half as f64).round() as usize;
        out.extend((0..half).map(|k| (group, if k < a { Education::A } else { Education::B })));
    }
    out
}

fn tie(params: &ModelParams, a: (Group, Education), b: (Group, Education)) -> f64 {
    params.tie_probability(a.0 == b.0, a.1 == b.1)
}

/// Samples a homophilous random graph: every pair of real agents is linked
/// independently with its tie probability.
///
/// For each (group, education) cell with no real agents, `probes_per_cell`
/// probe agents are added and linked to real agents with the same rule.
pub fn generate_population(
    n: usize,
    profile: &StrategyProfile,
    params: &ModelParams,
    seed: u64,
    probes_per_cell: usize,
) -> Result<Population> {
    if params.form() != TieForm::Probabilities {
        return Err(Error::InvalidSplit("tie probabilities are needed, not rate products".into()));
    }
    let total = params.p() + params.kappa() + params.lambda();
    if total > 1.0 + 1e-12 {
        return Err(Error::InvalidSplit(format!("p + kappa + lambda = {total} exceeds 1")));
    }
    if n < 100 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be even and at least 100, got {n}")));
    }
    let real = labels(n, profile);
    let mut probes = Vec::new();
    for group in [Group::Red, Group::Green] {
        for education in [Education::A, Education::B] {
            if !real.contains(&(group, education)) {
                probes.extend(std::iter::repeat_n((group, education), probes_per_cell));
            }
        }
    }

    // row i draws pairs (i, j > i) from its own stream
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            (i + 1..n).filter(|&j| rng.random::<f64>() < tie(params, real[i], real[j])).map(|j| j as u32).collect()
        })
        .collect();
    let probe_rows: Vec<Vec<u32>> = (0..probes.len())
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(PROBE_STREAM + k as u64);
            (0..n).filter(|&j| rng.random::<f64>() < tie(params, probes[k], real[j])).map(|j| j as u32).collect()
        })
        .collect();

    let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            neighbors[i].push(j);
            neighbors[j as usize].push(i as u32);
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    neighbors.extend(probe_rows);
    let agents = real
        .iter()
        .map(|&(group, education)| Agent { group, education, probe: false })
        .chain(probes.iter().map(|&(group, education)| Agent { group, education, probe: true }))
        .collect();
    Ok(Population { n, seed, agents, neighbors })
}
