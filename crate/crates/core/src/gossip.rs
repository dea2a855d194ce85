//! Distributed equilibrium seeking under partial-decision information.
//!
//! Every player keeps a full-length estimate of all actions. When a
//! communication channel (an edge of the follower graph, used in both
//! directions) is activated, its two endpoints average their estimates of
//! everybody except themselves and then each takes a projected step along
//! its own cost gradient, evaluated at its own estimate vector.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::max_abs_diff;
use crate::solvers::ne_residual;
use crate::{ActionProfile, Error, GameInstance, Result};

/// Diminishing step `α(k) = a / (b + k)^τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub a: f64,
    pub b: f64,
    pub tau: f64,
}

impl Schedule {
    /// `τ ∈ (0.5, 1]` keeps the steps non-summable but square-summable.
    pub fn new(a: f64, b: f64, tau: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::param("step_a", "must be > 0"));
        }
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::param("step_b", "must be >= 0"));
        }
        if !(tau > 0.5 && tau <= 1.0) {
            return Err(Error::param("step_tau", "must lie in (0.5, 1]"));
        }
        Ok(Schedule { a, b, tau })
    }

    pub fn step(&self, k: u64) -> f64 {
        self.a / libm::pow(self.b + k as f64, self.tau)
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            a: 1.0,
            b: 10.0,
            tau: 0.7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// One uniformly chosen channel per iteration, local step counters.
    #[default]
    Asynchronous,
    /// All players average with Metropolis weights each round, global counter.
    Synchronous,
}

/// What a player does after averaging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocalStep {
    #[default]
    ProjectedGradient,
    /// Keep the own action fixed. Isolates the averaging dynamics.
    Hold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GossipConfig {
    pub mode: Mode,
    pub schedule: Schedule,
    pub max_iterations: u64,
    pub record_every: u64,
    pub seed: u64,
    /// Profile to measure `dist_to_reference` against, usually the oracle equilibrium.
    pub reference: Option<Vec<f64>>,
    pub local_step: LocalStep,
}

impl Default for GossipConfig {
    fn default() -> Self {
        GossipConfig {
            mode: Mode::Asynchronous,
            schedule: Schedule::default(),
            max_iterations: 200_000,
            record_every: 1_000,
            seed: 42,
            reference: None,
            local_step: LocalStep::ProjectedGradient,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerState {
    pub id: usize,
    pub own_action: f64,
    /// Local copy of every action; `estimates[id] == own_action` at all times.
    pub estimates: Vec<f64>,
    /// Local clock `k_i`.
    pub update_count: u64,
}

impl PlayerState {
    fn local_step(&mut self, game: &GameInstance, config: &GossipConfig) {
        self.update_count += 1;
        if config.local_step == LocalStep::ProjectedGradient {
            let g = game.own_gradient(self.id, &self.estimates);
            let alpha = config.schedule.step(self.update_count);
            self.own_action = game.clamp_action(self.own_action - alpha * g);
        }
        self.estimates[self.id] = self.own_action;
    }
}

pub fn init_states(x0: &ActionProfile) -> Vec<PlayerState> {
    (0..x0.len())
        .map(|id| PlayerState {
            id,
            own_action: x0[id],
            estimates: x0.as_slice().to_vec(),
            update_count: 0,
        })
        .collect()
}

/// One activation of the channel between `i` and `j`.
pub fn gossip_step(
    states: &mut [PlayerState],
    (i, j): (usize, usize),
    game: &GameInstance,
    config: &GossipConfig,
) -> Result<()> {
    let g = game.follow_graph();
    if i >= states.len() || j >= states.len() || !(g.contains(i, j) || g.contains(j, i)) {
        return Err(Error::NotAnEdge(i, j));
    }
    let (a, b) = pair_mut(states, i, j);
    for m in 0..a.estimates.len() {
        let mean = 0.5 * (a.estimates[m] + b.estimates[m]);
        if m != i {
            a.estimates[m] = mean;
        }
        if m != j {
            b.estimates[m] = mean;
        }
    }
    a.local_step(game, config);
    b.local_step(game, config);
    Ok(())
}

fn pair_mut<T>(xs: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = xs.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = xs.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}

/// Metropolis–Hastings weights on the undirected support of the follower graph.
///
/// Row `i` lists `(j, w_ij)` for every neighbour plus `(i, w_ii)`; rows sum to 1
/// and the matrix is symmetric.
pub fn metropolis_weights(game: &GameInstance) -> Vec<Vec<(usize, f64)>> {
    let adj = game.follow_graph().undirected_adjacency();
    adj.iter()
        .enumerate()
        .map(|(i, nbrs)| {
            let mut row: Vec<(usize, f64)> = nbrs
                .iter()
                .map(|&j| (j, 1.0 / (1.0 + nbrs.len().max(adj[j].len()) as f64)))
                .collect();
            let off: f64 = row.iter().map(|&(_, w)| w).sum();
            row.push((i, 1.0 - off));
            row
        })
        .collect()
}

/// Every player mixes its estimates of the others with its neighbours', then steps.
pub fn synchronous_round(
    states: &mut [PlayerState],
    weights: &[Vec<(usize, f64)>],
    game: &GameInstance,
    config: &GossipConfig,
) {
    let n = states.len();
    let snapshot: Vec<f64> = states.iter().flat_map(|s| s.estimates.iter().copied()).collect();
    for (state, row) in states.iter_mut().zip(weights) {
        for m in 0..n {
            if m != state.id {
                // Weights sum to 1 only up to rounding.
                let mixed: f64 = row.iter().map(|&(j, w)| w * snapshot[j * n + m]).sum();
                state.estimates[m] = game.clamp_action(mixed);
            }
        }
        state.local_step(game, config);
    }
}

/// `max_{i,m} |estimates_i[m] − own_action_m|`.
pub fn consensus_error(states: &[PlayerState]) -> f64 {
    states
        .iter()
        .flat_map(|s| s.estimates.iter().zip(states).map(|(e, owner)| (e - owner.own_action).abs()))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub iteration: u64,
    pub actions: Vec<f64>,
    pub consensus_error: f64,
    pub residual: f64,
    pub dist_to_reference: Option<f64>,
    /// Smallest and largest estimate entry held by any player.
    pub estimate_range: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub records: Vec<Record>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Record> {
        self.records.last()
    }
}

fn snapshot(iteration: u64, states: &[PlayerState], game: &GameInstance, reference: Option<&[f64]>) -> Record {
    let actions: Vec<f64> = states.iter().map(|s| s.own_action).collect();
    let estimate_range = states
        .iter()
        .flat_map(|s| s.estimates.iter().copied())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Record {
        iteration,
        consensus_error: consensus_error(states),
        residual: ne_residual(game, &actions),
        dist_to_reference: reference.map(|r| max_abs_diff(&actions, r)),
        estimate_range,
        actions,
    }
}

/// Runs the scheme for `max_iterations` iterations (channel activations or
/// synchronous rounds), recording iteration 0, every `record_every`-th
/// iteration, and the final one.
pub fn run(game: &GameInstance, x0: &ActionProfile, config: &GossipConfig) -> Result<Trajectory> {
    let n = game.player_count();
    game.check_profile(x0)?;
    if config.record_every == 0 {
        return Err(Error::param("record_every", "must be >= 1"));
    }
    Schedule::new(config.schedule.a, config.schedule.b, config.schedule.tau)?;
    if let Some(r) = &config.reference {
        if r.len() != n {
            return Err(Error::ProfileLength {
                got: r.len(),
                expected: n,
            });
        }
    }
    let reference = config.reference.as_deref();

    let mut states = init_states(x0);
    let mut trajectory = Trajectory::default();
    trajectory.records.push(snapshot(0, &states, game, reference));

    let channels = game.follow_graph().undirected_edges();
    let weights = metropolis_weights(game);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for it in 1..=config.max_iterations {
        match config.mode {
            Mode::Asynchronous if channels.is_empty() => states[0].local_step(game, config),
            Mode::Asynchronous => {
                let edge = channels[rng.random_range(0..channels.len())];
                gossip_step(&mut states, edge, game, config)?;
            }
            Mode::Synchronous => synchronous_round(&mut states, &weights, game, config),
        }
        if it % config.record_every == 0 || it == config.max_iterations {
            trajectory.records.push(snapshot(it, &states, game, reference));
        }
    }
    Ok(trajectory)
}
