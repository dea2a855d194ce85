//! The information-production game.
//!
//! With feed mass `σ_l(x) = Σ_{j -> l} q_jl x_j`, user `i` pays
//!
//! ```text
//! J_i(x) = h_i x_i − L_i √σ_i(x) − Σ_{l : i -> l} L_l (√σ_l(x) − √(σ_l(x) − q_il x_i))
//! ```
//!
//! i.e. production cost minus the utility of its own feed minus the attention
//! it draws from each follower.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::{Digraph, Error, Result};

/// Lower guard on feed mass inside the gradient's `1/√σ` term.
pub const SIGMA_GUARD: f64 = 1e-12;

/// Default common upper bound on actions.
pub const DEFAULT_X_MAX: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct GameParams {
    /// Production-cost coefficients `h_i`.
    pub cost: Vec<f64>,
    /// Utility scales `L_i`.
    pub utility: Vec<f64>,
    /// Interest weights `q_jl` keyed by follower edge `(j, l)`.
    pub interest: BTreeMap<(usize, usize), f64>,
    pub x_max: f64,
}

impl GameParams {
    fn validate(&self, n: usize) -> Result<()> {
        for (field, values) in [("h", &self.cost), ("L", &self.utility)] {
            if values.len() != n {
                return Err(Error::param(
                    field,
                    format!("expected {n} entries, got {}", values.len()),
                ));
            }
            if let Some((i, v)) = values
                .iter()
                .enumerate()
                .find(|(_, v)| !(v.is_finite() && **v > 0.0))
            {
                return Err(Error::param(field, format!("entry {} = {v} must be > 0", i + 1)));
            }
        }
        if let Some((&(j, l), q)) = self
            .interest
            .iter()
            .find(|(_, q)| !(q.is_finite() && **q > 0.0))
        {
            return Err(Error::param(
                "q",
                format!("q[{} -> {}] = {q} must be > 0", j + 1, l + 1),
            ));
        }
        if !(self.x_max.is_finite() && self.x_max > 0.0) {
            return Err(Error::param("x_max", format!("{} must be > 0", self.x_max)));
        }
        Ok(())
    }
}

/// A validated game: follower graph, derived interference graph and parameters.
#[derive(Debug, Clone)]
pub struct GameInstance {
    follow: Digraph,
    interference: Digraph,
    params: GameParams,
    /// `feeds[l]`: `(j, q_jl)` for every producer `j` that `l` follows.
    feeds: Vec<Vec<(usize, f64)>>,
    /// `audience[i]`: `(l, q_il)` for every follower `l` of `i`.
    audience: Vec<Vec<(usize, f64)>>,
}

impl GameInstance {
    pub fn new(follow: Digraph, params: GameParams) -> Result<Self> {
        let n = follow.node_count();
        params.validate(n)?;
        if let Some(&(j, l)) = params.interest.keys().find(|&&(j, l)| !follow.contains(j, l)) {
            return Err(Error::NotAnEdge(j, l));
        }
        if let Some((j, l)) = follow.edges().find(|e| !params.interest.contains_key(e)) {
            return Err(Error::param(
                "q",
                format!("missing weight for edge {} -> {}", j + 1, l + 1),
            ));
        }
        if !follow.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }

        let mut feeds = vec![Vec::new(); n];
        let mut audience = vec![Vec::new(); n];
        for ((j, l), &q) in &params.interest {
            feeds[*l].push((*j, q));
            audience[*j].push((*l, q));
        }
        let interference = follow.interference();
        Ok(GameInstance {
            follow,
            interference,
            params,
            feeds,
            audience,
        })
    }

    pub fn player_count(&self) -> usize {
        self.follow.node_count()
    }

    pub fn follow_graph(&self) -> &Digraph {
        &self.follow
    }

    pub fn interference_graph(&self) -> &Digraph {
        &self.interference
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn x_max(&self) -> f64 {
        self.params.x_max
    }

    /// `q_jl`; asking for a pair that is not a follower edge is an error.
    pub fn interest(&self, j: usize, l: usize) -> Result<f64> {
        self.params
            .interest
            .get(&(j, l))
            .copied()
            .ok_or(Error::NotAnEdge(j, l))
    }

    /// `(l, q_il)` for each follower `l` of `i`.
    pub fn followers(&self, i: usize) -> &[(usize, f64)] {
        &self.audience[i]
    }

    /// `(j, q_jl)` for each producer `j` in the feed of `l`.
    pub fn feed(&self, l: usize) -> &[(usize, f64)] {
        &self.feeds[l]
    }

    pub fn clamp_action(&self, v: f64) -> f64 {
        v.clamp(0.0, self.params.x_max)
    }

    /// `σ_l(x)`.
    pub fn feed_mass(&self, l: usize, x: &[f64]) -> f64 {
        self.feeds[l].iter().map(|&(j, q)| q * x[j]).sum()
    }

    /// `σ_l(x)` with producer `skip` left out of the sum.
    pub fn feed_mass_without(&self, l: usize, skip: usize, x: &[f64]) -> f64 {
        self.feeds[l]
            .iter()
            .filter(|&&(j, _)| j != skip)
            .map(|&(j, q)| q * x[j])
            .sum()
    }

    /// `C_i(x_i) = h_i x_i`.
    pub fn production_cost(&self, i: usize, xi: f64) -> f64 {
        self.params.cost[i] * xi
    }

    /// `f_i^1(x) = L_i √σ_i(x)`.
    pub fn info_utility(&self, i: usize, x: &[f64]) -> f64 {
        self.params.utility[i] * libm::sqrt(self.feed_mass(i, x))
    }

    /// `f_i^2(x)`: attention drawn from each follower, the difference of the
    /// follower's feed utility with and without `x_i`.
    pub fn attention_utility(&self, i: usize, x: &[f64]) -> f64 {
        self.audience[i]
            .iter()
            .map(|&(l, _)| {
                let with = libm::sqrt(self.feed_mass(l, x));
                let without = libm::sqrt(self.feed_mass_without(l, i, x));
                self.params.utility[l] * (with - without)
            })
            .sum()
    }

    /// `J_i(x)`.
    pub fn total_cost(&self, i: usize, x: &[f64]) -> f64 {
        self.production_cost(i, x[i]) - self.info_utility(i, x) - self.attention_utility(i, x)
    }

    /// `∂J_i/∂x_i = h_i − Σ_{l : i -> l} L_l q_il / (2 √max(σ_l, ε))`.
    ///
    /// The own feed term drops out since nobody follows themselves.
    pub fn own_gradient(&self, i: usize, x: &[f64]) -> f64 {
        let marginal: f64 = self.audience[i]
            .iter()
            .map(|&(l, q)| {
                let sigma = self.feed_mass(l, x).max(SIGMA_GUARD);
                self.params.utility[l] * q / (2.0 * libm::sqrt(sigma))
            })
            .sum();
        self.params.cost[i] - marginal
    }

    /// Checks length and bounds of a profile against this game.
    pub fn check_profile(&self, x: &[f64]) -> Result<()> {
        let n = self.player_count();
        if x.len() != n {
            return Err(Error::ProfileLength {
                got: x.len(),
                expected: n,
            });
        }
        let x_max = self.params.x_max;
        match x.iter().position(|v| !(0.0..=x_max).contains(v)) {
            Some(index) => Err(Error::ActionOutOfBounds {
                index,
                value: x[index],
                x_max,
            }),
            None => Ok(()),
        }
    }
}

/// Information-production rates, one per player, each in `[0, x_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionProfile(Vec<f64>);

impl ActionProfile {
    pub fn new(game: &GameInstance, x: Vec<f64>) -> Result<Self> {
        game.check_profile(&x)?;
        Ok(ActionProfile(x))
    }

    pub fn constant(game: &GameInstance, value: f64) -> Result<Self> {
        Self::new(game, vec![value; game.player_count()])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `max_i |x_i − y_i|`.
    pub fn max_abs_diff(&self, other: &[f64]) -> f64 {
        max_abs_diff(&self.0, other)
    }
}

impl Deref for ActionProfile {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Bundled five-user scenario, 0-based: h = 2, L = 1.5,
    /// q_41 = q_45 = 1.75, q_32 = q_43 = 2, other weights 1.
    pub fn fig2() -> GameInstance {
        let edges = [(3, 0), (3, 2), (3, 4), (2, 1), (2, 4), (4, 3), (0, 2), (1, 0)];
        let special = [((3, 0), 1.75), ((3, 4), 1.75), ((2, 1), 2.0), ((3, 2), 2.0)];
        let g = Digraph::new(5, edges).unwrap();
        let mut interest: BTreeMap<_, _> = edges.iter().map(|&e| (e, 1.0)).collect();
        interest.extend(special);
        let params = GameParams {
            cost: vec![2.0; 5],
            utility: vec![1.5; 5],
            interest,
            x_max: DEFAULT_X_MAX,
        };
        GameInstance::new(g, params).unwrap()
    }

    pub fn two_cycle(h: f64, l: f64) -> GameInstance {
        let g = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let interest = [((0, 1), 1.0), ((1, 0), 1.0)].into_iter().collect();
        let params = GameParams {
            cost: vec![h; 2],
            utility: vec![l; 2],
            interest,
            x_max: DEFAULT_X_MAX,
        };
        GameInstance::new(g, params).unwrap()
    }

    /// A single user with nobody to follow and no followers.
    pub fn solo(h: f64) -> GameInstance {
        let params = GameParams {
            cost: vec![h],
            utility: vec![1.0],
            interest: BTreeMap::new(),
            x_max: DEFAULT_X_MAX,
        };
        GameInstance::new(Digraph::new(1, []).unwrap(), params).unwrap()
    }

    /// Exact equilibrium of `fig2`, from the solver tests.
    pub const FIG2_NE: [f64; 5] = [0.0, 0.0, 0.418_172_823_092_955_3, 2.244_041_723_849_771, 0.140_625];
}
