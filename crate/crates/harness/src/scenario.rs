//! Scenario files (JSON).
//!
//! ```json
//! {
//!   "n": 2,
//!   "h": [2.0, 2.0],
//!   "L": [1.5, 1.5],
//!   "default_q": 1.0,
//!   "edges": [[1, 2], [2, 1, 1.75]],
//!   "q": [[1, 2, 0.5]],
//!   "x_max": 10.0,
//!   "solver": { "tol": 1e-10, "max_sweeps": 10000, "residual_tol": 1e-8 },
//!   "gossip": { "mode": "asynchronous", "step_a": 1.0, "step_b": 10.0, "step_tau": 0.7,
//!               "max_iterations": 200000, "record_every": 1000, "seed": 42 },
//!   "reference": [0.1, 0.1]
//! }
//! ```
//!
//! Ids are 1-based. An edge's interest weight comes from its optional third
//! element, else from the `q` override list, else `default_q`. `solver`,
//! `gossip`, `q` and `reference` may be omitted.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use feedgame_core::game::DEFAULT_X_MAX;
use feedgame_core::{BestResponseConfig, Digraph, GameInstance, GameParams, GossipConfig, LocalStep, Mode, Schedule};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("`{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Game(#[from] feedgame_core::Error),
}

impl ScenarioError {
    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ScenarioError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, ScenarioError::Io { .. } | ScenarioError::Write { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeEntry {
    Weighted(usize, usize, f64),
    Plain(usize, usize),
}

impl EdgeEntry {
    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            EdgeEntry::Weighted(u, v, _) | EdgeEntry::Plain(u, v) => (u, v),
        }
    }

    pub fn weight(&self) -> Option<f64> {
        match *self {
            EdgeEntry::Weighted(_, _, q) => Some(q),
            EdgeEntry::Plain(..) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSettings {
    pub tol: f64,
    pub max_sweeps: usize,
    pub residual_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let d = BestResponseConfig::default();
        SolverSettings {
            tol: d.tol,
            max_sweeps: d.max_sweeps,
            residual_tol: d.residual_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GossipMode {
    #[default]
    Asynchronous,
    Synchronous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GossipSettings {
    pub mode: GossipMode,
    pub step_a: f64,
    pub step_b: f64,
    pub step_tau: f64,
    pub max_iterations: u64,
    pub record_every: u64,
    pub seed: u64,
}

impl Default for GossipSettings {
    fn default() -> Self {
        let d = GossipConfig::default();
        GossipSettings {
            mode: GossipMode::Asynchronous,
            step_a: d.schedule.a,
            step_b: d.schedule.b,
            step_tau: d.schedule.tau,
            max_iterations: d.max_iterations,
            record_every: d.record_every,
            seed: d.seed,
        }
    }
}

fn default_q() -> f64 {
    1.0
}

fn default_x_max() -> f64 {
    DEFAULT_X_MAX
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub n: usize,
    pub h: Vec<f64>,
    #[serde(rename = "L")]
    pub utility: Vec<f64>,
    #[serde(default = "default_q")]
    pub default_q: f64,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<(usize, usize, f64)>,
    #[serde(default = "default_x_max")]
    pub x_max: f64,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default)]
    pub gossip: GossipSettings,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<f64>>,
}

/// Scenarios compiled into the binary, addressable by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("fig2", include_str!("../scenarios/fig2.json")),
    ("two_cycle", include_str!("../scenarios/two_cycle.json")),
];

impl Scenario {
    /// Parses JSON and checks referential integrity of ids and weights.
    /// Parameter positivity and connectivity are left to [`Scenario::game`].
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let s: Scenario = serde_json::from_str(text)?;
        s.check_structure()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenario serializes");
        out.push('\n');
        out
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), ScenarioError> {
        std::fs::write(path, self.to_json()).map_err(|source| ScenarioError::Write {
            path: path.to_owned(),
            source,
        })
    }

    pub fn bundled(name: &str) -> Option<Self> {
        BUNDLED
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, text)| Self::from_json(text).expect("bundled scenarios are valid"))
    }

    /// A path on disk, or else the name of a bundled scenario.
    pub fn resolve(arg: &str) -> Result<Self, ScenarioError> {
        let path = Path::new(arg);
        if path.exists() {
            return Self::load(path);
        }
        Self::bundled(arg).ok_or_else(|| ScenarioError::Io {
            path: path.to_owned(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled scenario"),
        })
    }

    fn check_structure(&self) -> Result<(), ScenarioError> {
        let n = self.n;
        if n == 0 {
            return Err(ScenarioError::invalid("n", "must be >= 1"));
        }
        let mut seen = BTreeSet::new();
        for (k, e) in self.edges.iter().enumerate() {
            let (u, v) = e.endpoints();
            let field = format!("edges[{k}]");
            if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                return Err(ScenarioError::invalid(field, format!("node id out of range 1..={n}")));
            }
            if u == v {
                return Err(ScenarioError::invalid(field, format!("self-loop on node {u}")));
            }
            if !seen.insert((u, v)) {
                return Err(ScenarioError::invalid(field, format!("duplicate edge {u} -> {v}")));
            }
        }
        let mut overridden = BTreeSet::new();
        for (k, &(j, l, _)) in self.q.iter().enumerate() {
            let field = format!("q[{k}]");
            if !seen.contains(&(j, l)) {
                return Err(ScenarioError::invalid(field, format!("{j} -> {l} is not an edge")));
            }
            let inline = self.edges.iter().any(|e| e.endpoints() == (j, l) && e.weight().is_some());
            if inline || !overridden.insert((j, l)) {
                return Err(ScenarioError::invalid(field, format!("weight for {j} -> {l} given twice")));
            }
        }
        if let Some(r) = &self.reference {
            if r.len() != n {
                return Err(ScenarioError::invalid(
                    "reference",
                    format!("expected {n} entries, got {}", r.len()),
                ));
            }
        }
        Ok(())
    }

    /// `q_jl` for every edge, 0-based keys.
    pub fn interest(&self) -> BTreeMap<(usize, usize), f64> {
        let overrides: BTreeMap<_, _> = self.q.iter().map(|&(j, l, q)| ((j, l), q)).collect();
        self.edges
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                let q = e
                    .weight()
                    .or_else(|| overrides.get(&(u, v)).copied())
                    .unwrap_or(self.default_q);
                ((u - 1, v - 1), q)
            })
            .collect()
    }

    pub fn follow_graph(&self) -> Digraph {
        Digraph::new(self.n, self.edges.iter().map(|e| {
            let (u, v) = e.endpoints();
            (u - 1, v - 1)
        }))
        .expect("edges checked at parse time")
    }

    pub fn params(&self) -> GameParams {
        GameParams {
            cost: self.h.clone(),
            utility: self.utility.clone(),
            interest: self.interest(),
            x_max: self.x_max,
        }
    }

    /// Builds the game; positivity and strong connectivity errors name their field.
    pub fn game(&self) -> Result<GameInstance, ScenarioError> {
        if !(self.default_q.is_finite() && self.default_q > 0.0) {
            return Err(ScenarioError::invalid("default_q", "must be > 0"));
        }
        GameInstance::new(self.follow_graph(), self.params()).map_err(|e| match e {
            feedgame_core::Error::InvalidParameter { field, reason } => ScenarioError::invalid(field, reason),
            other => ScenarioError::Game(other),
        })
    }

    pub fn solver_config(&self) -> BestResponseConfig {
        BestResponseConfig {
            tol: self.solver.tol,
            max_sweeps: self.solver.max_sweeps,
            residual_tol: self.solver.residual_tol,
        }
    }

    pub fn gossip_config(&self) -> Result<GossipConfig, ScenarioError> {
        let g = &self.gossip;
        let schedule = Schedule::new(g.step_a, g.step_b, g.step_tau).map_err(|e| match e {
            feedgame_core::Error::InvalidParameter { field, reason } => {
                ScenarioError::invalid(format!("gossip.{field}"), reason)
            }
            other => ScenarioError::Game(other),
        })?;
        if g.record_every == 0 {
            return Err(ScenarioError::invalid("gossip.record_every", "must be >= 1"));
        }
        Ok(GossipConfig {
            mode: match g.mode {
                GossipMode::Asynchronous => Mode::Asynchronous,
                GossipMode::Synchronous => Mode::Synchronous,
            },
            schedule,
            max_iterations: g.max_iterations,
            record_every: g.record_every,
            seed: g.seed,
            reference: self.reference.clone(),
            local_step: LocalStep::ProjectedGradient,
        })
    }
}

/// Loads a scenario and builds its game, G_I included.
pub fn load_scenario(arg: &str) -> Result<(Scenario, GameInstance), ScenarioError> {
    let scenario = Scenario::resolve(arg)?;
    let game = scenario.game()?;
    Ok((scenario, game))
}
