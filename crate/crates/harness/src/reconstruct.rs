//! Recovering a follower graph from degree constraints and a published equilibrium.
//!
//! Every completion of the unknown out-edges that respects the out-degree
//! constraints is tried. A completion survives when its follower graph is
//! strongly connected and its best-response equilibrium (from all-ones),
//! rounded to `decimals`, equals the target.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use feedgame_core::solvers::best_response_iteration;
use feedgame_core::{ActionProfile, BestResponseConfig, Digraph, GameInstance, GameParams};
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::scenario::ScenarioError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructionSpec {
    pub n: usize,
    pub h: Vec<f64>,
    #[serde(rename = "L")]
    pub utility: Vec<f64>,
    #[serde(default = "one")]
    pub default_q: f64,
    /// Weights for specific `(producer, follower)` pairs, used whenever that edge is present.
    #[serde(default)]
    pub q: Vec<(usize, usize, f64)>,
    #[serde(default = "ten")]
    pub x_max: f64,
    pub known_edges: Vec<(usize, usize)>,
    /// Exact out-degree of every node.
    pub out_degree: Vec<usize>,
    pub target: Vec<f64>,
    pub decimals: u32,
}

fn one() -> f64 {
    1.0
}

fn ten() -> f64 {
    10.0
}

pub const BUNDLED: &[(&str, &str)] = &[("fig2", include_str!("../scenarios/fig2_reconstruct.json"))];

#[derive(Debug, Clone, PartialEq)]
pub struct Survivor {
    /// 0-based follower edges.
    pub edges: BTreeSet<(usize, usize)>,
    pub equilibrium: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub completions: usize,
    pub strongly_connected: usize,
    pub survivors: Vec<Survivor>,
    /// Non-known edges present in every survivor (0-based).
    pub forced: BTreeSet<(usize, usize)>,
}

impl ReconstructionSpec {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let spec: Self = serde_json::from_str(text)?;
        spec.check()?;
        Ok(spec)
    }

    pub fn resolve(arg: &str) -> Result<Self, ScenarioError> {
        let path = Path::new(arg);
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
                path: path.to_owned(),
                source,
            })?;
            return Self::from_json(&text);
        }
        BUNDLED
            .iter()
            .find(|(k, _)| *k == arg)
            .map(|(_, text)| Self::from_json(text).expect("bundled spec is valid"))
            .ok_or_else(|| ScenarioError::Io {
                path: path.to_owned(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled spec"),
            })
    }

    fn check(&self) -> Result<(), ScenarioError> {
        let n = self.n;
        if n == 0 {
            return Err(ScenarioError::invalid("n", "must be >= 1"));
        }
        for (field, len) in [
            ("h", self.h.len()),
            ("L", self.utility.len()),
            ("out_degree", self.out_degree.len()),
            ("target", self.target.len()),
        ] {
            if len != n {
                return Err(ScenarioError::invalid(field, format!("expected {n} entries, got {len}")));
            }
        }
        let mut known_out = vec![0usize; n];
        let mut seen = BTreeSet::new();
        for (k, &(u, v)) in self.known_edges.iter().enumerate() {
            if !(1..=n).contains(&u) || !(1..=n).contains(&v) || u == v || !seen.insert((u, v)) {
                return Err(ScenarioError::invalid(
                    format!("known_edges[{k}]"),
                    format!("{u} -> {v} is out of range, a self-loop or a duplicate"),
                ));
            }
            known_out[u - 1] += 1;
        }
        for (i, (&d, &k)) in self.out_degree.iter().zip(&known_out).enumerate() {
            if k > d {
                return Err(ScenarioError::invalid(
                    format!("out_degree[{i}]"),
                    format!("node {} has {k} known out-edges but degree {d}", i + 1),
                ));
            }
            if d > n - 1 {
                return Err(ScenarioError::invalid(
                    format!("out_degree[{i}]"),
                    format!("degree {d} exceeds n - 1"),
                ));
            }
        }
        for (k, &(j, l, _)) in self.q.iter().enumerate() {
            if !(1..=n).contains(&j) || !(1..=n).contains(&l) || j == l {
                return Err(ScenarioError::invalid(format!("q[{k}]"), "invalid pair"));
            }
        }
        Ok(())
    }

    fn params_for(&self, edges: &BTreeSet<(usize, usize)>) -> GameParams {
        let overrides: BTreeMap<_, _> = self.q.iter().map(|&(j, l, q)| ((j - 1, l - 1), q)).collect();
        GameParams {
            cost: self.h.clone(),
            utility: self.utility.clone(),
            interest: edges
                .iter()
                .map(|e| (*e, overrides.get(e).copied().unwrap_or(self.default_q)))
                .collect(),
            x_max: self.x_max,
        }
    }

    /// All out-edge sets compatible with the known edges and degree constraints.
    pub fn completions(&self) -> Vec<BTreeSet<(usize, usize)>> {
        let n = self.n;
        let known: BTreeSet<(usize, usize)> = self.known_edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let per_node: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|u| {
                let free: Vec<usize> = (0..n).filter(|&v| v != u && !known.contains(&(u, v))).collect();
                let missing = self.out_degree[u] - known.iter().filter(|e| e.0 == u).count();
                free.into_iter().combinations(missing).collect()
            })
            .collect();
        per_node
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| {
                let mut edges = known.clone();
                for (u, targets) in choice.iter().enumerate() {
                    edges.extend(targets.iter().map(|&v| (u, v)));
                }
                edges
            })
            .collect()
    }

    fn matches_target(&self, x: &[f64]) -> bool {
        let scale = 10f64.powi(self.decimals as i32);
        x.iter()
            .zip(&self.target)
            .all(|(a, b)| (a * scale).round() == (b * scale).round())
    }

    pub fn run(&self) -> Reconstruction {
        let completions = self.completions();
        let mut strongly_connected = 0;
        let mut survivors = Vec::new();
        for edges in &completions {
            let g = Digraph::new(self.n, edges.iter().copied()).expect("completions respect invariants");
            if !g.is_strongly_connected() {
                continue;
            }
            strongly_connected += 1;
            let Ok(game) = GameInstance::new(g, self.params_for(edges)) else {
                continue;
            };
            let x0 = ActionProfile::constant(&game, 1.0_f64.min(self.x_max)).expect("inside the box");
            let report = best_response_iteration(&game, &x0, &BestResponseConfig::default());
            if report.converged && self.matches_target(&report.profile) {
                survivors.push(Survivor {
                    edges: edges.clone(),
                    equilibrium: report.profile.into_inner(),
                });
            }
        }
        let known: BTreeSet<(usize, usize)> = self.known_edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let forced = survivors
            .iter()
            .map(|s| s.edges.difference(&known).copied().collect::<BTreeSet<_>>())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .unwrap_or_default();
        Reconstruction {
            completions: completions.len(),
            strongly_connected,
            survivors,
            forced,
        }
    }
}
