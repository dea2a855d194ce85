#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use feedgame_core::{Digraph, GameInstance, GameParams};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const FIG2_EDGES: [(usize, usize); 8] =
    [(3, 0), (3, 2), (3, 4), (2, 1), (2, 4), (4, 3), (0, 2), (1, 0)];

pub fn fig2() -> GameInstance {
    let special = [((3, 0), 1.75), ((3, 4), 1.75), ((2, 1), 2.0), ((3, 2), 2.0)];
    let mut interest: BTreeMap<_, _> = FIG2_EDGES.iter().map(|&e| (e, 1.0)).collect();
    interest.extend(special);
    let params = GameParams {
        cost: vec![2.0; 5],
        utility: vec![1.5; 5],
        interest,
        x_max: 10.0,
    };
    GameInstance::new(Digraph::new(5, FIG2_EDGES).unwrap(), params).unwrap()
}

/// Random digraph on `n` nodes, each ordered pair present with probability `p`.
pub fn random_digraph(rng: &mut StdRng, n: usize, p: f64) -> Digraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.random_bool(p))
        .collect();
    Digraph::new(n, edges).unwrap()
}

/// Random strongly connected digraph: a Hamiltonian cycle over a shuffled order plus random chords.
pub fn random_strongly_connected(rng: &mut StdRng, n: usize) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    if n > 1 {
        for k in 0..n {
            edges.insert((order[k], order[(k + 1) % n]));
        }
    }
    let p = rng.random_range(0.0..0.6);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Digraph::new(n, edges).unwrap()
}

pub fn random_game(rng: &mut StdRng, max_n: usize) -> GameInstance {
    let n = rng.random_range(2..=max_n);
    let g = random_strongly_connected(rng, n);
    let interest = g.edges().map(|e| (e, rng.random_range(0.5..2.0))).collect();
    let params = GameParams {
        cost: (0..n).map(|_| rng.random_range(0.5..3.0)).collect(),
        utility: (0..n).map(|_| rng.random_range(0.5..3.0)).collect(),
        interest,
        x_max: rng.random_range(2.0..10.0),
    };
    GameInstance::new(g, params).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Reachability by BFS from every node.
pub fn reachable_from(g: &Digraph, s: usize) -> Vec<bool> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if g.contains(u, v) && !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Direct enumeration of the two-clause interference rule over all `l`.
pub fn brute_force_interference(g: &Digraph) -> BTreeSet<(usize, usize)> {
    let n = g.node_count();
    let mut out = BTreeSet::new();
    for j in 0..n {
        for i in 0..n {
            if j == i {
                continue;
            }
            let feeds_i = g.contains(j, i);
            let shared = (0..n).any(|l| g.contains(i, l) && g.contains(j, l));
            if feeds_i || shared {
                out.insert((j, i));
            }
        }
    }
    out
}

/// `(j, i)` such that bumping `x_j` by `delta` moves `J_i` by more than `threshold`.
pub fn fd_dependence(game: &GameInstance, x: &[f64], delta: f64, threshold: f64) -> BTreeSet<(usize, usize)> {
    let n = game.player_count();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let base = game.total_cost(i, x);
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut y = x.to_vec();
            y[j] += delta;
            if (game.total_cost(i, &y) - base).abs() > threshold {
                out.insert((j, i));
            }
        }
    }
    out
}

/// Central finite difference of `J_i` along `x_i`.
pub fn fd_own_gradient(game: &GameInstance, i: usize, x: &[f64], step: f64) -> f64 {
    let mut hi = x.to_vec();
    let mut lo = x.to_vec();
    hi[i] += step;
    lo[i] -= step;
    (game.total_cost(i, &hi) - game.total_cost(i, &lo)) / (2.0 * step)
}

/// Minimizes `J_i` over `[0, x_max]` in `x_i` by a coarse grid followed by a 1e-5 grid around the best cell.
pub fn grid_best_response(game: &GameInstance, i: usize, x: &[f64]) -> f64 {
    let x_max = game.x_max();
    let mut y = x.to_vec();
    let mut cost = |v: f64| {
        y[i] = v;
        game.total_cost(i, &y)
    };
    let argmin = |points: &mut dyn Iterator<Item = f64>, cost: &mut dyn FnMut(f64) -> f64| {
        points
            .map(|v| (v, cost(v)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap()
            .0
    };
    let coarse = 1e-3;
    let steps = (x_max / coarse).round() as usize;
    let c = argmin(
        &mut (0..=steps).map(|k| (k as f64 * coarse).min(x_max)),
        &mut cost,
    );
    let fine = 1e-5;
    let lo = (c - 2.0 * coarse).max(0.0);
    let hi = (c + 2.0 * coarse).min(x_max);
    let m = ((hi - lo) / fine).round() as usize;
    argmin(&mut (0..=m).map(|k| (lo + k as f64 * fine).min(hi)), &mut cost)
}
