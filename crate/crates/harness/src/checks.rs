//! Structural and numerical checks shared by `validate` and `interference --check`.

use std::collections::BTreeSet;

use feedgame_core::GameInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scenario::Scenario;

/// Perturbation used to probe dependence of `J_i` on `x_j`.
pub const DEPENDENCE_DELTA: f64 = 1e-3;
/// Cost change above which `x_j` counts as entering `J_i`.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-9;

/// Random interior profile, entries in `[0.5, 3]` capped by `x_max`.
pub fn interior_profile(game: &GameInstance, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let hi = 3.0f64.min(game.x_max());
    let lo = 0.5f64.min(0.5 * hi);
    (0..game.player_count()).map(|_| rng.random_range(lo..hi)).collect()
}

/// `(j, i)`, 0-based, such that moving `x_j` by `delta` moves `J_i` by more than `threshold`.
pub fn dependence_graph(game: &GameInstance, x: &[f64], delta: f64, threshold: f64) -> BTreeSet<(usize, usize)> {
    let n = game.player_count();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let base = game.total_cost(i, x);
        for j in (0..n).filter(|&j| j != i) {
            let mut y = x.to_vec();
            y[j] += delta;
            if (game.total_cost(i, &y) - base).abs() > threshold {
                out.insert((j, i));
            }
        }
    }
    out
}

/// Symmetric difference between G_I and the finite-difference dependence graph.
pub fn interference_mismatch(game: &GameInstance, seed: u64) -> BTreeSet<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = interior_profile(game, &mut rng);
    let fd = dependence_graph(game, &x, DEPENDENCE_DELTA, DEPENDENCE_THRESHOLD);
    let built: BTreeSet<_> = game.interference_graph().edges().collect();
    built.symmetric_difference(&fd).copied().collect()
}

/// Largest relative error between `own_gradient` and a central difference (step 1e-6)
/// over `points` random interior profiles whose nonempty feeds carry mass >= 0.1.
pub fn gradient_fd_error(game: &GameInstance, points: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = game.player_count();
    let step = 1e-6;
    let mut worst = 0.0f64;
    let mut done = 0;
    let mut attempts = 0;
    while done < points && attempts < 100 * points {
        attempts += 1;
        let x = interior_profile(game, &mut rng);
        if (0..n).any(|l| !game.feed(l).is_empty() && game.feed_mass(l, &x) < 0.1) {
            continue;
        }
        for i in 0..n {
            let (mut hi, mut lo) = (x.clone(), x.clone());
            hi[i] += step;
            lo[i] -= step;
            let numeric = (game.total_cost(i, &hi) - game.total_cost(i, &lo)) / (2.0 * step);
            let analytic = game.own_gradient(i, &x);
            let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1.0);
            worst = worst.max(rel);
        }
        done += 1;
    }
    if done < points {
        f64::INFINITY
    } else {
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn positive(values: &[f64]) -> Result<(), String> {
    match values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        Some(k) => Err(format!("entry {} = {}", k + 1, values[k])),
        None => Ok(()),
    }
}

/// Every structural check on a parsed scenario, in a fixed order.
pub fn validate(s: &Scenario) -> Vec<Check> {
    let mut out = Vec::new();
    let lengths_ok = s.h.len() == s.n && s.utility.len() == s.n;
    out.push(check(
        "parameter lists have n entries",
        lengths_ok,
        format!("n = {}, |h| = {}, |L| = {}", s.n, s.h.len(), s.utility.len()),
    ));
    for (name, values) in [("h positive", &s.h), ("L positive", &s.utility)] {
        let r = positive(values);
        out.push(check(name, r.is_ok(), r.err().unwrap_or_default()));
    }
    let q: Vec<f64> = s.interest().into_values().chain([s.default_q]).collect();
    let r = positive(&q);
    out.push(check("q positive", r.is_ok(), r.err().unwrap_or_default()));
    out.push(check("x_max positive", s.x_max.is_finite() && s.x_max > 0.0, format!("x_max = {}", s.x_max)));

    let gc = s.follow_graph();
    let gi = gc.interference();
    out.push(check("G_C strongly connected", gc.is_strongly_connected(), ""));
    out.push(check("G_I strongly connected", gi.is_strongly_connected(), ""));
    out.push(check("G_C subset of G_I", gc.is_subgraph_of(&gi), ""));

    match s.game() {
        Ok(game) => {
            let err = gradient_fd_error(&game, 10, 0);
            out.push(check(
                "own gradient matches finite differences",
                err < 1e-6,
                format!("max relative error {err:.2e}"),
            ));
            let mismatch = interference_mismatch(&game, 0);
            out.push(check(
                "G_I matches finite-difference dependence",
                mismatch.is_empty(),
                format!("{} mismatched edges", mismatch.len()),
            ));
        }
        Err(e) => {
            out.push(check("own gradient matches finite differences", false, format!("game not built: {e}")));
            out.push(check("G_I matches finite-difference dependence", false, format!("game not built: {e}")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig2_passes_everything() {
        let s = Scenario::bundled("fig2").unwrap();
        let checks = validate(&s);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn zero_cost_fails_positivity() {
        let mut s = Scenario::bundled("fig2").unwrap();
        s.h[2] = 0.0;
        let checks = validate(&s);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert!(failed.contains(&"h positive"));
    }

    #[test]
    fn dependence_of_fig2_matches_interference() {
        let game = Scenario::bundled("fig2").unwrap().game().unwrap();
        assert!(interference_mismatch(&game, 1).is_empty());
    }
}
