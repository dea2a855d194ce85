//! Centralized, full-information equilibrium solvers and certificates.

use alloc::vec::Vec;

use crate::game::SIGMA_GUARD;
use crate::gossip::Schedule;
use crate::{ActionProfile, GameInstance, Result};

/// Absolute tolerance on the bracket width in [`best_response`] bisection.
pub const BISECTION_TOL: f64 = 1e-10;

/// Outcome of an equilibrium solve.
#[derive(Debug, Clone, PartialEq)]
pub struct NeReport {
    pub profile: ActionProfile,
    /// KKT violation, see [`ne_residual`].
    pub residual: f64,
    /// See [`br_gap`].
    pub br_gap: f64,
    pub iterations: usize,
    /// Set only when the stopping rule fired and `residual <= residual_tol`.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponseConfig {
    /// Stop once the largest action change over a sweep drops below this.
    pub tol: f64,
    pub max_sweeps: usize,
    pub residual_tol: f64,
}

impl Default for BestResponseConfig {
    fn default() -> Self {
        BestResponseConfig {
            tol: 1e-10,
            max_sweeps: 10_000,
            residual_tol: 1e-8,
        }
    }
}

/// Minimizer of `J_i` over `x_i ∈ [0, x_max]` with the other entries of `x` held fixed.
///
/// With a single follower `l` the stationarity condition is solved in closed
/// form; otherwise the own gradient (nondecreasing in `x_i`) is bisected.
pub fn best_response(game: &GameInstance, i: usize, x: &[f64]) -> f64 {
    let followers = game.followers(i);
    let h = game.params().cost[i];
    match followers {
        [] => 0.0,
        &[(l, q)] => {
            // Stationary feed mass. At or below the guard the guarded gradient is
            // nonnegative for every x_i, so the lower bound is optimal.
            let root = game.params().utility[l] * q / (2.0 * h);
            let target = root * root;
            if target <= SIGMA_GUARD {
                return 0.0;
            }
            let rest = game.feed_mass_without(l, i, x);
            game.clamp_action((target - rest) / q)
        }
        _ => {
            let mut y = x.to_vec();
            let mut grad_at = |v: f64| {
                y[i] = v;
                game.own_gradient(i, &y)
            };
            let x_max = game.x_max();
            if grad_at(0.0) >= 0.0 {
                return 0.0;
            }
            if grad_at(x_max) <= 0.0 {
                return x_max;
            }
            let (mut lo, mut hi) = (0.0, x_max);
            while hi - lo > BISECTION_TOL {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let g = grad_at(mid);
                if g == 0.0 {
                    return mid;
                } else if g < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
    }
}

/// KKT violation of the box-constrained equilibrium conditions, maximized over players.
pub fn ne_residual(game: &GameInstance, x: &[f64]) -> f64 {
    let x_max = game.x_max();
    (0..game.player_count())
        .map(|i| {
            let g = game.own_gradient(i, x);
            if x[i] <= 0.0 {
                (-g).max(0.0)
            } else if x[i] >= x_max {
                g.max(0.0)
            } else {
                g.abs()
            }
        })
        .fold(0.0, f64::max)
}

/// `max_i |x_i − BR_i(x)|`.
pub fn br_gap(game: &GameInstance, x: &[f64]) -> f64 {
    (0..game.player_count())
        .map(|i| (x[i] - best_response(game, i, x)).abs())
        .fold(0.0, f64::max)
}

fn report(game: &GameInstance, x: Vec<f64>, iterations: usize, stopped: bool, residual_tol: f64) -> NeReport {
    let residual = ne_residual(game, &x);
    let br_gap = br_gap(game, &x);
    NeReport {
        converged: stopped && residual <= residual_tol,
        profile: ActionProfile::new(game, x).expect("solver iterates stay in the action box"),
        residual,
        br_gap,
        iterations,
    }
}

/// Cyclic Gauss–Seidel best-response sweeps in ascending player order.
pub fn best_response_iteration(
    game: &GameInstance,
    x0: &ActionProfile,
    config: &BestResponseConfig,
) -> NeReport {
    let mut x = x0.as_slice().to_vec();
    let mut sweeps = 0;
    let mut stopped = false;
    while sweeps < config.max_sweeps {
        sweeps += 1;
        let mut change = 0.0f64;
        for i in 0..x.len() {
            let next = best_response(game, i, &x);
            change = change.max((next - x[i]).abs());
            x[i] = next;
        }
        if change < config.tol {
            stopped = true;
            break;
        }
    }
    report(game, x, sweeps, stopped, config.residual_tol)
}

/// Simultaneous projected gradient steps `x_i ← Π(x_i − α_k ∂J_i/∂x_i)`, `k = 1..=iters`.
///
/// Counts as converged when the exit residual is within `residual_tol`.
pub fn full_info_projected_gradient(
    game: &GameInstance,
    x0: &ActionProfile,
    schedule: &Schedule,
    iters: usize,
    residual_tol: f64,
) -> NeReport {
    let mut x = x0.as_slice().to_vec();
    let mut grad = alloc::vec![0.0; x.len()];
    for k in 1..=iters {
        for (i, g) in grad.iter_mut().enumerate() {
            *g = game.own_gradient(i, &x);
        }
        let step = schedule.step(k as u64);
        for (xi, g) in x.iter_mut().zip(&grad) {
            *xi = game.clamp_action(*xi - step * g);
        }
    }
    report(game, x, iters, true, residual_tol)
}

/// Convenience: solve from a starting profile with default settings.
pub fn solve(game: &GameInstance, x0: Vec<f64>) -> Result<NeReport> {
    let x0 = ActionProfile::new(game, x0)?;
    Ok(best_response_iteration(game, &x0, &BestResponseConfig::default()))
}
