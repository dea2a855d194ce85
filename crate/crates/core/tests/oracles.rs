#![allow(clippy::needless_range_loop)]

//! Implementation-independent oracles: finite differences, grid search,
//! brute-force enumeration and BFS reachability.

mod common;

use common::*;
use feedgame_core::solvers::{best_response, solve};
use rand::Rng;

#[test]
fn own_gradient_matches_central_differences() {
    let mut rng = rng(7);
    let mut games = vec![fig2()];
    games.extend((0..9).map(|_| random_game(&mut rng, 6)));
    let mut checked = 0;
    while checked < 100 {
        let game = &games[checked % games.len()];
        let n = game.player_count();
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..3.0)).collect();
        if (0..n).any(|l| !game.feed(l).is_empty() && game.feed_mass(l, &x) < 0.1) {
            continue;
        }
        for i in 0..n {
            let analytic = game.own_gradient(i, &x);
            let numeric = fd_own_gradient(game, i, &x, 1e-6);
            let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1.0);
            assert!(rel < 1e-6, "player {i} at {x:?}: {analytic} vs {numeric}");
        }
        checked += 1;
    }
}

#[test]
fn interference_matches_brute_force_and_fd_dependence() {
    let mut rng = rng(11);
    for _ in 0..50 {
        let game = random_game(&mut rng, 6);
        let n = game.player_count();
        let gi = game.interference_graph();
        let built: std::collections::BTreeSet<_> = gi.edges().collect();
        assert_eq!(built, brute_force_interference(game.follow_graph()));

        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..3.0)).collect();
        assert_eq!(built, fd_dependence(&game, &x, 1e-3, 1e-9));
        assert!(game.follow_graph().is_subgraph_of(gi));
    }
}

#[test]
fn fig2_interference_matches_fd_dependence() {
    let game = fig2();
    let x = [0.7, 1.3, 0.9, 2.1, 0.6];
    let built: std::collections::BTreeSet<_> = game.interference_graph().edges().collect();
    assert_eq!(built, fd_dependence(&game, &x, 1e-3, 1e-9));
    assert_eq!(built.len(), 12);
}

#[test]
fn strong_connectivity_matches_bfs() {
    let mut rng = rng(3);
    for _ in 0..300 {
        let n = rng.random_range(1..=8);
        let p = rng.random_range(0.05..0.5);
        let g = random_digraph(&mut rng, n, p);
        let all = (0..n).all(|s| reachable_from(&g, s).iter().all(|&r| r));
        assert_eq!(g.is_strongly_connected(), all, "{g:?}");

        // Same component iff mutually reachable.
        let reach: Vec<_> = (0..n).map(|s| reachable_from(&g, s)).collect();
        let comps = g.strongly_connected_components();
        let mut comp_of = vec![usize::MAX; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        for u in 0..n {
            for v in 0..n {
                assert_eq!(comp_of[u] == comp_of[v], reach[u][v] && reach[v][u]);
            }
        }
    }
}

#[test]
fn best_response_matches_grid_search() {
    let mut rng = rng(5);
    for _ in 0..100 {
        let game = random_game(&mut rng, 5);
        let n = game.player_count();
        let i = rng.random_range(0..n);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..game.x_max())).collect();
        let br = best_response(&game, i, &x);
        let grid = grid_best_response(&game, i, &x);
        assert!((br - grid).abs() <= 1e-4, "player {i}: {br} vs grid {grid}");
    }
}

#[test]
fn fig2_equilibrium_from_both_starts() {
    let game = fig2();
    let a = solve(&game, vec![1.0; 5]).unwrap();
    let b = solve(&game, vec![0.0; 5]).unwrap();
    assert!(a.converged && b.converged);
    assert!(a.profile.max_abs_diff(&b.profile) < 1e-9);
    let rounded: Vec<f64> = a.profile.iter().map(|v| (v * 100.0).round() / 100.0).collect();
    assert_eq!(rounded, vec![0.0, 0.0, 0.42, 2.24, 0.14]);
    // Frozen from an independent Python/scipy brentq best-response iteration.
    let reference = [0.0, 0.0, 0.418_172_823_092_955_3, 2.244_041_723_849_771, 0.140_625];
    assert!(a.profile.max_abs_diff(&reference) < 1e-9);
}
