//! Information-production game on a follower digraph.
//!
//! Each user `i` produces `x_i` units of information that its followers see in
//! their news feeds. Producing costs `h_i x_i`; reading the feed yields a
//! concave utility, and drawing attention from followers yields a second one.
//! This crate holds the pure numerical side:
//!
//! * [`digraph`]: follower and interference digraphs, strong connectivity.
//! * [`game`]: parameters, cost components and the own-action gradient.
//! * [`solvers`]: full-information best responses, projected gradient and
//!   equilibrium certificates.
//! * [`gossip`]: distributed equilibrium seeking where every player keeps an
//!   estimate of all actions and averages it with communication neighbours.
//!
//! Player indices are 0-based everywhere in this crate. File formats and the
//! CLI (in `feedgame-harness`) use 1-based ids.
#![no_std]

extern crate alloc;

pub mod digraph;
pub mod error;
pub mod game;
pub mod gossip;
pub mod solvers;

pub use digraph::Digraph;
pub use error::Error;
pub use game::{ActionProfile, GameInstance, GameParams};
pub use gossip::{GossipConfig, LocalStep, Mode, PlayerState, Record, Schedule, Trajectory};
pub use solvers::{BestResponseConfig, NeReport};

pub type Result<T, E = Error> = core::result::Result<T, E>;
