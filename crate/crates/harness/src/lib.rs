//! File formats, bundled scenarios and command implementations behind the
//! `feedgame` binary.
//!
//! Everything user-facing here uses 1-based player ids; the core crate is 0-based.

pub mod checks;
pub mod commands;
pub mod edgelist;
pub mod reconstruct;
pub mod scenario;
pub mod trajectory;

pub use scenario::{Scenario, ScenarioError};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VALIDATION: u8 = 1;
    pub const NOT_CONVERGED: u8 = 2;
    pub const IO: u8 = 3;
    pub const INTERFERENCE_MISMATCH: u8 = 4;
    pub const UNSATISFIABLE: u8 = 5;
}
