//! Lazy Cops and Robbers on graphs.
//!
//! In the lazy variant, at most one cop moves per round. The crate provides
//! the game rules ([`game`]), an exact retrograde solver for the lazy and the
//! classic cop number ([`solver`]), constructive cop and robber strategies
//! with the associated closed-form budgets ([`strategy`]), an empirical check
//! of random-graph expansion properties ([`expansion`]) and a reproducible
//! batch runner ([`experiment`]).
//!
//! All randomness is drawn from ChaCha8 seeded through [`seeded_rng`].

pub mod expansion;
pub mod experiment;
pub mod game;
pub mod graph;
pub mod solver;
pub mod strategy;

pub use game::{play, GameError, GameRecord, GameState, Move, Outcome, Side};
pub use graph::{Graph, GraphError, VertexSet};
pub use solver::{lazy_cop_number, solve_classic, solve_lazy, Rules, SolveError, SolveResult};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The crate-wide generator: ChaCha8 seeded from a 64-bit integer.
pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
