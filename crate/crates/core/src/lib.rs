//! Balance-scale strategies for a weight-changing counterfeit coin.
//!
//! One coin among many is fake and cycles deterministically through weight
//! phases each time it is weighed: light–heavy, light–real (the alternator),
//! or light–heavy–real. This crate synthesizes oblivious weighing plans,
//! verifies any plan by exhaustive simulation, solves adaptive play by
//! game-tree search over hypothesis counts, and computes every associated
//! outcome-counting sequence and solvability bound.
//!
//! - [`coin`]: outcomes, itineraries, conjugation, scenarios.
//! - [`sequences`]: Jacobsthal and weighted-Tribonacci families, bounds.
//! - [`outcomes`]: validity rules, enumeration, exclusive groups.
//! - [`synthesis`]: strategy construction and the built-in tables.
//! - [`verifier`]: simulation, legitimacy, decodability, decoding.
//! - [`adaptive`]: the minimax solver, scripted strategies, impossibility
//!   sweeps.
//! - [`document`]: the `.wwjson` interchange format.

pub mod adaptive;
pub mod coin;
pub mod document;
pub mod outcomes;
pub mod sequences;
pub mod synthesis;
pub mod verifier;

pub use coin::{
    step_state, CoinKind, CoinState, Hypothesis, Itinerary, Outcome, Placement, Scenario,
    StartInfo, Strategy, Symbol,
};
