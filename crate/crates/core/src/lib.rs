//! Quantized prisoner's dilemma engine.
//!
//! Two- and three-player games are played by applying one local 2x2 unitary
//! per player between an entangling gate `J(γ)` and its inverse. The crate
//! evaluates payoffs, computes best responses, verifies and searches Nash
//! equilibria, locates entanglement thresholds and runs `γ` sweeps.

// NaN-rejecting `!(x > 0)` checks and index loops over 4x4 arrays are deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod equilibrium;
pub mod error;
pub mod game;
pub mod linalg;
pub mod scalar;
pub mod strategy;
pub mod sweep;

pub use equilibrium::{
    best_response, find_threshold, find_thresholds, quadratic_form, search_symmetric_ne, verify_nash, Predicate,
    ResponseConfig, SearchConfig, ThresholdConfig, ThresholdOutcome, ThresholdReport,
};
pub use error::{Error, Result};
pub use game::{entanglement_entropy, outcome_label, parse_outcome, FinalStateReport, PayoffOperator};
pub use scalar::Real;
pub use strategy::{catalog_lookup, grid, named_in_space, profile_label, Move, Resolution, Space};

pub type ComplexMatrix = linalg::ComplexMatrix<f64>;
pub type StateVector = linalg::StateVector<f64>;
pub type SymmetricMatrix4 = linalg::SymmetricMatrix4<f64>;
pub type EigenDecomposition4 = linalg::EigenDecomposition4<f64>;
pub type Game = game::GameDefinition<f64>;
pub type PayoffTable = game::PayoffTable<f64>;
pub type PayoffVector = game::PayoffVector<f64>;
pub type StrategyPoint = strategy::StrategyPoint<f64>;
pub type StrategyGrid = strategy::StrategyGrid<f64>;
pub type BestResponse = equilibrium::BestResponse<f64>;
pub type NashVerdict = equilibrium::NashVerdict<f64>;
pub type EquilibriumReport = equilibrium::EquilibriumReport<f64>;
