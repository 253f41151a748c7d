//! Best responses, `ε`-Nash verification, symmetric equilibrium search and
//! entanglement thresholds.

mod family;
mod nash;
mod response;
mod search;
mod threshold;

pub use family::{family_nash_exists, fit_family, stationary_points, FamilyKind, FamilyParams};
pub use nash::{default_eps, verify_nash, NashVerdict, EIGEN_EPS, GRID_EPS};
pub use response::{best_response, quadratic_form, BestResponse, ResponseConfig, ResponseMethod};
pub use search::{search_symmetric_ne, EquilibriumReport, SearchConfig};
pub use threshold::{find_threshold, find_thresholds, Predicate, ThresholdConfig, ThresholdOutcome, ThresholdReport};
