use rayon::prelude::*;

use super::family::family_nash_exists;
use super::nash::verify_nash;
use super::response::ResponseConfig;
use super::search::{search_symmetric_ne, SearchConfig};
use crate::error::{Error, Result};
use crate::game::GameDefinition;
use crate::scalar::{as_f64, lit, Real};
use crate::strategy::{profile_label, Space, StrategyPoint};

/// A yes/no property of a game that may switch as `γ` varies.
#[derive(Debug, Clone, PartialEq)]
pub enum Predicate<T> {
    /// The fixed profile is an `ε`-Nash equilibrium.
    ProfileIsNash(Vec<StrategyPoint<T>>),
    /// The symmetric search finds at least one equilibrium in `space`.
    SymmetricNashExists { space: Space, search: SearchConfig },
    /// Some point on a three-player tilted family is a symmetric equilibrium.
    FamilyNashExists,
}

impl<T: Real> Predicate<T> {
    pub fn describe(&self) -> String {
        match self {
            Predicate::ProfileIsNash(p) => format!("{} is an equilibrium", profile_label(p)),
            Predicate::SymmetricNashExists { space, .. } => format!("symmetric {space} equilibrium exists"),
            Predicate::FamilyNashExists => "family equilibrium exists".to_string(),
        }
    }

    /// Evaluates the predicate on `game`.
    pub fn holds(&self, game: &GameDefinition<T>, eps: T, response: &ResponseConfig) -> Result<bool> {
        match self {
            Predicate::ProfileIsNash(profile) => Ok(verify_nash(game, profile, eps, response)?.is_equilibrium),
            Predicate::SymmetricNashExists { space, search } => {
                let search = SearchConfig {
                    eps: Some(as_f64(eps)),
                    ..*search
                };
                Ok(!search_symmetric_ne(game, *space, &search)?.is_empty())
            }
            Predicate::FamilyNashExists => family_nash_exists(game, eps),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig {
    pub lo: f64,
    pub hi: f64,
    /// Evenly spaced pre-scan points, endpoints included.
    pub prescan: usize,
    /// Final bracket width.
    pub tol: f64,
    pub eps: f64,
    pub response: ResponseConfig,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        Self {
            lo: 0.0,
            hi: std::f64::consts::FRAC_PI_2,
            prescan: 64,
            tol: 1e-6,
            eps: 1e-9,
            response: ResponseConfig::default(),
        }
    }
}

/// A located switch of a predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub predicate: String,
    pub gamma_star: f64,
    pub bracket: (f64, f64),
    pub width: f64,
    /// Value of the predicate just below the switch.
    pub holds_below: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdOutcome {
    Switch(ThresholdReport),
    /// The predicate never changes over the scanned range.
    Constant { holds: bool },
}

fn check(config: &ThresholdConfig) -> Result<()> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(0.0 <= config.lo && config.lo < config.hi && config.hi <= half_pi) {
        return Err(Error::Domain(format!("gamma range [{}, {}] not inside [0, π/2]", config.lo, config.hi)));
    }
    if config.prescan < 2 || !(config.tol > 0.0) {
        return Err(Error::Domain("threshold search needs at least 2 pre-scan points and a positive tolerance".into()));
    }
    Ok(())
}

fn evaluate<T: Real>(template: &GameDefinition<T>, predicate: &Predicate<T>, gamma: f64, config: &ThresholdConfig) -> Result<bool> {
    let game = template.with_gamma(lit(gamma))?;
    predicate.holds(&game, lit(config.eps), &config.response)
}

/// Every switch of `predicate` over the range, each bisected to `config.tol`.
pub fn find_thresholds<T: Real>(
    template: &GameDefinition<T>,
    predicate: &Predicate<T>,
    config: &ThresholdConfig,
) -> Result<Vec<ThresholdReport>> {
    check(config)?;
    let n = config.prescan;
    let grid: Vec<f64> = (0..n)
        .map(|k| {
            if k + 1 == n {
                config.hi
            } else {
                config.lo + (config.hi - config.lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect();
    let values: Vec<bool> = grid
        .par_iter()
        .map(|&g| evaluate(template, predicate, g, config))
        .collect::<Result<_>>()?;
    let brackets: Vec<(f64, f64, bool)> = (0..n - 1)
        .filter(|&k| values[k] != values[k + 1])
        .map(|k| (grid[k], grid[k + 1], values[k]))
        .collect();
    brackets
        .par_iter()
        .map(|&(mut lo, mut hi, below)| {
            while hi - lo > config.tol {
                let mid = 0.5 * (lo + hi);
                if evaluate(template, predicate, mid, config)? == below {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(ThresholdReport {
                predicate: predicate.describe(),
                gamma_star: 0.5 * (lo + hi),
                bracket: (lo, hi),
                width: hi - lo,
                holds_below: below,
            })
        })
        .collect()
}

/// The single switch of `predicate`. Several switches are an
/// [`Error::AmbiguousThreshold`].
pub fn find_threshold<T: Real>(
    template: &GameDefinition<T>,
    predicate: &Predicate<T>,
    config: &ThresholdConfig,
) -> Result<ThresholdOutcome> {
    let mut reports = find_thresholds(template, predicate, config)?;
    match reports.len() {
        0 => Ok(ThresholdOutcome::Constant {
            holds: evaluate(template, predicate, config.lo, config)?,
        }),
        1 => Ok(ThresholdOutcome::Switch(reports.remove(0))),
        _ => Err(Error::AmbiguousThreshold {
            brackets: reports.iter().map(|r| r.bracket).collect(),
        }),
    }
}
