//! `γ` sweeps over the built-in or file-defined games, regime
//! classification and CSV output.

mod config;
mod csv;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::equilibrium::{default_eps, quadratic_form, search_symmetric_ne, EquilibriumReport, SearchConfig};
use crate::error::{Error, Result};
use crate::game::{entanglement_entropy, GameDefinition};
use crate::linalg::ComplexMatrix;
use crate::strategy::{catalog_names_in, named_in_space, Space, StrategyPoint};

pub use config::{load_game, parse_game_config, parse_game_json};
pub use csv::{emit_csv, format_csv, format_g12, parse_csv};

/// Classification of a `γ` point by the equilibria found there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Every equilibrium pays the all-defect outcome.
    Classical,
    /// Only payoff-asymmetric equilibria beat the all-defect outcome.
    Transition,
    Quantum,
    /// At least two distinct symmetric payoff levels.
    Coexistence,
    /// Nothing found.
    None,
}

impl Regime {
    pub const ALL: [Regime; 5] = [Regime::Classical, Regime::Transition, Regime::Quantum, Regime::Coexistence, Regime::None];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Classical => "classical",
            Regime::Transition => "transition",
            Regime::Quantum => "quantum",
            Regime::Coexistence => "coexistence",
            Regime::None => "none",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown regime `{s}`")))
    }
}

/// One equilibrium of a sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepEquilibrium {
    /// Profile label such as `QxQ` or `iSyxiSyxiSy`.
    pub id: String,
    pub payoffs: Vec<f64>,
    /// `(a, b)` for points on a three-player family.
    pub family: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSweepRecord {
    pub gamma: f64,
    pub entropy: f64,
    pub regime: Regime,
    /// Sorted by id.
    pub equilibria: Vec<SweepEquilibrium>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// `pd2`, `pd3` or a game file path.
    pub game: String,
    pub space: Space,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    /// Search and verification settings, seed included.
    pub search: SearchConfig,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    /// Sweep of `[0, π/2]` at 33 points.
    pub fn new(game: impl Into<String>, space: Space) -> Self {
        Self {
            game: game.into(),
            space,
            start: 0.0,
            stop: std::f64::consts::FRAC_PI_2,
            count: 33,
            search: SearchConfig::default(),
            out: None,
        }
    }

    /// Evenly spaced grid including both ends.
    pub fn gammas(&self) -> Result<Vec<f64>> {
        if !(0.0 <= self.start && self.start <= self.stop && self.stop <= std::f64::consts::FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "gamma range [{}, {}] not inside [0, π/2]",
                self.start, self.stop
            )));
        }
        if self.count < 2 {
            return Err(Error::Domain(format!("gamma count {} (need at least 2)", self.count)));
        }
        let n = self.count - 1;
        Ok((0..=n)
            .map(|k| if k == n { self.stop } else { self.start + (self.stop - self.start) * k as f64 / n as f64 })
            .collect())
    }
}

/// Runs a sweep. At each `γ` every catalog product profile of the space is
/// verified, the symmetric search is run on symmetric games, duplicates are
/// merged and the regime is classified.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<GammaSweepRecord>> {
    let template = load_game(&config.game)?;
    sweep_game(&template, config)
}

/// [`run_sweep`] on an already loaded game; `config.game` is ignored.
pub fn sweep_game(template: &GameDefinition<f64>, config: &SweepConfig) -> Result<Vec<GammaSweepRecord>> {
    config
        .gammas()?
        .par_iter()
        .map(|&gamma| sweep_point(template, config.space, gamma, &config.search))
        .collect()
}

/// Equilibria and regime at a single `γ`.
pub fn sweep_point(template: &GameDefinition<f64>, space: Space, gamma: f64, search: &SearchConfig) -> Result<GammaSweepRecord> {
    let game = template.with_gamma(gamma)?;
    let eps = search.eps.unwrap_or_else(|| default_eps(space));
    let mut found = if game.is_symmetric() {
        search_symmetric_ne(&game, space, search)?
    } else {
        Vec::new()
    };
    let catalog: Vec<Option<EquilibriumReport<f64>>> = catalog_profiles(space, game.players())?
        .into_par_iter()
        .map(|p| EquilibriumReport::from_profile(&game, p, eps, &search.response))
        .collect::<Result<_>>()?;
    found.extend(catalog.into_iter().flatten());

    let mut kept: Vec<(EquilibriumReport<f64>, Vec<crate::linalg::SymmetricMatrix4<f64>>)> = Vec::new();
    for report in found {
        let forms = if space == Space::Su2 { Vec::new() } else { response_forms(&game, &report.profile)? };
        if !kept.iter().any(|(k, kf)| same_equilibrium(space, k, kf, &report, &forms)) {
            kept.push((report, forms));
        }
    }
    let mut equilibria: Vec<SweepEquilibrium> = kept
        .into_iter()
        .map(|(r, _)| SweepEquilibrium {
            id: r.label(),
            payoffs: r.payoffs.0.clone(),
            family: r.family.map(|f| (f.a, f.b)),
        })
        .collect();
    equilibria.sort_by(|a, b| a.id.cmp(&b.id));
    let all_defect = game.table().payoff(game.dim() - 1, 0);
    Ok(GammaSweepRecord {
        gamma,
        entropy: entanglement_entropy(gamma)?,
        regime: classify(&equilibria, all_defect),
        equilibria,
    })
}

fn catalog_profiles(space: Space, players: usize) -> Result<Vec<Vec<StrategyPoint<f64>>>> {
    let points = catalog_names_in(space)
        .iter()
        .map(|n| named_in_space(n, space))
        .collect::<Result<Vec<_>>>()?;
    let n = points.len();
    Ok((0..n.pow(players as u32))
        .map(|mut code| {
            let mut profile = vec![points[0]; players];
            for slot in profile.iter_mut().rev() {
                *slot = points[code % n];
                code /= n;
            }
            profile
        })
        .collect())
}

fn response_forms(game: &GameDefinition<f64>, profile: &[StrategyPoint<f64>]) -> Result<Vec<crate::linalg::SymmetricMatrix4<f64>>> {
    let unitaries: Vec<ComplexMatrix<f64>> = profile.iter().map(StrategyPoint::to_unitary).collect();
    (0..profile.len())
        .map(|k| {
            let mut others = unitaries.clone();
            others.remove(k);
            quadratic_form(game, k, &others)
        })
        .collect()
}

const MERGE_TOL: f64 = 1e-8;

fn same_equilibrium(
    space: Space,
    a: &EquilibriumReport<f64>,
    a_forms: &[crate::linalg::SymmetricMatrix4<f64>],
    b: &EquilibriumReport<f64>,
    b_forms: &[crate::linalg::SymmetricMatrix4<f64>],
) -> bool {
    if a.payoffs.max_abs_diff(&b.payoffs) > MERGE_TOL {
        return false;
    }
    if space == Space::Su2 {
        a.profile
            .iter()
            .zip(&b.profile)
            .all(|(x, y)| x.to_unitary().max_abs_diff_up_to_sign(&y.to_unitary()) <= MERGE_TOL)
    } else {
        a_forms.iter().zip(b_forms).all(|(x, y)| x.max_abs_diff(y) <= MERGE_TOL)
    }
}

const LEVEL_TOL: f64 = 1e-8;

/// Regime from the payoff vectors of the equilibria found.
pub fn classify(equilibria: &[SweepEquilibrium], all_defect: f64) -> Regime {
    if equilibria.is_empty() {
        return Regime::None;
    }
    let near = |x: f64, y: f64| (x - y).abs() <= LEVEL_TOL;
    if equilibria.iter().all(|e| e.payoffs.iter().all(|&p| near(p, all_defect))) {
        return Regime::Classical;
    }
    let mut levels: Vec<f64> = Vec::new();
    let mut asymmetric = false;
    for e in equilibria {
        let first = e.payoffs[0];
        if e.payoffs.iter().all(|&p| near(p, first)) {
            if !levels.iter().any(|&l| near(l, first)) {
                levels.push(first);
            }
        } else {
            asymmetric = true;
        }
    }
    if levels.len() >= 2 {
        Regime::Coexistence
    } else if asymmetric && levels.iter().all(|&l| l <= all_defect + LEVEL_TOL) {
        Regime::Transition
    } else {
        Regime::Quantum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(id: &str, payoffs: &[f64]) -> SweepEquilibrium {
        SweepEquilibrium { id: id.into(), payoffs: payoffs.to_vec(), family: None }
    }

    #[test]
    fn regimes() {
        assert_eq!(classify(&[], 1.0), Regime::None);
        assert_eq!(classify(&[eq("DxD", &[1.0, 1.0])], 1.0), Regime::Classical);
        assert_eq!(classify(&[eq("DxQ", &[3.4, 1.6]), eq("QxD", &[1.6, 3.4])], 1.0), Regime::Transition);
        assert_eq!(classify(&[eq("QxQ", &[3.0, 3.0])], 1.0), Regime::Quantum);
        assert_eq!(classify(&[eq("a", &[1.6; 3]), eq("b", &[1.8; 3])], 1.0), Regime::Coexistence);
        assert_eq!(classify(&[eq("a", &[1.6; 3]), eq("b", &[2.0, 1.0, 1.0])], 1.0), Regime::Quantum);
        for r in Regime::ALL {
            assert_eq!(r.name().parse::<Regime>().unwrap(), r);
        }
    }

    #[test]
    fn grid_validation() {
        let mut c = SweepConfig::new("pd2", Space::TwoParamDiag);
        assert_eq!(c.gammas().unwrap().len(), 33);
        assert_eq!(*c.gammas().unwrap().last().unwrap(), std::f64::consts::FRAC_PI_2);
        c.count = 1;
        assert!(c.gammas().is_err());
        c.count = 3;
        c.start = 1.0;
        c.stop = 0.5;
        assert!(c.gammas().is_err());
        c.stop = 1.6;
        assert!(c.gammas().is_err());
        c.start = 0.5;
        c.stop = 0.5;
        assert_eq!(c.gammas().unwrap(), vec![0.5; 3]);
    }

    #[test]
    fn catalog_products_cover_every_combination() {
        let p = catalog_profiles(Space::TwoParamDiag, 3).unwrap();
        assert_eq!(p.len(), 27);
        assert_eq!(crate::strategy::profile_label(&p[8]), "CxQxQ");
    }

    #[test]
    fn two_player_diag_regimes() {
        let g = GameDefinition::pd2(0.0).unwrap();
        let s = SearchConfig::default();
        let expect = [(0.2, Regime::Classical), (0.6, Regime::Transition), (1.2, Regime::Quantum)];
        for (gamma, regime) in expect {
            let r = sweep_point(&g, Space::TwoParamDiag, gamma, &s).unwrap();
            assert_eq!(r.regime, regime, "γ = {gamma}: {:?}", r.equilibria);
        }
        let r = sweep_point(&g, Space::TwoParamDiag, 0.6, &s).unwrap();
        let ids: Vec<&str> = r.equilibria.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["DxQ", "QxD"]);
        let d_side = 5.0 * 0.6f64.cos().powi(2);
        assert!((r.equilibria[0].payoffs[0] - d_side).abs() < 1e-9);
        assert!((r.equilibria[1].payoffs[1] - d_side).abs() < 1e-9);
    }

    #[test]
    fn no_pure_equilibrium_for_two_players_past_the_boundary() {
        let g = GameDefinition::pd2(0.0).unwrap();
        let r = sweep_point(&g, Space::Su2, 0.7, &SearchConfig::default()).unwrap();
        assert_eq!(r.regime, Regime::None, "{:?}", r.equilibria);
    }
}
