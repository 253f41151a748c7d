use super::response::{best_response_unchecked, quadratic_form_unchecked, BestResponse, ResponseConfig};
use crate::error::{Error, Result};
use crate::game::{GameDefinition, PayoffVector};
use crate::linalg::ComplexMatrix;
use crate::scalar::{lit, Real};
use crate::strategy::{Space, StrategyPoint};

/// Default `ε` for eigen-verified SU(2) checks.
pub const EIGEN_EPS: f64 = 1e-7;
/// Default `ε` for lattice-verified two-parameter checks.
pub const GRID_EPS: f64 = 5e-4;

/// Default `ε` for a strategy space.
pub fn default_eps(space: Space) -> f64 {
    match space {
        Space::Su2 | Space::Classical => EIGEN_EPS,
        Space::TwoParamDiag | Space::TwoParamOffdiag => GRID_EPS,
    }
}

/// Outcome of an `ε`-Nash check.
#[derive(Debug, Clone, PartialEq)]
pub struct NashVerdict<T> {
    pub is_equilibrium: bool,
    /// Best response value minus current payoff, per player.
    pub deviation_gains: Vec<T>,
    pub epsilon: T,
    /// Every distinct probed alternative loses more than `ε`.
    pub strict: bool,
    pub payoffs: PayoffVector<T>,
    pub responses: Vec<BestResponse<T>>,
}

impl<T: Real> NashVerdict<T> {
    pub fn max_gain(&self) -> T {
        self.deviation_gains.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Checks whether `profile` is an `ε`-Nash equilibrium. Each player deviates
/// within the space of their own strategy point.
pub fn verify_nash<T: Real>(
    game: &GameDefinition<T>,
    profile: &[StrategyPoint<T>],
    eps: T,
    config: &ResponseConfig,
) -> Result<NashVerdict<T>> {
    if profile.len() != game.players() {
        return Err(Error::Dimension(format!(
            "{} strategies for a {}-player game",
            profile.len(),
            game.players()
        )));
    }
    if !(eps >= T::zero()) {
        return Err(Error::Domain("epsilon must be non-negative".into()));
    }
    let unitaries: Vec<ComplexMatrix<T>> = profile.iter().map(StrategyPoint::to_unitary).collect();
    let payoffs = game.payoffs(&unitaries)?;
    let mut gains = Vec::with_capacity(profile.len());
    let mut strict = true;
    let mut responses = Vec::with_capacity(profile.len());
    for (player, point) in profile.iter().enumerate() {
        let mut others = unitaries.clone();
        others.remove(player);
        let br = best_response_unchecked(game, player, &others, point.space(), config)?;
        let current = payoffs[player];
        gains.push(br.value - current);
        strict &= br.best_distinct_alternative(point) < current - eps;
        responses.push(br);
    }
    let is_equilibrium = gains.iter().all(|g| *g <= eps);
    Ok(NashVerdict {
        is_equilibrium,
        deviation_gains: gains,
        epsilon: eps,
        strict: is_equilibrium && strict,
        payoffs,
        responses,
    })
}

/// Gain of the best unilateral deviation from the symmetric SU(2) profile
/// `(v, …, v)`; one quadratic form suffices for a symmetric game.
pub(crate) fn symmetric_su2_gain<T: Real>(game: &GameDefinition<T>, v: [T; 4]) -> Result<(T, T)> {
    let u = crate::linalg::su2_unchecked(v);
    let others = vec![u; game.players() - 1];
    let m = quadratic_form_unchecked(game, 0, &others);
    let eig = crate::linalg::jacobi_eigs(&m)?;
    let payoff = m.quad(&v);
    Ok((eig.max_eigenvalue() - payoff, payoff))
}

pub(crate) fn eps_or_default<T: Real>(eps: Option<f64>, space: Space) -> T {
    lit(eps.unwrap_or_else(|| default_eps(space)))
}
