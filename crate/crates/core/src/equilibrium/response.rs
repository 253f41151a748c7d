use crate::error::{Error, Result};
use crate::game::GameDefinition;
use crate::linalg::{
    jacobi_eigs, su2_unchecked, two_param_diag_unchecked, two_param_offdiag_unchecked, ComplexMatrix, EigenDecomposition4,
    SymmetricMatrix4,
};
use crate::scalar::{lit, Real};
use crate::strategy::{canonical_sign, Move, Space, StrategyPoint};

/// Lattice and refinement settings for best responses over the
/// two-parameter spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseConfig {
    pub theta_steps: usize,
    pub phi_steps: usize,
    /// Polish the best lattice cell with alternating golden-section searches.
    pub refine: bool,
    /// Bracket width at which golden-section searches stop.
    pub refine_tol: f64,
}

impl Default for ResponseConfig {
    fn default() -> Self {
        Self {
            theta_steps: 181,
            phi_steps: 91,
            refine: true,
            refine_tol: 1e-8,
        }
    }
}

impl ResponseConfig {
    /// 37x19 lattice (5 degree steps), used for screening.
    pub fn coarse() -> Self {
        Self {
            theta_steps: 37,
            phi_steps: 19,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if self.theta_steps < 2 || self.phi_steps < 2 {
            return Err(Error::Domain(format!(
                "response lattice {}x{} needs at least 2 points per axis",
                self.theta_steps, self.phi_steps
            )));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::Domain("refinement tolerance must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn steps<T: Real>(&self) -> (T, T) {
        (
            T::PI() / lit((self.theta_steps - 1) as f64),
            T::FRAC_PI_2() / lit((self.phi_steps - 1) as f64),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseMethod {
    /// Top eigenspace of the response quadratic form.
    Eigen,
    /// Lattice scan, optionally refined.
    Grid,
    /// Both classical moves evaluated.
    Enumeration,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Probe<T> {
    Eigen(EigenDecomposition4<T>),
    Lattice(Vec<T>),
    Moves([T; 2]),
}

/// Best attainable payoff of one player against fixed opponents.
#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse<T> {
    pub space: Space,
    pub value: T,
    /// One point for lattice and classical responses; an orthonormal basis
    /// of the top eigenspace for SU(2).
    pub argmax: Vec<StrategyPoint<T>>,
    pub method: ResponseMethod,
    pub(crate) probe: Probe<T>,
    pub(crate) config: ResponseConfig,
}

impl<T: Real> BestResponse<T> {
    pub fn eigen(&self) -> Option<&EigenDecomposition4<T>> {
        match &self.probe {
            Probe::Eigen(e) => Some(e),
            _ => None,
        }
    }

    /// Largest payoff among probed alternatives that differ from `current`.
    ///
    /// SU(2): the largest eigenvalue outside a one-dimensional top eigenspace
    /// (the full `λ_max` when the top eigenspace is degenerate). Lattice:
    /// cells whose unitary is more than two lattice steps from `current`.
    pub(crate) fn best_distinct_alternative(&self, current: &StrategyPoint<T>) -> T {
        match &self.probe {
            Probe::Eigen(e) => {
                if e.top_eigenspace.len() > 1 {
                    e.eigenvalues[0]
                } else {
                    e.eigenvalues[1]
                }
            }
            Probe::Moves(v) => match current.in_space(Space::Classical) {
                Some(StrategyPoint::Classical(Move::Cooperate)) => v[1],
                Some(StrategyPoint::Classical(Move::Defect)) => v[0],
                _ => v[0].max(v[1]),
            },
            Probe::Lattice(values) => {
                let (ht, hp) = self.config.steps::<T>();
                let radius = (ht.max(hp)) * (T::one() + T::one());
                let u = current.to_unitary();
                values
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| {
                        let (theta, phi) = lattice_angles::<T>(*k, &self.config);
                        let alt = lattice_unitary(self.space, theta, phi);
                        alt.max_abs_diff_up_to_sign(&u) > radius
                    })
                    .map(|(_, v)| *v)
                    .fold(T::neg_infinity(), T::max)
            }
        }
    }
}

fn lattice_angles<T: Real>(k: usize, config: &ResponseConfig) -> (T, T) {
    let np = config.phi_steps;
    (
        crate::strategy::lattice_value(k / np, config.theta_steps, T::PI()),
        crate::strategy::lattice_value(k % np, np, T::FRAC_PI_2()),
    )
}

fn lattice_unitary<T: Real>(space: Space, theta: T, phi: T) -> ComplexMatrix<T> {
    if space == Space::TwoParamDiag {
        two_param_diag_unchecked(theta, phi)
    } else {
        two_param_offdiag_unchecked(theta, phi)
    }
}

fn check_others<T: Real>(game: &GameDefinition<T>, player: usize, others: &[ComplexMatrix<T>]) -> Result<()> {
    game.check_player(player)?;
    if others.len() + 1 != game.players() {
        return Err(Error::Dimension(format!(
            "{} opposing strategies for a {}-player game",
            others.len(),
            game.players()
        )));
    }
    for u in others {
        if u.rows() != 2 || u.cols() != 2 {
            return Err(Error::Dimension(format!("{}x{} strategy (expected 2x2)", u.rows(), u.cols())));
        }
        u.ensure_unitary(T::UNIT_TOL)?;
    }
    Ok(())
}

/// Evaluates `player`'s payoff for many own strategies against fixed others.
struct Responder<'a, T> {
    game: &'a GameDefinition<T>,
    player: usize,
    profile: Vec<ComplexMatrix<T>>,
}

impl<'a, T: Real> Responder<'a, T> {
    fn new(game: &'a GameDefinition<T>, player: usize, others: &[ComplexMatrix<T>]) -> Self {
        let mut profile = others.to_vec();
        profile.insert(player, ComplexMatrix::identity(2));
        Self { game, player, profile }
    }

    fn payoff(&mut self, u: ComplexMatrix<T>) -> T {
        self.profile[self.player] = u;
        self.game.payoff_unchecked(&self.profile, self.player)
    }
}

pub(crate) fn quadratic_form_unchecked<T: Real>(
    game: &GameDefinition<T>,
    player: usize,
    others: &[ComplexMatrix<T>],
) -> SymmetricMatrix4<T> {
    let mut r = Responder::new(game, player, others);
    let mut diag = [T::zero(); 4];
    for (i, d) in diag.iter_mut().enumerate() {
        let mut e = [T::zero(); 4];
        e[i] = T::one();
        *d = r.payoff(su2_unchecked(e));
    }
    let h = T::FRAC_1_SQRT_2();
    let two = T::one() + T::one();
    SymmetricMatrix4::from_upper(|i, j| {
        if i == j {
            return diag[i];
        }
        let mut e = [T::zero(); 4];
        e[i] = h;
        e[j] = h;
        r.payoff(su2_unchecked(e)) - (diag[i] + diag[j]) / two
    })
}

/// Response quadratic form: `payoff(player; v) = vᵀ M v` for every unit
/// SU(2) coefficient vector `v`, with `others` fixed in player order.
///
/// Entries come from payoffs at the 4 basis vectors and the 6 normalized
/// pairwise sums.
pub fn quadratic_form<T: Real>(
    game: &GameDefinition<T>,
    player: usize,
    others: &[ComplexMatrix<T>],
) -> Result<SymmetricMatrix4<T>> {
    check_others(game, player, others)?;
    Ok(quadratic_form_unchecked(game, player, others))
}

/// Best response of `player` within `space` against `others`.
pub fn best_response<T: Real>(
    game: &GameDefinition<T>,
    player: usize,
    others: &[ComplexMatrix<T>],
    space: Space,
    config: &ResponseConfig,
) -> Result<BestResponse<T>> {
    check_others(game, player, others)?;
    best_response_unchecked(game, player, others, space, config)
}

pub(crate) fn best_response_unchecked<T: Real>(
    game: &GameDefinition<T>,
    player: usize,
    others: &[ComplexMatrix<T>],
    space: Space,
    config: &ResponseConfig,
) -> Result<BestResponse<T>> {
    match space {
        Space::Su2 => {
            let eig = jacobi_eigs(&quadratic_form_unchecked(game, player, others))?;
            Ok(BestResponse {
                space,
                value: eig.max_eigenvalue(),
                argmax: eig
                    .top_eigenspace
                    .iter()
                    .map(|v| StrategyPoint::Su2(canonical_sign(*v)))
                    .collect(),
                method: ResponseMethod::Eigen,
                probe: Probe::Eigen(eig),
                config: *config,
            })
        }
        Space::Classical => {
            let mut r = Responder::new(game, player, others);
            let moves = [Move::Cooperate, Move::Defect];
            let values = moves.map(|m| r.payoff(StrategyPoint::Classical(m).to_unitary()));
            let best = if values[1] > values[0] { 1 } else { 0 };
            Ok(BestResponse {
                space,
                value: values[best],
                argmax: vec![StrategyPoint::Classical(moves[best])],
                method: ResponseMethod::Enumeration,
                probe: Probe::Moves(values),
                config: *config,
            })
        }
        Space::TwoParamDiag | Space::TwoParamOffdiag => {
            config.check()?;
            let mut r = Responder::new(game, player, others);
            let n = config.theta_steps * config.phi_steps;
            let mut values = Vec::with_capacity(n);
            let mut best = 0;
            for k in 0..n {
                let (theta, phi) = lattice_angles::<T>(k, config);
                let v = r.payoff(lattice_unitary(space, theta, phi));
                if k == 0 || v > values[best] {
                    best = k;
                }
                values.push(v);
            }
            let (mut theta, mut phi) = lattice_angles::<T>(best, config);
            let mut value = values[best];
            if config.refine {
                let mut f = |t: T, p: T| r.payoff(lattice_unitary(space, t, p));
                (theta, phi, value) = refine(&mut f, theta, phi, value, config);
            }
            Ok(BestResponse {
                space,
                value,
                argmax: vec![StrategyPoint::from_angles(space, theta, phi)?],
                method: ResponseMethod::Grid,
                probe: Probe::Lattice(values),
                config: *config,
            })
        }
    }
}

const MAX_REFINE_ROUNDS: usize = 100;

/// Alternating golden-section ascent on `θ` then `φ`, each within one
/// lattice step of the incumbent, until neither coordinate moves by more
/// than the tolerance. Only strict improvements are accepted.
fn refine<T: Real>(
    f: &mut impl FnMut(T, T) -> T,
    mut theta: T,
    mut phi: T,
    mut value: T,
    config: &ResponseConfig,
) -> (T, T, T) {
    let (ht, hp) = config.steps::<T>();
    let tol = lit::<T>(config.refine_tol);
    for _ in 0..MAX_REFINE_ROUNDS {
        let (t_new, v_t) = golden_max(
            |t| f(t, phi),
            (theta - ht).max(T::zero()),
            (theta + ht).min(T::PI()),
            tol,
        );
        let mut moved = T::zero();
        if v_t > value {
            moved = (t_new - theta).abs();
            theta = t_new;
            value = v_t;
        }
        let (p_new, v_p) = golden_max(
            |p| f(theta, p),
            (phi - hp).max(T::zero()),
            (phi + hp).min(T::FRAC_PI_2()),
            tol,
        );
        if v_p > value {
            moved = moved.max((p_new - phi).abs());
            phi = p_new;
            value = v_p;
        }
        if moved < tol {
            break;
        }
    }
    (theta, phi, value)
}

/// Golden-section maximization on `[lo, hi]`; the endpoints are candidates too.
pub(crate) fn golden_max<T: Real>(mut f: impl FnMut(T) -> T, lo: T, hi: T, tol: T) -> (T, T) {
    let inv_phi = (lit::<T>(5.0).sqrt() - T::one()) / (T::one() + T::one());
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = (a + b) / (T::one() + T::one());
    [(lo, f(lo)), (hi, f(hi)), (mid, f(mid)), (c, fc), (d, fd)]
        .into_iter()
        .fold((mid, T::neg_infinity()), |best, cand| if cand.1 > best.1 { cand } else { best })
}
