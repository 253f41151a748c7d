use std::cmp::Ordering;

use rayon::prelude::*;

use super::family::{fit_family, FamilyParams};
use super::nash::{eps_or_default, symmetric_su2_gain, verify_nash};
use super::response::{best_response_unchecked, quadratic_form_unchecked, ResponseConfig};
use crate::error::{Error, Result};
use crate::game::{GameDefinition, PayoffVector};
use crate::linalg::{dot, jacobi_eigs, su2_unchecked, ComplexMatrix};
use crate::scalar::{lit, Real};
use crate::strategy::{canonical_sign, catalog_names_in, multistart_points, named_in_space, profile_label, Space, StrategyPoint};

/// Settings of the symmetric equilibrium search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// SU(2) multistart seeds drawn from the rotated spiral sampler.
    pub starts: usize,
    pub seed: u64,
    /// `None` selects the default of the space.
    pub eps: Option<f64>,
    pub damping: f64,
    pub max_iterations: usize,
    /// Step size below which the damped iteration counts as converged.
    pub tolerance: f64,
    /// Also start from (or, for two-parameter spaces, test) every catalog
    /// strategy of the space.
    pub include_catalog: bool,
    /// Best-response lattice of the final verification.
    pub response: ResponseConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            seed: 0,
            eps: None,
            damping: 0.5,
            max_iterations: 500,
            tolerance: 1e-10,
            include_catalog: true,
            response: ResponseConfig::default(),
        }
    }
}

impl SearchConfig {
    fn check(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Domain(format!("damping {} outside (0, 1]", self.damping)));
        }
        if let Some(eps) = self.eps {
            if !(eps >= 0.0) {
                return Err(Error::Domain("epsilon must be non-negative".into()));
            }
        }
        Ok(())
    }
}

/// A verified equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<T> {
    pub profile: Vec<StrategyPoint<T>>,
    pub payoffs: PayoffVector<T>,
    pub gamma: T,
    /// Present when the common strategy lies on one of the three-player
    /// tilted families.
    pub family: Option<FamilyParams<T>>,
    pub strict: bool,
    /// Largest unilateral deviation gain found.
    pub max_gain: T,
}

impl<T: Real> EquilibriumReport<T> {
    pub fn label(&self) -> String {
        profile_label(&self.profile)
    }

    pub(crate) fn from_profile(game: &GameDefinition<T>, profile: Vec<StrategyPoint<T>>, eps: T, config: &ResponseConfig) -> Result<Option<Self>> {
        let verdict = verify_nash(game, &profile, eps, config)?;
        if !verdict.is_equilibrium {
            return Ok(None);
        }
        let family = match profile[0] {
            StrategyPoint::Su2(v) if game.players() == 3 && profile.iter().all(|p| *p == profile[0]) => fit_family(v),
            _ => None,
        };
        Ok(Some(Self {
            max_gain: verdict.max_gain(),
            profile,
            payoffs: verdict.payoffs,
            gamma: game.gamma(),
            family,
            strict: verdict.strict,
        }))
    }
}

/// Symmetric pure equilibria `(s, …, s)` of a symmetric game within `space`.
///
/// SU(2): damped best-response iteration from every multistart seed,
/// a Levenberg-Marquardt polish of the stationarity residual, exact
/// verification, and deduplication of vectors equal up to sign.
/// Two-parameter spaces: a 19x10 lattice screened with coarse best
/// responses, pattern-search polish of the local minima of the deviation
/// gain, and lattice verification. An empty result only means the protocol
/// found nothing.
pub fn search_symmetric_ne<T: Real>(
    game: &GameDefinition<T>,
    space: Space,
    config: &SearchConfig,
) -> Result<Vec<EquilibriumReport<T>>> {
    config.check()?;
    if !game.is_symmetric() {
        return Err(Error::Domain("symmetric equilibrium search needs a symmetric payoff table".into()));
    }
    let eps = eps_or_default::<T>(config.eps, space);
    match space {
        Space::Su2 => search_su2(game, config, eps),
        Space::Classical => {
            let mut out = Vec::new();
            for name in catalog_names_in(Space::Classical) {
                let p = named_in_space(name, space)?;
                if let Some(r) = EquilibriumReport::from_profile(game, vec![p; game.players()], eps, &config.response)? {
                    out.push(r);
                }
            }
            Ok(out)
        }
        Space::TwoParamDiag | Space::TwoParamOffdiag => search_two_param(game, space, config, eps),
    }
}

fn normalize<T: Real>(v: [T; 4]) -> [T; 4] {
    let n = dot(&v, &v).sqrt();
    v.map(|x| x / n)
}

fn symmetric_form<T: Real>(game: &GameDefinition<T>, v: [T; 4]) -> crate::linalg::SymmetricMatrix4<T> {
    let others = vec![su2_unchecked(normalize(v)); game.players() - 1];
    quadratic_form_unchecked(game, 0, &others)
}

/// `v ← normalize((1-d) v + d v_top)` where `v_top` is the projection of `v`
/// on the top eigenspace of its own response form.
fn damped_iteration<T: Real>(game: &GameDefinition<T>, start: [T; 4], config: &SearchConfig) -> Result<([T; 4], bool)> {
    let d = lit::<T>(config.damping);
    let tol = lit::<T>(config.tolerance);
    let tiny = lit::<T>(1e-12);
    let mut v = start;
    for _ in 0..config.max_iterations {
        let eig = jacobi_eigs(&symmetric_form(game, v))?;
        let mut top = eig.project_top(&v);
        if dot(&top, &top).sqrt() < tiny {
            top = eig.eigenvectors[0];
        }
        let mut top = normalize(top);
        if dot(&top, &v) < T::zero() {
            top = top.map(|x| -x);
        }
        let next = normalize(std::array::from_fn(|i| (T::one() - d) * v[i] + d * top[i]));
        let step = (0..4)
            .map(|i| (next[i] - v[i]).abs())
            .fold(T::zero(), T::max)
            .min((0..4).map(|i| (next[i] + v[i]).abs()).fold(T::zero(), T::max));
        v = next;
        if step < tol {
            return Ok((v, true));
        }
    }
    Ok((v, false))
}

/// Stationarity residual of the symmetric profile: the tangential part of
/// `M(v) v` plus the norm defect.
fn residual<T: Real>(game: &GameDefinition<T>, v: [T; 4]) -> [T; 5] {
    let u = normalize(v);
    let m = symmetric_form(game, v);
    let mu = m.mul_vec(&u);
    let lam = dot(&u, &mu);
    [
        mu[0] - lam * u[0],
        mu[1] - lam * u[1],
        mu[2] - lam * u[2],
        mu[3] - lam * u[3],
        dot(&v, &v) - T::one(),
    ]
}

fn sq_norm<const N: usize, T: Real>(r: &[T; N]) -> T {
    r.iter().map(|x| *x * *x).sum()
}

/// Gaussian elimination with partial pivoting.
fn solve4<T: Real>(mut a: [[T; 4]; 4], mut b: [T; 4]) -> Option<[T; 4]> {
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(Ordering::Equal))?;
        if a[pivot][col].abs() <= T::min_positive_value() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [T::zero(); 4];
    for row in (0..4).rev() {
        let s: T = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|c| c.is_finite()).then_some(x)
}

const LM_MAX_ITERATIONS: usize = 200;

/// Levenberg-Marquardt on the stationarity residual with a central
/// difference Jacobian. Returns the normalized vector when the residual
/// vanishes to `T::SU2_NORM_TOL`.
fn polish<T: Real>(game: &GameDefinition<T>, start: [T; 4]) -> Option<[T; 4]> {
    let h = T::epsilon().cbrt();
    let two = T::one() + T::one();
    let mut x = start;
    let mut r = residual(game, x);
    let mut cost = sq_norm(&r);
    let mut lambda = lit::<T>(1e-3);
    let floor = T::epsilon() * T::epsilon();
    for _ in 0..LM_MAX_ITERATIONS {
        if cost <= floor {
            break;
        }
        let mut jac = [[T::zero(); 4]; 5];
        for k in 0..4 {
            let mut xp = x;
            let mut xm = x;
            xp[k] = xp[k] + h;
            xm[k] = xm[k] - h;
            let (rp, rm) = (residual(game, xp), residual(game, xm));
            for i in 0..5 {
                jac[i][k] = (rp[i] - rm[i]) / (two * h);
            }
        }
        let mut jtj = [[T::zero(); 4]; 4];
        let mut jtr = [T::zero(); 4];
        for a in 0..4 {
            for b in 0..4 {
                jtj[a][b] = (0..5).map(|i| jac[i][a] * jac[i][b]).sum();
            }
            jtr[a] = (0..5).map(|i| jac[i][a] * r[i]).sum();
        }
        let mut improved = false;
        while lambda < lit(1e12) {
            let mut lhs = jtj;
            for (a, row) in lhs.iter_mut().enumerate() {
                row[a] = row[a] + lambda * (T::one() + jtj[a][a]);
            }
            let Some(step) = solve4(lhs, jtr.map(|g| -g)) else {
                lambda = lambda * lit(10.0);
                continue;
            };
            let trial: [T; 4] = std::array::from_fn(|k| x[k] + step[k]);
            let r_trial = residual(game, trial);
            let c_trial = sq_norm(&r_trial);
            if c_trial < cost {
                x = trial;
                r = r_trial;
                cost = c_trial;
                lambda = (lambda * lit(0.3)).max(lit(1e-12));
                improved = true;
                break;
            }
            lambda = lambda * lit(10.0);
        }
        if !improved {
            break;
        }
    }
    let x = normalize(x);
    let r = residual(game, x);
    (r.iter().map(|c| c.abs()).fold(T::zero(), T::max) <= T::SU2_NORM_TOL).then_some(x)
}

fn lex_cmp<T: Real>(a: &[T], b: &[T]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn search_su2<T: Real>(game: &GameDefinition<T>, config: &SearchConfig, eps: T) -> Result<Vec<EquilibriumReport<T>>> {
    let mut starts = multistart_points::<T>(config.starts, config.seed);
    if config.include_catalog {
        for name in catalog_names_in(Space::Su2) {
            starts.push(named_in_space::<T>(name, Space::Su2)?.to_su2());
        }
    }
    let polished: Vec<Vec<[T; 4]>> = starts
        .par_iter()
        .map(|start| {
            let (end, converged) = damped_iteration(game, *start, config)?;
            let mut seeds = vec![end];
            if !converged {
                seeds.push(*start);
            }
            Ok(seeds.into_iter().filter_map(|s| polish(game, s)).collect())
        })
        .collect::<Result<_>>()?;

    let mut found: Vec<[T; 4]> = Vec::new();
    let overlap_cut = T::one() - lit::<T>(1e-8);
    for v in polished.into_iter().flatten() {
        let (gain, _) = symmetric_su2_gain(game, v)?;
        if gain > eps {
            continue;
        }
        if found.iter().any(|f| dot(f, &v).abs() >= overlap_cut) {
            continue;
        }
        found.push(canonical_sign(v));
    }
    found.sort_by(|a, b| lex_cmp(a, b));
    let mut out = Vec::with_capacity(found.len());
    for v in found {
        let profile = vec![StrategyPoint::Su2(v); game.players()];
        if let Some(r) = EquilibriumReport::from_profile(game, profile, eps, &config.response)? {
            out.push(r);
        }
    }
    Ok(out)
}

/// Gain of the best deviation from the symmetric profile `(s, …, s)`.
fn symmetric_gain<T: Real>(game: &GameDefinition<T>, point: StrategyPoint<T>, config: &ResponseConfig) -> Result<T> {
    let u = point.to_unitary();
    let mut profile = vec![u.clone(); game.players()];
    let payoff = game.payoff_unchecked(&profile, 0);
    profile.remove(0);
    Ok(best_response_unchecked(game, 0, &profile, point.space(), config)?.value - payoff)
}

const SCREEN_THETA: usize = 19;
const SCREEN_PHI: usize = 10;
const SNAP_DISTANCE: f64 = 1e-5;
const PATTERN_MIN_STEP: f64 = 1e-9;

/// Compass search minimizing `f` over `[0, π] × [0, π/2]`.
fn pattern_search<T: Real>(
    mut f: impl FnMut(T, T) -> Result<T>,
    mut theta: T,
    mut phi: T,
    step: (T, T),
) -> Result<(T, T)> {
    let (mut st, mut sp) = step;
    let mut best = f(theta, phi)?;
    let half = lit::<T>(0.5);
    let min_step = lit::<T>(PATTERN_MIN_STEP);
    while st.max(sp) > min_step {
        let mut moved = false;
        for (dt, dp) in [(st, T::zero()), (-st, T::zero()), (T::zero(), sp), (T::zero(), -sp)] {
            let t = (theta + dt).max(T::zero()).min(T::PI());
            let p = (phi + dp).max(T::zero()).min(T::FRAC_PI_2());
            if t == theta && p == phi {
                continue;
            }
            let v = f(t, p)?;
            if v < best {
                best = v;
                theta = t;
                phi = p;
                moved = true;
                break;
            }
        }
        if !moved {
            st = st * half;
            sp = sp * half;
        }
    }
    Ok((theta, phi))
}

fn snap_to_catalog<T: Real>(point: StrategyPoint<T>) -> StrategyPoint<T> {
    let u = point.to_unitary();
    catalog_names_in(point.space())
        .iter()
        .filter_map(|n| named_in_space::<T>(n, point.space()).ok())
        .find(|c| c.to_unitary().max_abs_diff_up_to_sign(&u) <= lit(SNAP_DISTANCE))
        .unwrap_or(point)
}

fn search_two_param<T: Real>(
    game: &GameDefinition<T>,
    space: Space,
    config: &SearchConfig,
    eps: T,
) -> Result<Vec<EquilibriumReport<T>>> {
    let coarse = ResponseConfig::coarse();
    let at = |i: usize, j: usize| -> Result<StrategyPoint<T>> {
        StrategyPoint::from_angles(
            space,
            crate::strategy::lattice_value(i, SCREEN_THETA, T::PI()),
            crate::strategy::lattice_value(j, SCREEN_PHI, T::FRAC_PI_2()),
        )
    };
    let cells: Vec<(usize, usize)> = (0..SCREEN_THETA).flat_map(|i| (0..SCREEN_PHI).map(move |j| (i, j))).collect();
    let gains: Vec<T> = cells
        .par_iter()
        .map(|&(i, j)| symmetric_gain(game, at(i, j)?, &coarse))
        .collect::<Result<_>>()?;
    let gain_at = |i: usize, j: usize| gains[i * SCREEN_PHI + j];
    let minima: Vec<(usize, usize)> = cells
        .iter()
        .copied()
        .filter(|&(i, j)| {
            let g = gain_at(i, j);
            (i.saturating_sub(1)..=(i + 1).min(SCREEN_THETA - 1)).all(|a| {
                (j.saturating_sub(1)..=(j + 1).min(SCREEN_PHI - 1)).all(|b| gain_at(a, b) >= g)
            })
        })
        .collect();
    let step = (
        T::PI() / lit((SCREEN_THETA - 1) as f64),
        T::FRAC_PI_2() / lit((SCREEN_PHI - 1) as f64),
    );
    let polished: Vec<StrategyPoint<T>> = minima
        .par_iter()
        .map(|&(i, j)| {
            let start = at(i, j)?;
            let (t0, p0) = start.angles().expect("two-parameter point");
            let (t, p) = pattern_search(
                |t, p| symmetric_gain(game, StrategyPoint::from_angles(space, t, p)?, &coarse),
                t0,
                p0,
                step,
            )?;
            Ok(snap_to_catalog(StrategyPoint::from_angles(space, t, p)?))
        })
        .collect::<Result<_>>()?;

    let mut candidates = Vec::new();
    if config.include_catalog {
        for name in catalog_names_in(space) {
            candidates.push(named_in_space::<T>(name, space)?);
        }
    }
    candidates.extend(polished);

    let verified: Vec<Option<EquilibriumReport<T>>> = candidates
        .par_iter()
        .map(|p| EquilibriumReport::from_profile(game, vec![*p; game.players()], eps, &config.response))
        .collect::<Result<_>>()?;

    let merge_tol = lit::<T>(1e-8);
    let mut kept: Vec<(EquilibriumReport<T>, crate::linalg::SymmetricMatrix4<T>)> = Vec::new();
    for report in verified.into_iter().flatten() {
        let others: Vec<ComplexMatrix<T>> = vec![report.profile[0].to_unitary(); game.players() - 1];
        let form = quadratic_form_unchecked(game, 0, &others);
        let duplicate = kept.iter().any(|(k, kf)| {
            kf.max_abs_diff(&form) <= merge_tol && k.payoffs.max_abs_diff(&report.payoffs) <= merge_tol
        });
        if !duplicate {
            kept.push((report, form));
        }
    }
    let mut out: Vec<EquilibriumReport<T>> = kept.into_iter().map(|(r, _)| r).collect();
    out.sort_by(|a, b| {
        let (ta, pa) = a.profile[0].angles().expect("two-parameter point");
        let (tb, pb) = b.profile[0].angles().expect("two-parameter point");
        lex_cmp(&[ta, pa], &[tb, pb])
    });
    Ok(out)
}
