//! Games, the quantization pipeline `J† (U_1 ⊗ … ⊗ U_n) J |0…0⟩`, payoffs
//! and the entanglement entropy of the initial state.
//!
//! Basis index bits are read with the first player as the most significant
//! bit, and bit value 0 is the cooperate outcome `C`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{check_gamma, entangler, entangler_generator, kron_all, ComplexMatrix, StateVector};
use crate::scalar::{lit, Real};

const MAX_DIM: usize = 8;

/// Spells basis index `index` as an outcome string over `{C, D}`.
pub fn outcome_label(index: usize, players: usize) -> String {
    (0..players)
        .map(|p| if (index >> (players - 1 - p)) & 1 == 1 { 'D' } else { 'C' })
        .collect()
}

/// Inverse of [`outcome_label`].
pub fn parse_outcome(label: &str) -> Result<usize> {
    label.chars().try_fold(0usize, |acc, ch| match ch {
        'C' => Ok(acc << 1),
        'D' => Ok((acc << 1) | 1),
        _ => Err(Error::Config(format!("outcome key `{label}` is not a string over {{C, D}}"))),
    })
}

fn check_players(players: usize) -> Result<()> {
    if matches!(players, 2 | 3) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{players} players (expected 2 or 3)")))
    }
}

/// Payoff per classical outcome and player.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTable<T> {
    players: usize,
    /// `rows[outcome][player]`.
    rows: Vec<Vec<T>>,
}

impl<T: Real> PayoffTable<T> {
    /// Two-player prisoner's dilemma: mutual cooperation 3, mutual defection 1,
    /// lone defector 5, lone cooperator 0.
    pub fn prisoners_dilemma_2() -> Self {
        Self::from_fn(2, |d, defects| match (d, defects) {
            (0, _) => 3.0,
            (2, _) => 1.0,
            (_, true) => 5.0,
            (_, false) => 0.0,
        })
    }

    /// Three-player prisoner's dilemma: all cooperate 3, all defect 1; a lone
    /// defector gets 5 and the two cooperators 2; a lone cooperator gets 0
    /// and the two defectors 4.
    pub fn prisoners_dilemma_3() -> Self {
        Self::from_fn(3, |d, defects| match (d, defects) {
            (0, _) => 3.0,
            (3, _) => 1.0,
            (1, true) => 5.0,
            (1, false) => 2.0,
            (_, true) => 4.0,
            (_, false) => 0.0,
        })
    }

    /// Symmetric table from `f(number of defectors, this player defects)`.
    fn from_fn(players: usize, f: impl Fn(usize, bool) -> f64) -> Self {
        let rows = (0..1usize << players)
            .map(|b| {
                let d = b.count_ones() as usize;
                (0..players)
                    .map(|p| lit(f(d, (b >> (players - 1 - p)) & 1 == 1)))
                    .collect()
            })
            .collect();
        Self { players, rows }
    }

    /// Builds a table from `(outcome string, payoff tuple)` entries. Every one of
    /// the `2^players` outcomes must appear exactly once with `players` finite payoffs.
    pub fn from_entries<I, S>(players: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<T>)>,
        S: AsRef<str>,
    {
        check_players(players).map_err(|e| Error::Config(e.to_string()))?;
        let dim = 1usize << players;
        let mut rows: Vec<Option<Vec<T>>> = vec![None; dim];
        for (key, payoffs) in entries {
            let key = key.as_ref();
            if key.len() != players {
                return Err(Error::Config(format!(
                    "outcome key `{key}` has length {} (expected {players})",
                    key.len()
                )));
            }
            let index = parse_outcome(key)?;
            if payoffs.len() != players {
                return Err(Error::Config(format!(
                    "outcome `{key}` has {} payoffs (expected {players})",
                    payoffs.len()
                )));
            }
            if payoffs.iter().any(|x| !x.is_finite()) {
                return Err(Error::Config(format!("outcome `{key}` has a non-finite payoff")));
            }
            if rows[index].replace(payoffs).is_some() {
                return Err(Error::Config(format!("outcome `{key}` appears twice")));
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(b, r)| r.ok_or_else(|| Error::Config(format!("missing outcome `{}`", outcome_label(b, players)))))
            .collect::<Result<_>>()?;
        Ok(Self { players, rows })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    #[inline]
    pub fn payoff(&self, outcome: usize, player: usize) -> T {
        self.rows[outcome][player]
    }

    /// `(outcome label, payoffs)` in basis order.
    pub fn entries(&self) -> impl Iterator<Item = (String, &[T])> + '_ {
        self.rows
            .iter()
            .enumerate()
            .map(|(b, r)| (outcome_label(b, self.players), r.as_slice()))
    }

    pub fn min_payoff(&self) -> T {
        self.rows.iter().flatten().copied().fold(T::infinity(), T::min)
    }

    pub fn max_payoff(&self) -> T {
        self.rows.iter().flatten().copied().fold(T::neg_infinity(), T::max)
    }

    /// True when relabelling the players permutes the payoffs accordingly.
    pub fn is_symmetric(&self) -> bool {
        let n = self.players;
        permutations(n).iter().all(|perm| {
            (0..1usize << n).all(|b| {
                let pb = permute_bits(b, perm, n);
                (0..n).all(|p| self.rows[b][p] == self.rows[pb][perm[p]])
            })
        })
    }
}

/// Moves the bit of player `p` to position `perm[p]`.
pub(crate) fn permute_bits(b: usize, perm: &[usize], n: usize) -> usize {
    (0..n).fold(0, |acc, p| {
        let bit = (b >> (n - 1 - p)) & 1;
        acc | (bit << (n - 1 - perm[p]))
    })
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// `G` as a signed permutation of basis states: `G|b⟩ = sign[b] |target[b]⟩`.
#[derive(Debug, Clone, PartialEq)]
struct SignedPermutation<T> {
    target: Vec<usize>,
    sign: Vec<T>,
}

impl<T: Real> SignedPermutation<T> {
    fn from_matrix(g: &ComplexMatrix<T>) -> Self {
        let dim = g.cols();
        let mut target = vec![0; dim];
        let mut sign = vec![T::zero(); dim];
        for col in 0..dim {
            for row in 0..dim {
                let z = g.get(row, col);
                if !z.is_zero() {
                    target[col] = row;
                    sign[col] = z.re;
                }
            }
        }
        Self { target, sign }
    }
}

/// Entangled game: player count, entanglement `γ` and payoff table.
#[derive(Debug, Clone, PartialEq)]
pub struct GameDefinition<T> {
    players: usize,
    gamma: T,
    table: PayoffTable<T>,
    entangler: ComplexMatrix<T>,
    generator: SignedPermutation<T>,
}

impl<T: Real> GameDefinition<T> {
    pub fn new(players: usize, gamma: T, table: PayoffTable<T>) -> Result<Self> {
        check_players(players)?;
        if table.players() != players {
            return Err(Error::Config(format!(
                "payoff table is for {} players, game has {players}",
                table.players()
            )));
        }
        let gamma = check_gamma(gamma)?;
        let generator = SignedPermutation::from_matrix(&entangler_generator(players)?);
        Ok(Self {
            players,
            gamma,
            entangler: entangler(players, gamma)?,
            table,
            generator,
        })
    }

    /// Two-player prisoner's dilemma at entanglement `gamma`.
    pub fn pd2(gamma: T) -> Result<Self> {
        Self::new(2, gamma, PayoffTable::prisoners_dilemma_2())
    }

    /// Three-player prisoner's dilemma at entanglement `gamma`.
    pub fn pd3(gamma: T) -> Result<Self> {
        Self::new(3, gamma, PayoffTable::prisoners_dilemma_3())
    }

    /// Same payoffs at a different entanglement.
    pub fn with_gamma(&self, gamma: T) -> Result<Self> {
        Self::new(self.players, gamma, self.table.clone())
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        1 << self.players
    }

    pub fn table(&self) -> &PayoffTable<T> {
        &self.table
    }

    pub fn entangler(&self) -> &ComplexMatrix<T> {
        &self.entangler
    }

    pub fn is_symmetric(&self) -> bool {
        self.table.is_symmetric()
    }

    /// `J(γ)|0…0⟩`.
    pub fn initial_state(&self) -> StateVector<T> {
        let e0 = StateVector::basis(self.dim(), 0).expect("dimension is 4 or 8");
        e0.evolve(&self.entangler).expect("entangler matches the game dimension")
    }

    fn check_profile(&self, profile: &[ComplexMatrix<T>]) -> Result<()> {
        if profile.len() != self.players {
            return Err(Error::Dimension(format!(
                "{} strategies for a {}-player game",
                profile.len(),
                self.players
            )));
        }
        for u in profile {
            if u.rows() != 2 || u.cols() != 2 {
                return Err(Error::Dimension(format!("{}x{} strategy (expected 2x2)", u.rows(), u.cols())));
            }
            u.ensure_unitary(T::UNIT_TOL)?;
        }
        Ok(())
    }

    /// Final state `J† (⊗ U_i) J |0…0⟩` with its outcome distribution.
    pub fn final_state(&self, profile: &[ComplexMatrix<T>]) -> Result<FinalStateReport<T>> {
        self.check_profile(profile)?;
        let local = kron_all(profile);
        let state = self
            .initial_state()
            .evolve(&local)?
            .evolve(&self.entangler.adjoint())?;
        let outcome_probabilities = state.probabilities();
        let density_matrix_trace = outcome_probabilities.iter().copied().sum();
        Ok(FinalStateReport {
            state,
            outcome_probabilities,
            density_matrix_trace,
        })
    }

    /// Expected payoff of every player, `tr($̂_i ρ_f)`.
    pub fn payoffs(&self, profile: &[ComplexMatrix<T>]) -> Result<PayoffVector<T>> {
        self.check_profile(profile)?;
        let probs = self.probabilities_unchecked(profile);
        Ok(PayoffVector(
            (0..self.players).map(|p| self.expectation(&probs, p)).collect(),
        ))
    }

    /// Outcome distribution of a validated profile.
    pub fn outcome_probabilities(&self, profile: &[ComplexMatrix<T>]) -> Result<Vec<T>> {
        self.check_profile(profile)?;
        Ok(self.probabilities_unchecked(profile)[..self.dim()].to_vec())
    }

    /// Diagonal payoff operator of `player` in the computational basis.
    pub fn payoff_operator(&self, player: usize) -> Result<PayoffOperator<T>> {
        self.check_player(player)?;
        Ok(PayoffOperator {
            diagonal: (0..self.dim()).map(|b| self.table.payoff(b, player)).collect(),
        })
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player < self.players {
            Ok(())
        } else {
            Err(Error::BadPlayer {
                index: player,
                players: self.players,
            })
        }
    }

    fn expectation(&self, probs: &[T; MAX_DIM], player: usize) -> T {
        (0..self.dim()).map(|b| self.table.payoff(b, player) * probs[b]).sum()
    }

    /// Payoff of one player with no validation of the profile.
    pub(crate) fn payoff_unchecked(&self, profile: &[ComplexMatrix<T>], player: usize) -> T {
        let probs = self.probabilities_unchecked(profile);
        self.expectation(&probs, player)
    }

    /// Outcome distribution without forming any `2^n x 2^n` operator.
    ///
    /// `J|0…0⟩ = c|0…0⟩ + i s|1…1⟩`, so `(⊗U)J|0…0⟩` is a sum of two product
    /// states built from the first and second columns of the `U_i`; `J†`
    /// is then `c I - i s G` with `G` a signed permutation.
    pub(crate) fn probabilities_unchecked(&self, profile: &[ComplexMatrix<T>]) -> [T; MAX_DIM] {
        let n = self.players;
        let dim = self.dim();
        let half = self.gamma / (T::one() + T::one());
        let (s, c) = half.sin_cos();
        let mut phi = [Complex::<T>::zero(); MAX_DIM];
        for (b, slot) in phi.iter_mut().enumerate().take(dim) {
            let mut from0 = Complex::new(c, T::zero());
            let mut from1 = Complex::new(T::zero(), s);
            for (p, u) in profile.iter().enumerate() {
                let bit = (b >> (n - 1 - p)) & 1;
                from0 = from0 * u.get(bit, 0);
                from1 = from1 * u.get(bit, 1);
            }
            *slot = from0 + from1;
        }
        let mut probs = [T::zero(); MAX_DIM];
        let minus_is = Complex::new(T::zero(), -s);
        let mut out = [Complex::<T>::zero(); MAX_DIM];
        for b in 0..dim {
            out[b] = out[b] + phi[b] * c;
            let t = self.generator.target[b];
            out[t] = out[t] + phi[b] * minus_is * self.generator.sign[b];
        }
        for b in 0..dim {
            probs[b] = out[b].norm_sqr();
        }
        probs
    }
}

/// Diagonal payoff operator `Σ_b payoff(b) |b⟩⟨b|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffOperator<T> {
    pub diagonal: Vec<T>,
}

impl<T: Real> PayoffOperator<T> {
    /// `tr($̂ ρ)` for a diagonal `$̂`, from the outcome distribution alone.
    pub fn expectation(&self, probabilities: &[T]) -> T {
        self.diagonal.iter().zip(probabilities).map(|(a, p)| *a * *p).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinalStateReport<T> {
    pub state: StateVector<T>,
    pub outcome_probabilities: Vec<T>,
    pub density_matrix_trace: T,
}

/// Expected payoff per player.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffVector<T>(pub Vec<T>);

impl<T: Real> PayoffVector<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }
}

impl<T> std::ops::Index<usize> for PayoffVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

/// Von Neumann entropy of either qubit of `cos(γ/2)|0…0⟩ + i sin(γ/2)|1…1⟩`:
/// `-s ln s - c ln c` with `s = sin²(γ/2)`, `c = cos²(γ/2)` and `0 ln 0 = 0`.
pub fn entanglement_entropy<T: Real>(gamma: T) -> Result<T> {
    let gamma = check_gamma(gamma)?;
    let half = gamma / (T::one() + T::one());
    let xlnx = |x: T| if x > T::zero() { x * x.ln() } else { T::zero() };
    let s = half.sin().powi(2);
    let c = half.cos().powi(2);
    Ok(T::zero() - xlnx(s) - xlnx(c))
}
