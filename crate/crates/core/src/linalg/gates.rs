//! Gate constructors: Pauli operators, the flip operator, the entangling gate
//! and the three strategy parameterizations.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::{kron_all, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::{as_f64, Real};

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn im<T: Real>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}

pub fn identity2<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::identity(2)
}

pub fn sigma_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_2x2(Complex::zero(), Complex::one(), Complex::one(), Complex::zero())
}

pub fn sigma_y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_2x2(Complex::zero(), -Complex::i(), Complex::i(), Complex::zero())
}

pub fn sigma_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_2x2(Complex::one(), Complex::zero(), Complex::zero(), -Complex::one())
}

/// The two-player "defect" operator `[[0, 1], [-1, 0]]` (equal to `iσy`).
pub fn flip<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_2x2(Complex::zero(), Complex::one(), -Complex::one(), Complex::zero())
}

/// Checks `lo <= x <= hi` with a rounding allowance and clamps into range.
pub(crate) fn check_range<T: Real>(name: &str, x: T, lo: T, hi: T) -> Result<T> {
    let slack = T::UNIT_TOL;
    if !x.is_finite() || x < lo - slack || x > hi + slack {
        return Err(Error::Domain(format!(
            "{name} = {} outside [{}, {}]",
            as_f64(x),
            as_f64(lo),
            as_f64(hi)
        )));
    }
    Ok(x.max(lo).min(hi))
}

/// Validates an entanglement parameter against `[0, π/2]`.
pub fn check_gamma<T: Real>(gamma: T) -> Result<T> {
    check_range("gamma", gamma, T::zero(), T::FRAC_PI_2())
}

/// Involutory generator of the entangling gate: `D⊗D` for two players,
/// `σx⊗σx⊗σx` for three.
pub fn entangler_generator<T: Real>(players: usize) -> Result<ComplexMatrix<T>> {
    match players {
        2 => Ok(kron_all(&[flip(), flip()])),
        3 => Ok(kron_all(&[sigma_x(), sigma_x(), sigma_x()])),
        n => Err(Error::Domain(format!("{n} players (expected 2 or 3)"))),
    }
}

/// `J(γ) = exp(i γ/2 G) = cos(γ/2) I + i sin(γ/2) G`, exact because `G² = I`.
pub fn entangler<T: Real>(players: usize, gamma: T) -> Result<ComplexMatrix<T>> {
    let gamma = check_gamma(gamma)?;
    let g = entangler_generator::<T>(players)?;
    let half = gamma / (T::one() + T::one());
    let dim = g.rows();
    Ok(ComplexMatrix::identity(dim)
        .scale(re(half.cos()))
        .add(&g.scale(im(half.sin()))))
}

/// `[[e^{iφ} cos(θ/2), sin(θ/2)], [-sin(θ/2), e^{-iφ} cos(θ/2)]]`, the
/// phase-on-diagonal two-parameter family; `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
pub fn unitary_from_two_param_diag<T: Real>(theta: T, phi: T) -> Result<ComplexMatrix<T>> {
    let theta = check_range("theta", theta, T::zero(), T::PI())?;
    let phi = check_range("phi", phi, T::zero(), T::FRAC_PI_2())?;
    Ok(two_param_diag_unchecked(theta, phi))
}

pub(crate) fn two_param_diag_unchecked<T: Real>(theta: T, phi: T) -> ComplexMatrix<T> {
    let half = theta / (T::one() + T::one());
    let (s, c) = half.sin_cos();
    let phase = Complex::from_polar(T::one(), phi);
    ComplexMatrix::from_2x2(phase * c, re(s), re(-s), phase.conj() * c)
}

/// `[[cos(θ/2), e^{iφ} sin(θ/2)], [-e^{-iφ} sin(θ/2), cos(θ/2)]]`, the
/// phase-off-diagonal two-parameter family; `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
pub fn unitary_from_two_param_offdiag<T: Real>(theta: T, phi: T) -> Result<ComplexMatrix<T>> {
    let theta = check_range("theta", theta, T::zero(), T::PI())?;
    let phi = check_range("phi", phi, T::zero(), T::FRAC_PI_2())?;
    Ok(two_param_offdiag_unchecked(theta, phi))
}

pub(crate) fn two_param_offdiag_unchecked<T: Real>(theta: T, phi: T) -> ComplexMatrix<T> {
    let half = theta / (T::one() + T::one());
    let (s, c) = half.sin_cos();
    let phase = Complex::from_polar(T::one(), phi);
    ComplexMatrix::from_2x2(re(c), phase * s, -(phase.conj() * s), re(c))
}

/// Normalizes an SU(2) coefficient vector, accepting only vectors whose
/// norm is within `T::SU2_NORM_TOL` of one.
pub fn normalize_su2<T: Real>(coeffs: [T; 4]) -> Result<[T; 4]> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain("SU(2) coefficients must be finite".into()));
    }
    let norm = coeffs.iter().map(|c| *c * *c).sum::<T>().sqrt();
    if norm.is_zero() {
        return Err(Error::Domain("zero SU(2) coefficient vector".into()));
    }
    if (norm - T::one()).abs() > T::SU2_NORM_TOL {
        return Err(Error::Domain(format!(
            "SU(2) coefficient vector has norm {} (expected 1)",
            as_f64(norm)
        )));
    }
    Ok(coeffs.map(|c| c / norm))
}

/// `w I + i x σx + i y σy + i z σz` for a unit coefficient vector `(w, x, y, z)`.
pub fn unitary_from_su2<T: Real>(coeffs: [T; 4]) -> Result<ComplexMatrix<T>> {
    Ok(su2_unchecked(normalize_su2(coeffs)?))
}

/// Same as [`unitary_from_su2`] for a vector already known to be unit.
pub(crate) fn su2_unchecked<T: Real>([w, x, y, z]: [T; 4]) -> ComplexMatrix<T> {
    ComplexMatrix::from_2x2(
        Complex::new(w, z),
        Complex::new(y, x),
        Complex::new(-y, x),
        Complex::new(w, -z),
    )
}
