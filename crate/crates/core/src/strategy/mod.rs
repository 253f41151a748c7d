//! Strategy spaces, the named catalog and search grids.

mod catalog;
mod grid;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    check_range, normalize_su2, su2_unchecked, two_param_diag_unchecked, two_param_offdiag_unchecked, ComplexMatrix,
};
use crate::scalar::{as_f64, lit, Real};

pub use catalog::{catalog_lookup, catalog_names, catalog_names_in, named_in_space, parse_strategy};
pub(crate) use grid::lattice_value;
pub use grid::{grid, multistart_points, super_fibonacci, Resolution, StrategyGrid};

/// Which local operations a player may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// Identity or bit flip only.
    Classical,
    /// `[[e^{iφ}cos(θ/2), sin(θ/2)], [-sin(θ/2), e^{-iφ}cos(θ/2)]]`.
    TwoParamDiag,
    /// `[[cos(θ/2), e^{iφ}sin(θ/2)], [-e^{-iφ}sin(θ/2), cos(θ/2)]]`.
    TwoParamOffdiag,
    /// All of SU(2), `wI + i(xσx + yσy + zσz)`.
    Su2,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::Classical, Space::TwoParamDiag, Space::TwoParamOffdiag, Space::Su2];

    pub fn name(self) -> &'static str {
        match self {
            Space::Classical => "classical",
            Space::TwoParamDiag => "2p-diag",
            Space::TwoParamOffdiag => "2p-offdiag",
            Space::Su2 => "su2",
        }
    }

    pub fn is_two_param(self) -> bool {
        matches!(self, Space::TwoParamDiag | Space::TwoParamOffdiag)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Space::ALL
            .into_iter()
            .find(|sp| sp.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown strategy space `{s}` (classical, 2p-diag, 2p-offdiag, su2)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Cooperate,
    Defect,
}

/// A strategy in one of the spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategyPoint<T> {
    Classical(Move),
    TwoParamDiag { theta: T, phi: T },
    TwoParamOffdiag { theta: T, phi: T },
    /// Unit coefficient vector `(w, x, y, z)`.
    Su2([T; 4]),
}

fn check_angles<T: Real>(theta: T, phi: T) -> Result<(T, T)> {
    Ok((
        check_range("theta", theta, T::zero(), T::PI())?,
        check_range("phi", phi, T::zero(), T::FRAC_PI_2())?,
    ))
}

impl<T: Real> StrategyPoint<T> {
    pub fn two_param_diag(theta: T, phi: T) -> Result<Self> {
        let (theta, phi) = check_angles(theta, phi)?;
        Ok(Self::TwoParamDiag { theta, phi })
    }

    pub fn two_param_offdiag(theta: T, phi: T) -> Result<Self> {
        let (theta, phi) = check_angles(theta, phi)?;
        Ok(Self::TwoParamOffdiag { theta, phi })
    }

    /// Renormalizes near-unit vectors and rejects the rest.
    pub fn su2(coeffs: [T; 4]) -> Result<Self> {
        Ok(Self::Su2(normalize_su2(coeffs)?))
    }

    /// Point of `space` built from two angles. Classical points take
    /// `θ = 0` as cooperate and `θ = π` as defect.
    pub fn from_angles(space: Space, theta: T, phi: T) -> Result<Self> {
        match space {
            Space::TwoParamDiag => Self::two_param_diag(theta, phi),
            Space::TwoParamOffdiag => Self::two_param_offdiag(theta, phi),
            Space::Classical | Space::Su2 => Err(Error::Domain(format!("{space} points are not angle pairs"))),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            Self::Classical(_) => Space::Classical,
            Self::TwoParamDiag { .. } => Space::TwoParamDiag,
            Self::TwoParamOffdiag { .. } => Space::TwoParamOffdiag,
            Self::Su2(_) => Space::Su2,
        }
    }

    /// `(θ, φ)` for two-parameter points.
    pub fn angles(&self) -> Option<(T, T)> {
        match *self {
            Self::TwoParamDiag { theta, phi } | Self::TwoParamOffdiag { theta, phi } => Some((theta, phi)),
            _ => None,
        }
    }

    pub fn to_unitary(&self) -> ComplexMatrix<T> {
        match *self {
            Self::Classical(Move::Cooperate) => two_param_diag_unchecked(T::zero(), T::zero()),
            Self::Classical(Move::Defect) => two_param_diag_unchecked(T::PI(), T::zero()),
            Self::TwoParamDiag { theta, phi } => two_param_diag_unchecked(theta, phi),
            Self::TwoParamOffdiag { theta, phi } => two_param_offdiag_unchecked(theta, phi),
            Self::Su2(v) => su2_unchecked(v),
        }
    }

    /// SU(2) coefficients of the same operator. Every space here lies in SU(2).
    pub fn to_su2(&self) -> [T; 4] {
        let half = |x: T| x / (T::one() + T::one());
        match *self {
            Self::Classical(Move::Cooperate) => [T::one(), T::zero(), T::zero(), T::zero()],
            Self::Classical(Move::Defect) => [T::zero(), T::zero(), T::one(), T::zero()],
            Self::TwoParamDiag { theta, phi } => {
                let (s, c) = half(theta).sin_cos();
                let (sp, cp) = phi.sin_cos();
                [c * cp, T::zero(), s, c * sp]
            }
            Self::TwoParamOffdiag { theta, phi } => {
                let (s, c) = half(theta).sin_cos();
                let (sp, cp) = phi.sin_cos();
                [c, s * sp, s * cp, T::zero()]
            }
            Self::Su2(v) => v,
        }
    }

    /// Same operator, up to sign, expressed in `space`; `None` when it is
    /// not a member of that space.
    pub fn in_space(&self, space: Space) -> Option<Self> {
        if self.space() == space {
            return Some(*self);
        }
        let v = self.to_su2();
        let tol = lit::<T>(1e-9);
        let near = |a: T, b: T| (a - b).abs() <= tol;
        [v, v.map(|x| -x)].into_iter().find_map(|[w, x, y, z]| match space {
            Space::Su2 => Some(Self::Su2(canonical_sign(v))),
            Space::Classical => {
                if near(w, T::one()) {
                    Some(Self::Classical(Move::Cooperate))
                } else if near(y, T::one()) {
                    Some(Self::Classical(Move::Defect))
                } else {
                    None
                }
            }
            Space::TwoParamDiag => {
                if !near(x, T::zero()) || y < -tol || w < -tol || z < -tol {
                    return None;
                }
                let c = w.hypot(z);
                let theta = (y.atan2(c) * (T::one() + T::one())).min(T::PI()).max(T::zero());
                let phi = if c <= tol { T::zero() } else { z.max(T::zero()).atan2(w.max(T::zero())) };
                Some(Self::TwoParamDiag { theta, phi })
            }
            Space::TwoParamOffdiag => {
                if !near(z, T::zero()) || w < -tol || x < -tol || y < -tol {
                    return None;
                }
                let s = x.hypot(y);
                let theta = (s.atan2(w) * (T::one() + T::one())).min(T::PI()).max(T::zero());
                let phi = if s <= tol { T::zero() } else { x.max(T::zero()).atan2(y.max(T::zero())) };
                Some(Self::TwoParamOffdiag { theta, phi })
            }
        })
    }

    /// Catalog name when the operator matches one of the names of its space
    /// (up to sign), otherwise a compact parameter spelling such as
    /// `diag(3.141593;0.000000)` or `su2(0.707107;0.000000;0.707107;0.000000)`.
    pub fn label(&self) -> String {
        if let Some(name) = catalog::matching_name(self) {
            return name.to_string();
        }
        let f = |x: T| {
            let x = as_f64(x);
            // keep "-0.000000" out of labels
            format!("{:.6}", if x.abs() < 5e-7 { 0.0 } else { x })
        };
        match *self {
            Self::Classical(Move::Cooperate) => "C".into(),
            Self::Classical(Move::Defect) => "D".into(),
            Self::TwoParamDiag { theta, phi } => format!("diag({};{})", f(theta), f(phi)),
            Self::TwoParamOffdiag { theta, phi } => format!("offdiag({};{})", f(theta), f(phi)),
            Self::Su2(v) => {
                let v = canonical_sign(v);
                format!("su2({};{};{};{})", f(v[0]), f(v[1]), f(v[2]), f(v[3]))
            }
        }
    }
}

/// Flips `v` so its first component of magnitude above `1e-9` is positive.
pub fn canonical_sign<T: Real>(v: [T; 4]) -> [T; 4] {
    let cut = lit::<T>(1e-9);
    match v.iter().find(|c| c.abs() > cut) {
        Some(c) if *c < T::zero() => v.map(|x| -x),
        _ => v,
    }
}

/// Joins per-player labels with `x`, e.g. `DxD`.
pub fn profile_label<T: Real>(profile: &[StrategyPoint<T>]) -> String {
    profile.iter().map(StrategyPoint::label).collect::<Vec<_>>().join("x")
}

impl<T: Real> fmt::Display for StrategyPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{flip, identity2, sigma_x};
    use num_complex::Complex;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn space_names_round_trip() {
        for sp in Space::ALL {
            assert_eq!(sp.to_string().parse::<Space>().unwrap(), sp);
        }
        assert!("full".parse::<Space>().is_err());
    }

    #[test]
    fn classical_points_are_identity_and_flip() {
        let c = StrategyPoint::<f64>::Classical(Move::Cooperate).to_unitary();
        let d = StrategyPoint::<f64>::Classical(Move::Defect).to_unitary();
        assert_eq!(c.max_abs_diff(&identity2()), 0.0);
        assert!(d.max_abs_diff(&flip()) < 1e-15);
    }

    #[test]
    fn su2_coefficients_match_matrices() {
        let points = [
            StrategyPoint::two_param_diag(1.1, 0.4).unwrap(),
            StrategyPoint::two_param_offdiag(2.3, 1.2).unwrap(),
            StrategyPoint::Classical(Move::Defect),
        ];
        for p in points {
            let via = StrategyPoint::su2(p.to_su2()).unwrap().to_unitary();
            assert!(via.max_abs_diff(&p.to_unitary()) < 1e-15, "{p:?}");
        }
    }

    #[test]
    fn su2_x_axis_is_i_sigma_x() {
        let u = StrategyPoint::su2([0.0, 1.0, 0.0, 0.0]).unwrap().to_unitary();
        assert!(u.max_abs_diff(&sigma_x().scale(Complex::new(0.0, 1.0))) < 1e-15);
    }

    #[test]
    fn conversions_between_spaces() {
        let q = StrategyPoint::<f64>::Su2([0.0, 0.0, 0.0, -1.0]);
        let diag = q.in_space(Space::TwoParamDiag).unwrap();
        let (theta, phi) = diag.angles().unwrap();
        assert!(theta.abs() < 1e-12 && (phi - FRAC_PI_2).abs() < 1e-12);
        assert!(q.in_space(Space::TwoParamOffdiag).is_none());
        assert!(q.in_space(Space::Classical).is_none());

        let isx = StrategyPoint::<f64>::Su2([0.0, 1.0, 0.0, 0.0]);
        let off = isx.in_space(Space::TwoParamOffdiag).unwrap();
        let (theta, phi) = off.angles().unwrap();
        assert!((theta - PI).abs() < 1e-12 && (phi - FRAC_PI_2).abs() < 1e-12);

        let d = StrategyPoint::<f64>::Classical(Move::Defect);
        assert!(d.in_space(Space::TwoParamOffdiag).unwrap().to_unitary().max_abs_diff(&flip()) < 1e-15);
        let back = StrategyPoint::two_param_diag(PI, 0.7).unwrap().in_space(Space::Classical);
        assert_eq!(back, Some(StrategyPoint::Classical(Move::Defect)));
    }

    #[test]
    fn out_of_range_angles_are_rejected() {
        assert!(StrategyPoint::two_param_diag(3.2, 0.0).is_err());
        assert!(StrategyPoint::two_param_offdiag(1.0, -0.1).is_err());
        assert!(StrategyPoint::su2([0.0; 4]).is_err());
    }

    #[test]
    fn labels() {
        let d = StrategyPoint::two_param_diag(PI, 0.0).unwrap();
        let q = StrategyPoint::two_param_diag(0.0, FRAC_PI_2).unwrap();
        assert_eq!(profile_label(&[d, q]), "DxQ");
        let other = StrategyPoint::two_param_diag(1.0, 0.5).unwrap();
        assert_eq!(other.label(), "diag(1.000000;0.500000)");
        let v = StrategyPoint::Su2([-0.6, 0.0, 0.8, 0.0]);
        assert_eq!(v.label(), "su2(0.600000;0.000000;-0.800000;0.000000)");
        assert_eq!(StrategyPoint::Su2([0.0, 0.0, -1.0, 0.0]).label(), "iSy");
        let isy = StrategyPoint::two_param_offdiag(PI, 0.0).unwrap();
        assert_eq!(profile_label(&[isy, isy, isy]), "iSyxiSyxiSy");
    }

    #[test]
    fn canonical_sign_rule() {
        assert_eq!(canonical_sign([0.0, -1e-12, -0.5, 0.5]), [-0.0, 1e-12, 0.5, -0.5]);
        assert_eq!(canonical_sign([0.1, -1.0, 0.0, 0.0]), [0.1, -1.0, 0.0, 0.0]);
    }
}
