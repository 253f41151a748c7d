//! Tilted symmetric equilibria of the three-player game.
//!
//! Both families are arcs `a·A - b·B` with `a, b > 0` and `a² + b² = 1`
//! between two orthonormal anchor vectors:
//!
//! * planar: `A = (0, 0, 1, 0)`, `B = (0, 0, 0, s)`
//! * tilted: `A = (√3/2, 0, 0, s/2)`, `B = (0, √3/2, s/2, 0)`
//!
//! with `s = ±1`.

use super::nash::symmetric_su2_gain;
use crate::error::Result;
use crate::game::GameDefinition;
use crate::linalg::{dot, su2_unchecked};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Planar,
    Tilted,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 2] = [FamilyKind::Planar, FamilyKind::Tilted];

    /// Anchor vectors `(A, B)` for orientation `sign`.
    pub fn anchors<T: Real>(self, sign: i8) -> ([T; 4], [T; 4]) {
        let z = T::zero();
        let one = T::one();
        let s = if sign < 0 { -one } else { one };
        match self {
            FamilyKind::Planar => ([z, z, one, z], [z, z, z, s]),
            FamilyKind::Tilted => {
                let h = lit::<T>(0.5);
                let r = lit::<T>(3.0).sqrt() * h;
                ([r, z, z, s * h], [z, r, s * h, z])
            }
        }
    }

    /// `cos t · A - sin t · B`.
    pub fn point<T: Real>(self, sign: i8, t: T) -> [T; 4] {
        let (a, b) = self.anchors::<T>(sign);
        let (s, c) = t.sin_cos();
        std::array::from_fn(|i| c * a[i] - s * b[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams<T> {
    pub kind: FamilyKind,
    pub sign: i8,
    pub a: T,
    pub b: T,
}

const FIT_RESIDUAL: f64 = 1e-6;
const MIN_COEFFICIENT: f64 = 1e-6;

/// Projects `v` (either sign) onto every family plane and returns the first
/// fit with residual below `1e-6` and both coefficients above `1e-6`.
pub fn fit_family<T: Real>(v: [T; 4]) -> Option<FamilyParams<T>> {
    for kind in FamilyKind::ALL {
        for sign in [1i8, -1] {
            let (anchor_a, anchor_b) = kind.anchors::<T>(sign);
            for w in [v, v.map(|x| -x)] {
                let a = dot(&w, &anchor_a);
                let b = -dot(&w, &anchor_b);
                let residual = (0..4)
                    .map(|i| {
                        let d = w[i] - (a * anchor_a[i] - b * anchor_b[i]);
                        d * d
                    })
                    .sum::<T>()
                    .sqrt();
                if residual < lit(FIT_RESIDUAL) && a > lit(MIN_COEFFICIENT) && b > lit(MIN_COEFFICIENT) {
                    let n = a.hypot(b);
                    return Some(FamilyParams {
                        kind,
                        sign,
                        a: a / n,
                        b: b / n,
                    });
                }
            }
        }
    }
    None
}

const ARC_SAMPLES: usize = 512;
const ROOT_ITERATIONS: usize = 100;

/// Tangential payoff slope along the arc: `τᵀ M(v) v` with `τ = dv/dt`.
fn arc_slope<T: Real>(game: &GameDefinition<T>, kind: FamilyKind, sign: i8, t: T) -> T {
    let v = kind.point(sign, t);
    let tangent = kind.point(sign, t + T::FRAC_PI_2());
    let others = vec![su2_unchecked(v); game.players() - 1];
    let m = super::response::quadratic_form_unchecked(game, 0, &others);
    dot(&tangent, &m.mul_vec(&v))
}

/// Arc parameters `t ∈ (0, π/2)` where the common strategy is stationary
/// along the arc: sign changes of the slope, refined by bisection, plus
/// near-touching minima of its magnitude refined by golden section.
pub fn stationary_points<T: Real>(game: &GameDefinition<T>, kind: FamilyKind, sign: i8) -> Vec<T> {
    let end = T::FRAC_PI_2();
    let ts: Vec<T> = (1..ARC_SAMPLES)
        .map(|k| end * lit::<T>(k as f64) / lit::<T>(ARC_SAMPLES as f64))
        .collect();
    let hs: Vec<T> = ts.iter().map(|&t| arc_slope(game, kind, sign, t)).collect();
    let mut roots = Vec::new();
    let touch = lit::<T>(1e-9);
    for k in 0..ts.len() {
        if hs[k] == T::zero() {
            roots.push(ts[k]);
            continue;
        }
        if k + 1 < ts.len() && hs[k] * hs[k + 1] < T::zero() {
            let (mut lo, mut hi) = (ts[k], ts[k + 1]);
            let lo_sign = hs[k] > T::zero();
            for _ in 0..ROOT_ITERATIONS {
                let mid = (lo + hi) / (T::one() + T::one());
                if (arc_slope(game, kind, sign, mid) > T::zero()) == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push((lo + hi) / (T::one() + T::one()));
        }
        if k > 0 && k + 1 < ts.len() {
            let (a, b, c) = (hs[k - 1].abs(), hs[k].abs(), hs[k + 1].abs());
            if b <= a && b <= c && hs[k - 1] * hs[k + 1] > T::zero() {
                let (t, h) = super::response::golden_max(
                    |t| -arc_slope(game, kind, sign, t).abs(),
                    ts[k - 1],
                    ts[k + 1],
                    T::epsilon().sqrt(),
                );
                if -h <= touch {
                    roots.push(t);
                }
            }
        }
    }
    roots
}

/// Whether any point of either family verifies as a symmetric `ε`-NE.
pub fn family_nash_exists<T: Real>(game: &GameDefinition<T>, eps: T) -> Result<bool> {
    if game.players() != 3 {
        return Ok(false);
    }
    for kind in FamilyKind::ALL {
        for sign in [1i8, -1] {
            for t in stationary_points(game, kind, sign) {
                let v = kind.point(sign, t);
                let (gain, _) = symmetric_su2_gain(game, v)?;
                if gain <= eps && fit_family(v).is_some() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_are_orthonormal() {
        for kind in FamilyKind::ALL {
            for s in [1, -1] {
                let (a, b) = kind.anchors::<f64>(s);
                assert!((dot(&a, &a) - 1.0).abs() < 1e-15);
                assert!((dot(&b, &b) - 1.0).abs() < 1e-15);
                assert!(dot(&a, &b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn fit_recovers_coefficients() {
        let (a, b): (f64, f64) = (0.8, 0.6);
        let v = FamilyKind::Tilted.point(-1, b.atan2(a));
        let fit = fit_family(v.map(|x| -x)).unwrap();
        assert_eq!((fit.kind, fit.sign), (FamilyKind::Tilted, -1));
        assert!((fit.a - a).abs() < 1e-12 && (fit.b - b).abs() < 1e-12);
        assert!((fit.a.powi(2) + fit.b.powi(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn axis_points_are_not_family_members() {
        assert!(fit_family([0.0, 0.0, 1.0, 0.0]).is_none());
        assert!(fit_family([0.0, 3f64.sqrt() / 2.0, 0.5, 0.0]).is_none());
        assert!(fit_family([0.5, 0.5, 0.5, 0.5]).is_none());
    }

    #[test]
    fn family_absent_without_entanglement() {
        let g = GameDefinition::pd3(0.3).unwrap();
        assert!(!family_nash_exists(&g, 1e-9).unwrap());
        let g = GameDefinition::pd3(0.65).unwrap();
        assert!(family_nash_exists(&g, 1e-9).unwrap());
    }
}
