use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Move, Space, StrategyPoint};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const PHI_SQRT2: f64 = std::f64::consts::SQRT_2;
/// Root of `x^4 = x + 4`.
const PSI: f64 = 1.533_751_168_755_204_3;

/// Grid size: a `θ × φ` lattice for the two-parameter spaces, a point
/// count for SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Lattice { theta: usize, phi: usize },
    Size(usize),
}

/// Deterministic, lazily generated strategy sample.
#[derive(Debug, Clone)]
pub struct StrategyGrid<T> {
    space: Space,
    resolution: Resolution,
    next: usize,
    len: usize,
    _scalar: std::marker::PhantomData<T>,
}

/// Builds the search grid of `space`.
///
/// Two-parameter spaces use a uniform lattice over `[0, π] × [0, π/2]`
/// with both endpoints on each axis, `θ` varying slowest. SU(2) uses the
/// 8 signed axis points followed by a super-Fibonacci spiral on S³.
/// The classical space has exactly its two moves.
pub fn grid<T: Real>(space: Space, resolution: Resolution) -> Result<StrategyGrid<T>> {
    let len = match (space, resolution) {
        (Space::Classical, _) => 2,
        (Space::TwoParamDiag | Space::TwoParamOffdiag, Resolution::Lattice { theta, phi }) => {
            if theta < 2 || phi < 2 {
                return Err(Error::Domain(format!("lattice {theta}x{phi} needs at least 2 points per axis")));
            }
            theta * phi
        }
        (Space::Su2, Resolution::Size(n)) => {
            if n < 8 {
                return Err(Error::Domain(format!("an SU(2) grid of {n} points cannot hold the 8 axis points")));
            }
            n
        }
        (space, resolution) => {
            return Err(Error::Domain(format!("resolution {resolution:?} does not apply to the {space} space")))
        }
    };
    Ok(StrategyGrid {
        space,
        resolution,
        next: 0,
        len,
        _scalar: std::marker::PhantomData,
    })
}

impl<T: Real> StrategyGrid<T> {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    fn point(&self, i: usize) -> StrategyPoint<T> {
        match (self.space, self.resolution) {
            (Space::Classical, _) => StrategyPoint::Classical(if i == 0 { Move::Cooperate } else { Move::Defect }),
            (space, Resolution::Lattice { theta: nt, phi: np }) => {
                let (it, ip) = (i / np, i % np);
                let theta = lattice_value(it, nt, T::PI());
                let phi = lattice_value(ip, np, T::FRAC_PI_2());
                if space == Space::TwoParamDiag {
                    StrategyPoint::TwoParamDiag { theta, phi }
                } else {
                    StrategyPoint::TwoParamOffdiag { theta, phi }
                }
            }
            (_, Resolution::Size(n)) => StrategyPoint::Su2(if i < 8 {
                axis_point(i)
            } else {
                spiral_point(i - 8, n - 8)
            }),
        }
    }
}

/// `k`-th of `n` evenly spaced values on `[0, hi]`, hitting `hi` exactly.
pub(crate) fn lattice_value<T: Real>(k: usize, n: usize, hi: T) -> T {
    if k + 1 == n {
        hi
    } else {
        hi * lit::<T>(k as f64) / lit::<T>((n - 1) as f64)
    }
}

fn axis_point<T: Real>(i: usize) -> [T; 4] {
    let mut v = [T::zero(); 4];
    v[i / 2] = if i.is_multiple_of(2) { T::one() } else { -T::one() };
    v
}

fn spiral_point<T: Real>(i: usize, n: usize) -> [T; 4] {
    let s = i as f64 + 0.5;
    let t = s / n as f64;
    let r = t.sqrt();
    let big_r = (1.0 - t).sqrt();
    let alpha = std::f64::consts::TAU * s / PHI_SQRT2;
    let beta = std::f64::consts::TAU * s / PSI;
    [r * alpha.sin(), r * alpha.cos(), big_r * beta.sin(), big_r * beta.cos()].map(lit)
}

/// `n` points of the super-Fibonacci spiral on S³ (no axis points).
pub fn super_fibonacci<T: Real>(n: usize) -> Vec<[T; 4]> {
    (0..n).map(|i| spiral_point(i, n)).collect()
}

/// Seed-reproducible multistart points: the super-Fibonacci spiral rotated
/// by a random unit quaternion drawn from `seed`.
pub fn multistart_points<T: Real>(count: usize, seed: u64) -> Vec<[T; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
    let tau = std::f64::consts::TAU;
    let q = [
        (1.0 - u1).sqrt() * (tau * u2).sin(),
        (1.0 - u1).sqrt() * (tau * u2).cos(),
        u1.sqrt() * (tau * u3).sin(),
        u1.sqrt() * (tau * u3).cos(),
    ];
    super_fibonacci::<f64>(count)
        .into_iter()
        .map(|p| quat_mul(q, p).map(lit))
        .collect()
}

fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

impl<T: Real> Iterator for StrategyGrid<T> {
    type Item = StrategyPoint<T>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next == self.len {
            return None;
        }
        let p = self.point(self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.len - self.next;
        (left, Some(left))
    }
}

impl<T: Real> ExactSizeIterator for StrategyGrid<T> {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn norm(v: &[f64; 4]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn small_lattice_has_corners() {
        let pts: Vec<_> = grid::<f64>(Space::TwoParamDiag, Resolution::Lattice { theta: 3, phi: 3 })
            .unwrap()
            .collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0].angles(), Some((0.0, 0.0)));
        assert_eq!(pts[8].angles(), Some((PI, FRAC_PI_2)));
        assert_eq!(pts[1].angles(), Some((0.0, FRAC_PI_2 / 2.0)));
    }

    #[test]
    fn degree_lattice_steps() {
        let pts: Vec<_> = grid::<f64>(Space::TwoParamOffdiag, Resolution::Lattice { theta: 181, phi: 91 })
            .unwrap()
            .collect();
        assert_eq!(pts.len(), 181 * 91);
        let (t1, p1) = pts[91 + 1].angles().unwrap();
        assert!((t1 - 1f64.to_radians()).abs() < 1e-15 && (p1 - 1f64.to_radians()).abs() < 1e-15);
        assert_eq!(pts.last().unwrap().angles(), Some((PI, FRAC_PI_2)));
    }

    #[test]
    fn su2_grid_contains_axes_and_is_unit() {
        let pts: Vec<[f64; 4]> = grid::<f64>(Space::Su2, Resolution::Size(16))
            .unwrap()
            .map(|p| p.to_su2())
            .collect();
        assert_eq!(pts.len(), 16);
        for i in 0..4 {
            for s in [1.0, -1.0] {
                let mut axis = [0.0; 4];
                axis[i] = s;
                assert!(pts.contains(&axis));
            }
        }
        let big: Vec<[f64; 4]> = grid::<f64>(Space::Su2, Resolution::Size(5000)).unwrap().map(|p| p.to_su2()).collect();
        assert!(big.iter().all(|v| (norm(v) - 1.0).abs() < 1e-12));
    }

    #[test]
    fn grids_are_deterministic() {
        let a: Vec<_> = grid::<f64>(Space::Su2, Resolution::Size(300)).unwrap().collect();
        let b: Vec<_> = grid::<f64>(Space::Su2, Resolution::Size(300)).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(multistart_points::<f64>(64, 7), multistart_points::<f64>(64, 7));
        assert_ne!(multistart_points::<f64>(64, 7), multistart_points::<f64>(64, 8));
    }

    #[test]
    fn multistart_points_are_unit() {
        for v in multistart_points::<f64>(64, 0) {
            assert!((norm(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_resolutions_are_rejected() {
        assert!(grid::<f64>(Space::TwoParamDiag, Resolution::Lattice { theta: 1, phi: 5 }).is_err());
        assert!(grid::<f64>(Space::Su2, Resolution::Size(7)).is_err());
        assert!(grid::<f64>(Space::Su2, Resolution::Lattice { theta: 3, phi: 3 }).is_err());
        assert_eq!(grid::<f64>(Space::Classical, Resolution::Size(0)).unwrap().count(), 2);
    }
}
