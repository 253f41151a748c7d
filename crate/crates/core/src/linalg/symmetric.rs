//! Real symmetric 4x4 matrices and their cyclic Jacobi eigendecomposition.
//!
//! A player's payoff over the SU(2) coefficient sphere is the quadratic form
//! `vᵀ M v`, so the exact best response is the top eigenspace of `M`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{as_f64, Real};

/// Sweep budget for [`jacobi_eigs`]; 4x4 inputs converge in well under ten.
pub const MAX_JACOBI_SWEEPS: usize = 50;

/// Real symmetric 4x4 matrix. Every write goes to both `(i, j)` and `(j, i)`,
/// so the stored matrix is exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricMatrix4<T> {
    m: [[T; 4]; 4],
}

impl<T: Real> Default for SymmetricMatrix4<T> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<T: Real> SymmetricMatrix4<T> {
    pub fn zeros() -> Self {
        Self { m: [[T::zero(); 4]; 4] }
    }

    pub fn diag(d: [T; 4]) -> Self {
        let mut out = Self::zeros();
        for (i, x) in d.into_iter().enumerate() {
            out.m[i][i] = x;
        }
        out
    }

    /// Builds from full rows; rejects inputs that are not exactly symmetric.
    pub fn from_rows(rows: [[T; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if !rows[i][j].is_finite() {
                    return Err(Error::Domain("matrix entries must be finite".into()));
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Domain(format!("entry ({i},{j}) differs from ({j},{i})")));
                }
            }
        }
        Ok(Self { m: rows })
    }

    /// Builds from the upper triangle `(i <= j)` of `f`.
    pub fn from_upper(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in i..4 {
                out.set(i, j, f(i, j));
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.m[i][j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.m[i][j] = x;
        self.m[j][i] = x;
    }

    pub fn rows(&self) -> &[[T; 4]; 4] {
        &self.m
    }

    pub fn mul_vec(&self, v: &[T; 4]) -> [T; 4] {
        std::array::from_fn(|i| (0..4).map(|j| self.m[i][j] * v[j]).sum())
    }

    /// `vᵀ M v`.
    pub fn quad(&self, v: &[T; 4]) -> T {
        dot(v, &self.mul_vec(v))
    }

    pub fn trace(&self) -> T {
        (0..4).map(|i| self.m[i][i]).sum()
    }

    pub fn frobenius(&self) -> T {
        self.m.iter().flatten().map(|x| *x * *x).sum::<T>().sqrt()
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_diagonal_norm(&self) -> T {
        let mut s = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    s = s + self.m[i][j] * self.m[i][j];
                }
            }
        }
        s.sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }
}

pub(crate) fn dot<T: Real>(a: &[T; 4], b: &[T; 4]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

/// Full spectrum of a [`SymmetricMatrix4`], eigenvalues descending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition4<T> {
    pub eigenvalues: [T; 4],
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: [[T; 4]; 4],
    /// Orthonormal basis of every eigenvector within the relative
    /// degeneracy tolerance of the largest eigenvalue.
    pub top_eigenspace: Vec<[T; 4]>,
    pub sweeps: usize,
}

impl<T: Real> EigenDecomposition4<T> {
    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }

    /// Orthogonal projection of `v` onto the top eigenspace.
    pub fn project_top(&self, v: &[T; 4]) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for e in &self.top_eigenspace {
            let c = dot(e, v);
            for i in 0..4 {
                out[i] = out[i] + c * e[i];
            }
        }
        out
    }

    /// `Σ λ_k v_k v_kᵀ`.
    pub fn reconstruct(&self) -> SymmetricMatrix4<T> {
        SymmetricMatrix4::from_upper(|i, j| {
            (0..4)
                .map(|k| self.eigenvalues[k] * self.eigenvectors[k][i] * self.eigenvectors[k][j])
                .sum()
        })
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps all `(p, q)` pairs with exact annihilating rotations until the
/// off-diagonal norm drops to `T::JACOBI_TOL · max(1, ‖M‖_F)`.
pub fn jacobi_eigs<T: Real>(m: &SymmetricMatrix4<T>) -> Result<EigenDecomposition4<T>> {
    if m.rows().iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Domain("matrix entries must be finite".into()));
    }
    let target = T::JACOBI_TOL * T::one().max(m.frobenius());
    let mut a = *m.rows();
    let mut v = [[T::zero(); 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }

    let two = T::one() + T::one();
    let mut sweeps = 0;
    loop {
        let off = SymmetricMatrix4 { m: a }.off_diagonal_norm();
        if off <= target {
            break;
        }
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: as_f64(off),
            });
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq.is_zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = if theta.abs() > T::max_value().sqrt().sqrt() {
                    (two * theta).recip()
                } else {
                    let sgn = if theta < T::zero() { -T::one() } else { T::one() };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap_or(Ordering::Equal));
    let eigenvalues = order.map(|k| a[k][k]);
    let eigenvectors = order.map(|k| std::array::from_fn(|i| v[i][k]));
    let lmax = eigenvalues[0];
    let cutoff = lmax - T::DEGENERACY_TOL * T::one().max(lmax.abs());
    let top_eigenspace = (0..4)
        .filter(|&k| eigenvalues[k] >= cutoff)
        .map(|k| eigenvectors[k])
        .collect();
    Ok(EigenDecomposition4 {
        eigenvalues,
        eigenvectors,
        top_eigenspace,
        sweeps,
    })
}
