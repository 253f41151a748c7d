use std::ops::Mul;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{as_f64, Real};

/// Complex amplitude.
pub type ComplexScalar<T> = Complex<T>;

/// Dense row-major complex matrix, sized for 2 to 8 dimensional gates.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// 2x2 matrix from its four entries `[[a, b], [c, d]]`.
    pub fn from_2x2(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self {
            rows: 2,
            cols: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, z: Complex<T>) {
        self.data[r * self.cols + c] = z;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| *z * k).collect(),
        }
    }

    /// Entrywise sum. Panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    /// Matrix product. Panics on shape mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] = out.data[r * other.cols + c] + a * other.get(k, c);
                }
            }
        }
        out
    }

    /// `self * v` for an amplitude slice of length `cols`.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// `self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).add(&other.matmul(self).scale(-Complex::one()))
    }

    /// `max |U^dagger U - I|` entrywise.
    pub fn unitarity_defect(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Errors unless the matrix is unitary within `tol`.
    pub fn ensure_unitary(&self, tol: T) -> Result<()> {
        let d = self.unitarity_defect();
        if d <= tol {
            Ok(())
        } else {
            Err(Error::NonUnitary { deviation: as_f64(d) })
        }
    }

    /// Distance between two operators modulo a global sign, the phase
    /// ambiguity of SU(2) coefficient vectors.
    pub fn max_abs_diff_up_to_sign(&self, other: &Self) -> T {
        let plus = self.max_abs_diff(other);
        let minus = self.max_abs_diff(&other.scale(-Complex::one()));
        plus.min(minus)
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

/// Kronecker product `a ⊗ b`; the row index of `a` is the most significant.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let s = a.get(ar, ac);
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out.set(ar * b.rows + br, ac * b.cols + bc, s * b.get(br, bc));
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence, left to right.
pub fn kron_all<T: Real>(factors: &[ComplexMatrix<T>]) -> ComplexMatrix<T> {
    factors
        .iter()
        .skip(1)
        .fold(factors.first().cloned().unwrap_or_else(|| ComplexMatrix::identity(1)), |acc, f| {
            kron(&acc, f)
        })
}

/// Normalized pure state of 2 or 3 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Computational basis ket `|index⟩` of the given dimension.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if !matches!(dim, 4 | 8) || index >= dim {
            return Err(Error::Dimension(format!("basis state {index} of dimension {dim}")));
        }
        let mut amplitudes = vec![Complex::zero(); dim];
        amplitudes[index] = Complex::one();
        Ok(Self { amplitudes })
    }

    /// Wraps amplitudes that must already be normalized within `T::UNIT_TOL`.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if !matches!(amplitudes.len(), 4 | 8) {
            return Err(Error::Dimension(format!(
                "state dimension {} (expected 4 or 8)",
                amplitudes.len()
            )));
        }
        let state = Self { amplitudes };
        let defect = (state.norm_sqr() - T::one()).abs();
        if !(defect <= T::UNIT_TOL) {
            return Err(Error::Domain(format!("state norm defect {}", as_f64(defect))));
        }
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Born-rule outcome probabilities in basis order.
    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `U|ψ⟩` for a unitary `U` of matching dimension.
    pub fn evolve(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} operator on a {}-dimensional state",
                u.rows(),
                u.cols(),
                self.dim()
            )));
        }
        Ok(Self {
            amplitudes: u.apply(&self.amplitudes),
        })
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc: Complex<T>, (a, b)| acc + a.conj() * *b)
            .norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_x_flips_both_qubits() {
        let sx = ComplexMatrix::from_2x2(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.));
        let k = kron(&sx, &sx);
        let out = StateVector::basis(4, 0).unwrap().evolve(&k).unwrap();
        assert_eq!(out.amplitudes(), StateVector::basis(4, 3).unwrap().amplitudes());
    }

    #[test]
    fn kron_flip_flip_maps_00_to_plus_11() {
        // D = [[0,1],[-1,0]]: D|0> = -|1>, so D⊗D|00> = (+1)|11>.
        let d = ComplexMatrix::from_2x2(c(0., 0.), c(1., 0.), c(-1., 0.), c(0., 0.));
        let out = StateVector::basis(4, 0).unwrap().evolve(&kron(&d, &d)).unwrap();
        assert_eq!(out.amplitude(3), c(1., 0.));
        assert_eq!(out.amplitude(0), c(0., 0.));
    }

    #[test]
    fn kron_dims_multiply_and_order_is_left_major() {
        let a = ComplexMatrix::from_2x2(c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.));
        let i2 = ComplexMatrix::identity(2);
        let k = kron(&a, &i2);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(0, 2), c(2., 0.));
        assert_eq!(k.get(2, 0), c(3., 0.));
        assert_eq!(k.get(0, 1), c(0., 0.));
    }

    #[test]
    fn from_vec_rejects_bad_length_and_nan() {
        assert!(ComplexMatrix::<f64>::from_vec(2, 2, vec![c(1., 0.); 3]).is_err());
        assert!(ComplexMatrix::<f64>::from_vec(1, 1, vec![c(f64::NAN, 0.)]).is_err());
    }

    #[test]
    fn state_rejects_unnormalized_amplitudes() {
        assert!(StateVector::<f64>::from_amplitudes(vec![c(1., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).is_err());
        assert!(StateVector::<f64>::from_amplitudes(vec![c(1., 0.); 2]).is_err());
    }

    #[test]
    fn non_unitary_reports_deviation() {
        let m = ComplexMatrix::from_2x2(c(2., 0.), c(0., 0.), c(0., 0.), c(1., 0.));
        match m.ensure_unitary(1e-12) {
            Err(Error::NonUnitary { deviation }) => assert!((deviation - 3.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }
}
