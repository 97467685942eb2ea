//! Complex 3x3 symmetric tensors for polarizabilities and photon structure.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Cartesian index of the x axis.
pub const X: usize = 0;
/// Cartesian index of the y axis.
pub const Y: usize = 1;
/// Cartesian index of the z axis.
pub const Z: usize = 2;

/// A 3x3 complex tensor. Every constructor in this crate produces a
/// symmetric tensor (reciprocity); [`Tensor3C::is_symmetric`] is available
/// for validation of externally assembled values.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tensor3C {
    entries: [[Complex64; 3]; 3],
}

impl Tensor3C {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([1.0, 1.0, 1.0])
    }

    pub fn from_diagonal(diag: [Complex64; 3]) -> Self {
        let mut t = Self::zero();
        for (i, d) in diag.into_iter().enumerate() {
            t.entries[i][i] = d;
        }
        t
    }

    pub fn from_real_diagonal(diag: [f64; 3]) -> Self {
        Self::from_diagonal(diag.map(|d| Complex64::new(d, 0.0)))
    }

    pub fn from_rows(rows: [[Complex64; 3]; 3]) -> Self {
        Self { entries: rows }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    /// Sets the (i, j) and (j, i) entries to the same value.
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i][j] = value;
        self.entries[j][i] = value;
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Entrywise imaginary part as a real-valued tensor.
    pub fn im(&self) -> Tensor3C {
        self.map(|v| Complex64::new(v.im, 0.0))
    }

    /// Entrywise real part.
    pub fn re(&self) -> Tensor3C {
        self.map(|v| Complex64::new(v.re, 0.0))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Tensor3C {
        self.map(|v| v.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Tensor3C {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] = f(self.entries[i][j]);
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for row in &self.entries {
            for v in row {
                m = m.max(v.norm());
            }
        }
        m
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if (self.entries[i][j] - self.entries[j][i]).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Quadratic form n^T A n for a real vector n.
    pub fn quad_form(&self, n: [f64; 3]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += self.entries[i][j] * (n[i] * n[j]);
            }
        }
        acc
    }

    /// Matrix-vector product with a real vector.
    pub fn mul_vec(&self, n: [f64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[i] += v * n[j];
            }
        }
        out
    }

    /// Tr(A B), the trace of the matrix product.
    pub fn trace_product(&self, other: &Tensor3C) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += self.entries[i][j] * other.entries[j][i];
            }
        }
        acc
    }
}

impl Add for Tensor3C {
    type Output = Tensor3C;
    fn add(self, rhs: Tensor3C) -> Tensor3C {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }
}

impl Sub for Tensor3C {
    type Output = Tensor3C;
    fn sub(self, rhs: Tensor3C) -> Tensor3C {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.entries[i][j] -= rhs.entries[i][j];
            }
        }
        out
    }
}

impl Neg for Tensor3C {
    type Output = Tensor3C;
    fn neg(self) -> Tensor3C {
        self.map(|v| -v)
    }
}

impl Mul<f64> for Tensor3C {
    type Output = Tensor3C;
    fn mul(self, rhs: f64) -> Tensor3C {
        self.map(|v| v * rhs)
    }
}

impl Mul<Complex64> for Tensor3C {
    type Output = Tensor3C;
    fn mul(self, rhs: Complex64) -> Tensor3C {
        self.map(|v| v * rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_and_quad_form() {
        let t = Tensor3C::from_real_diagonal([1.0, 2.0, 3.0]);
        assert_eq!(t.trace(), Complex64::new(6.0, 0.0));
        let q = t.quad_form([0.0, 0.0, 1.0]);
        assert_eq!(q, Complex64::new(3.0, 0.0));
    }

    #[test]
    fn symmetric_setter_keeps_symmetry() {
        let mut t = Tensor3C::zero();
        t.set_symmetric(X, Z, Complex64::new(0.5, -1.0));
        assert_eq!(t.entry(Z, X), t.entry(X, Z));
        assert!(t.is_symmetric(0.0));
    }

    #[test]
    fn trace_product_matches_manual_sum() {
        let mut a = Tensor3C::from_real_diagonal([1.0, 0.0, 2.0]);
        a.set_symmetric(X, Z, Complex64::new(0.0, 1.0));
        let b = Tensor3C::identity() * 3.0;
        // Tr(A B) = 3 Tr(A) for B = 3 I.
        assert_eq!(a.trace_product(&b), a.trace() * 3.0);
    }
}
