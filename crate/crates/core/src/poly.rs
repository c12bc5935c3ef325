//! Dense univariate polynomials in the monomial basis.

use std::ops::{Add, Mul, Sub};

/// Per-coefficient tolerance used by [`MonomialPoly::approx_eq`].
pub const COEFF_TOL: f64 = 1e-12;

/// A real polynomial stored as ascending coefficients: `coeffs[j]` multiplies `t^j`.
///
/// Trailing zeros are stripped on construction, so the zero polynomial is `[0]`
/// and `degree()` is the index of the last nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly {
    coeffs: Vec<f64>,
}

impl MonomialPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { coeffs }
    }

    /// The monic polynomial `(t - r_1)(t - r_2)...`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::constant(1.0), |acc, &r| {
            &acc * &Self::new(vec![-r, 1.0])
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Coefficient-wise comparison with absolute tolerance; missing coefficients count as zero.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|j| (self.coeff(j) - other.coeff(j)).abs() <= tol)
    }
}

impl Default for MonomialPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Vec<f64>> for MonomialPoly {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &MonomialPoly {
    type Output = MonomialPoly;

    fn add(self, rhs: &MonomialPoly) -> MonomialPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MonomialPoly::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &MonomialPoly {
    type Output = MonomialPoly;

    fn sub(self, rhs: &MonomialPoly) -> MonomialPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MonomialPoly::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &MonomialPoly {
    type Output = MonomialPoly;

    fn mul(self, rhs: &MonomialPoly) -> MonomialPoly {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        MonomialPoly::new(out)
    }
}
