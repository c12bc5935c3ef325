//! Gegenbauer polynomials `G_k^{(n)}` on `[-1, 1]`, normalized so that `G_k^{(n)}(1) = 1`.
//!
//! They are generated by the three-term recurrence
//!
//! ```text
//! G_0 = 1,  G_1 = t,
//! G_k = ((2k + n - 4) t G_{k-1} - (k - 1) G_{k-2}) / (k + n - 3)
//! ```
//!
//! and `G_k^{(n)}` has degree exactly `k` with a positive leading coefficient, which
//! makes the change of basis from monomials a triangular back-substitution.

use crate::error::{Error, Result};
use crate::poly::MonomialPoly;

pub(crate) fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Dimension { n, min: 2 })
    } else {
        Ok(())
    }
}

/// Evaluate `G_k^{(n)}(t)` with the three-term recurrence.
pub fn gegenbauer_eval(n: usize, k: usize, t: f64) -> Result<f64> {
    check_dimension(n)?;
    Ok(eval_unchecked(n, k, t))
}

fn eval_unchecked(n: usize, k: usize, t: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let (mut prev, mut cur) = (1.0, t);
    for j in 2..=k {
        let jf = j as f64;
        let next = ((2.0 * jf + nf - 4.0) * t * cur - (jf - 1.0) * prev) / (jf + nf - 3.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of `G_k^{(n)}`, obtained by running the recurrence on coefficient lists.
pub fn gegenbauer_poly(n: usize, k: usize) -> Result<MonomialPoly> {
    let basis = GegenbauerBasis::new(n, k)?;
    Ok(basis.poly(k))
}

/// Rewrite `p` as `sum_k f_k G_k^{(n)}`.
pub fn to_gegenbauer(n: usize, p: &MonomialPoly) -> Result<GegenbauerExpansion> {
    let basis = GegenbauerBasis::new(n, p.degree())?;
    Ok(basis.expand(p))
}

/// Inverse of [`to_gegenbauer`].
pub fn from_gegenbauer(e: &GegenbauerExpansion) -> MonomialPoly {
    let degree = e.coeffs.len().saturating_sub(1);
    let basis = GegenbauerBasis::new(e.n, degree).expect("expansion dimension already validated");
    let mut out = vec![0.0; degree + 1];
    for (k, &f) in e.coeffs.iter().enumerate() {
        for (j, &g) in basis.rows[k].iter().enumerate() {
            out[j] += f * g;
        }
    }
    MonomialPoly::new(out)
}

/// Monomial coefficient tables of `G_0^{(n)}, ..., G_d^{(n)}` for a fixed `n`.
///
/// Building one basis per dimension and reusing it keeps the hot loops of the
/// bound pipeline allocation-light.
#[derive(Debug, Clone)]
pub struct GegenbauerBasis {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl GegenbauerBasis {
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        check_dimension(n)?;
        let nf = n as f64;
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max_degree + 1);
        rows.push(vec![1.0]);
        if max_degree >= 1 {
            rows.push(vec![0.0, 1.0]);
        }
        for k in 2..=max_degree {
            let kf = k as f64;
            let denom = kf + nf - 3.0;
            let mut row = vec![0.0; k + 1];
            for (j, &c) in rows[k - 1].iter().enumerate() {
                row[j + 1] += (2.0 * kf + nf - 4.0) * c / denom;
            }
            for (j, &c) in rows[k - 2].iter().enumerate() {
                row[j] -= (kf - 1.0) * c / denom;
            }
            rows.push(row);
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.rows.len() - 1
    }

    /// `G_k^{(n)}` as a monomial polynomial. Panics if `k > max_degree()`.
    pub fn poly(&self, k: usize) -> MonomialPoly {
        MonomialPoly::new(self.rows[k].clone())
    }

    /// Back-substitution from the top degree down. Panics if `p` exceeds `max_degree()`.
    pub fn expand(&self, p: &MonomialPoly) -> GegenbauerExpansion {
        let mut coeffs = vec![0.0; p.degree() + 1];
        self.expand_into(p.coeffs(), &mut coeffs);
        GegenbauerExpansion { n: self.n, coeffs }
    }

    /// Allocation-free core of [`expand`](Self::expand): `out.len()` must equal `monomial.len()`.
    pub(crate) fn expand_into(&self, monomial: &[f64], out: &mut [f64]) {
        debug_assert_eq!(monomial.len(), out.len());
        let mut residual = [0.0f64; 16];
        let residual = if monomial.len() <= residual.len() {
            &mut residual[..monomial.len()]
        } else {
            return self.expand_into_heap(monomial, out);
        };
        residual.copy_from_slice(monomial);
        Self::peel(&self.rows, residual, out);
    }

    fn expand_into_heap(&self, monomial: &[f64], out: &mut [f64]) {
        let mut residual = monomial.to_vec();
        Self::peel(&self.rows, &mut residual, out);
    }

    fn peel(rows: &[Vec<f64>], residual: &mut [f64], out: &mut [f64]) {
        for k in (0..residual.len()).rev() {
            let row = &rows[k];
            let f = residual[k] / row[k];
            out[k] = f;
            for (r, &g) in residual[..=k].iter_mut().zip(row) {
                *r -= f * g;
            }
        }
    }
}

/// Coefficients `f_k` of a polynomial in the basis `{G_k^{(n)}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GegenbauerExpansion {
    n: usize,
    coeffs: Vec<f64>,
}

impl GegenbauerExpansion {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dimension(n)?;
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f_k`, zero past the stored length.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// The constant term `f_0`.
    pub fn f0(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn eval(&self, t: f64) -> f64 {
        let nf = self.n as f64;
        let mut acc = self.coeffs[0];
        let (mut prev, mut cur) = (1.0, t);
        for (k, &f) in self.coeffs.iter().enumerate().skip(1) {
            if k >= 2 {
                let kf = k as f64;
                let next = ((2.0 * kf + nf - 4.0) * t * cur - (kf - 1.0) * prev) / (kf + nf - 3.0);
                prev = cur;
                cur = next;
            }
            acc += f * cur;
        }
        acc
    }

    /// Value at `t = 1`, which is just `sum_k f_k`.
    pub fn value_at_one(&self) -> f64 {
        self.coeffs.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn g2(n: f64, t: f64) -> f64 {
        (n * t * t - 1.0) / (n - 1.0)
    }
    fn g3(n: f64, t: f64) -> f64 {
        ((n + 2.0) * t.powi(3) - 3.0 * t) / (n - 1.0)
    }
    fn g4(n: f64, t: f64) -> f64 {
        ((n + 2.0) * (n + 4.0) * t.powi(4) - 6.0 * (n + 2.0) * t * t + 3.0) / (n * n - 1.0)
    }

    #[test]
    fn eval_examples() {
        for n in [2, 3, 7, 40] {
            assert_eq!(gegenbauer_eval(n, 0, 0.37).unwrap(), 1.0);
        }
        assert_abs_diff_eq!(gegenbauer_eval(9, 5, 1.0).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(gegenbauer_eval(7, 2, 0.5).unwrap(), 0.125, epsilon = 1e-15);
    }

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(
            gegenbauer_eval(1, 3, 0.2),
            Err(Error::Dimension { n: 1, min: 2 })
        );
        assert!(gegenbauer_poly(0, 1).is_err());
        assert!(to_gegenbauer(1, &MonomialPoly::constant(1.0)).is_err());
    }

    #[test]
    fn dimension_two_is_chebyshev() {
        // n = 2 gives alpha = beta = -1/2, i.e. Chebyshev T_k.
        for k in 0..8 {
            let t: f64 = 0.3;
            let expected = (k as f64 * t.acos()).cos();
            assert_abs_diff_eq!(gegenbauer_eval(2, k, t).unwrap(), expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn poly_examples() {
        assert_eq!(gegenbauer_poly(11, 1).unwrap().coeffs(), &[0.0, 1.0]);
        let p = gegenbauer_poly(5, 2).unwrap();
        assert!(p.approx_eq(&MonomialPoly::new(vec![-0.25, 0.0, 1.25]), 1e-15));
        let p = gegenbauer_poly(7, 4).unwrap();
        let expected = MonomialPoly::new(vec![3.0 / 48.0, 0.0, -54.0 / 48.0, 0.0, 99.0 / 48.0]);
        assert!(p.approx_eq(&expected, 1e-14), "{:?}", p);
    }

    #[test]
    fn poly_matches_closed_forms() {
        for n in [3usize, 7, 23] {
            let nf = n as f64;
            for (k, f) in [(2, g2 as fn(f64, f64) -> f64), (3, g3), (4, g4)] {
                let p = gegenbauer_poly(n, k).unwrap();
                for t in [-1.0, -0.4, 0.0, 0.61, 1.0] {
                    assert_abs_diff_eq!(p.eval(t), f(nf, t), epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn expansion_of_t_squared() {
        for n in [2usize, 5, 7, 30] {
            let nf = n as f64;
            let e = to_gegenbauer(n, &MonomialPoly::monomial(2)).unwrap();
            assert_abs_diff_eq!(e.coeff(0), 1.0 / nf, epsilon = 1e-15);
            assert_abs_diff_eq!(e.coeff(1), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(e.coeff(2), (nf - 1.0) / nf, epsilon = 1e-15);
        }
    }

    #[test]
    fn expansion_of_quadratic_with_roots() {
        let (n, a, b) = (9usize, 0.3, -0.55);
        let nf = n as f64;
        let e = to_gegenbauer(n, &MonomialPoly::from_roots(&[a, b])).unwrap();
        assert_abs_diff_eq!(e.coeff(0), a * b + 1.0 / nf, epsilon = 1e-15);
        assert_abs_diff_eq!(e.coeff(1), -a - b, epsilon = 1e-15);
        assert_abs_diff_eq!(e.coeff(2), (nf - 1.0) / nf, epsilon = 1e-15);
    }

    #[test]
    fn basis_element_round_trip() {
        let g3 = gegenbauer_poly(13, 3).unwrap();
        let e = to_gegenbauer(13, &g3).unwrap();
        assert_eq!(e.coeffs().len(), 4);
        for k in 0..3 {
            assert_abs_diff_eq!(e.coeff(k), 0.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(e.coeff(3), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn from_gegenbauer_examples() {
        let e = GegenbauerExpansion::new(4, vec![1.0]).unwrap();
        assert_eq!(from_gegenbauer(&e).coeffs(), &[1.0]);
        let e = GegenbauerExpansion::new(7, vec![0.0, 0.0, 1.0]).unwrap();
        let p = from_gegenbauer(&e);
        assert!(p.approx_eq(&MonomialPoly::new(vec![-1.0 / 6.0, 0.0, 7.0 / 6.0]), 1e-15));
    }

    #[test]
    fn expansion_eval_matches_polynomial() {
        let p = MonomialPoly::new(vec![0.2, -1.0, 0.5, 1.5, -0.75]);
        let e = to_gegenbauer(17, &p).unwrap();
        for t in [-1.0, -0.2, 0.45, 1.0] {
            assert_abs_diff_eq!(e.eval(t), p.eval(t), epsilon = 1e-13);
        }
        assert_abs_diff_eq!(e.value_at_one(), p.eval(1.0), epsilon = 1e-13);
    }

    #[test]
    fn wide_polynomials_use_heap_path() {
        let p = MonomialPoly::new((0..20).map(|j| 1.0 / (j as f64 + 1.0)).collect());
        let e = to_gegenbauer(6, &p).unwrap();
        assert!(from_gegenbauer(&e).approx_eq(&p, 1e-9));
    }
}
