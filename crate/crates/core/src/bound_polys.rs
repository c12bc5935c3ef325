//! The five Delsarte test polynomials `P_1..P_5` for a pair of inner products.
//!
//! Every `P_i` carries the factor `(t - a)(t - b)`, so it vanishes on the allowed
//! inner products and the only remaining LP conditions are on the Gegenbauer
//! coefficients: all `f_k >= 0` and `f_0 > 0`. When they hold the bound is
//! `U_i = P_i(1) / f_0`.
//!
//! | i | polynomial                        | free parameters fixed by |
//! |---|-----------------------------------|--------------------------|
//! | 1 | `(t-a)(t-b)`                      | none                     |
//! | 2 | `(t-a)(t-b)(t+c)`                 | `f_1 = 0`                |
//! | 3 | `(t-a)(t-b)(t+a+b)`               | none (`f_2 = 0`)         |
//! | 4 | `(t-a)(t-b)(t^2+ct+d)`            | `f_1 = f_2 = 0`          |
//! | 5 | `(t-a)(t-b)(t^2+ct+d)`            | `f_2 = f_3 = 0`          |

use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::gegenbauer::{GegenbauerBasis, GegenbauerExpansion};
use crate::poly::MonomialPoly;

/// Sign tolerance for the coefficient checks.
pub const DOMAIN_TOL: f64 = 1e-9;

/// Added before flooring so that an exact integer computed as `27.999999999` stays 28.
pub const FLOOR_NUDGE: f64 = 1e-9;

/// Indices of the candidate polynomials.
pub const CANDIDATES: [usize; 5] = [1, 2, 3, 4, 5];

const SUM_ZERO_TOL: f64 = 1e-14;
const SINGULAR_REL: f64 = 1e-12;

pub fn floor_bound(x: f64) -> u64 {
    (x + FLOOR_NUDGE).floor() as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProductPair {
    n: usize,
    a: f64,
    b: f64,
}

impl InnerProductPair {
    /// Requires `n >= 2` and `-1 <= b < a < 1`.
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        crate::gegenbauer::check_dimension(n)?;
        if !(-1.0 <= b && b < a && a < 1.0) {
            return Err(Error::InnerProducts { a, b });
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Why a candidate is outside its domain `D_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainFailure {
    /// `a + b = 0` for `P_2`, or a singular system for `P_4` / `P_5`.
    Undefined,
    NegativeCoefficient {
        k: usize,
    },
    NonPositiveConstant,
}

impl fmt::Display for DomainFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainFailure::Undefined => write!(f, "construction undefined"),
            DomainFailure::NegativeCoefficient { k } => write!(f, "f_{k} < 0"),
            DomainFailure::NonPositiveConstant => write!(f, "f_0 <= 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateBound {
    pub index: usize,
    pub c: Option<f64>,
    pub d: Option<f64>,
    /// `None` only when the construction is undefined.
    pub poly: Option<MonomialPoly>,
    pub expansion: Option<GegenbauerExpansion>,
    pub in_domain: bool,
    /// `P_i(1) / f_0` when in domain, `f64::INFINITY` otherwise.
    pub value: f64,
    pub failure: Option<DomainFailure>,
}

/// Minimum over the candidates, with every index attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct BestBound {
    pub value: f64,
    pub winners: Vec<usize>,
}

impl BestBound {
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

#[derive(Debug, Clone, Copy)]
struct Construction {
    monomial: [f64; 5],
    len: usize,
    c: Option<f64>,
    d: Option<f64>,
}

/// Builds candidates for one dimension, reusing the Gegenbauer tables.
#[derive(Debug, Clone)]
pub struct CandidateBuilder {
    basis: GegenbauerBasis,
    tol: f64,
}

impl CandidateBuilder {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_tol(n, DOMAIN_TOL)
    }

    pub fn with_tol(n: usize, tol: f64) -> Result<Self> {
        Ok(Self {
            basis: GegenbauerBasis::new(n, 4)?,
            tol,
        })
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Full candidate record. `(a, b)` is taken as given; use [`InnerProductPair`] to validate.
    pub fn build(&self, index: usize, a: f64, b: f64) -> Result<CandidateBound> {
        check_index(index)?;
        let Some(cons) = self.construct(index, a, b) else {
            return Ok(CandidateBound {
                index,
                c: None,
                d: None,
                poly: None,
                expansion: None,
                in_domain: false,
                value: f64::INFINITY,
                failure: Some(DomainFailure::Undefined),
            });
        };
        let poly = MonomialPoly::new(cons.monomial[..cons.len].to_vec());
        let mut f = [0.0; 5];
        self.basis
            .expand_into(&cons.monomial[..cons.len], &mut f[..cons.len]);
        let verdict = self.check(&f[..cons.len]);
        let value = match verdict {
            Ok(()) => poly.eval(1.0) / f[0],
            Err(_) => f64::INFINITY,
        };
        Ok(CandidateBound {
            index,
            c: cons.c,
            d: cons.d,
            expansion: Some(
                GegenbauerExpansion::new(self.n(), f[..cons.len].to_vec())
                    .expect("builder dimension is valid"),
            ),
            poly: Some(poly),
            in_domain: verdict.is_ok(),
            value,
            failure: verdict.err(),
        })
    }

    /// `U_i(a, b)`, or infinity outside `D_i`. Does not allocate.
    pub fn value(&self, index: usize, a: f64, b: f64) -> f64 {
        let Some(cons) = self.construct(index, a, b) else {
            return f64::INFINITY;
        };
        let mut f = [0.0; 5];
        self.basis
            .expand_into(&cons.monomial[..cons.len], &mut f[..cons.len]);
        if self.check(&f[..cons.len]).is_err() {
            return f64::INFINITY;
        }
        let p1: f64 = cons.monomial[..cons.len].iter().sum();
        p1 / f[0]
    }

    pub fn best(&self, a: f64, b: f64) -> BestBound {
        let values = CANDIDATES.map(|i| self.value(i, a, b));
        best_of(&values)
    }

    fn check(&self, f: &[f64]) -> std::result::Result<(), DomainFailure> {
        if let Some(k) = f.iter().position(|&x| x < -self.tol) {
            return Err(DomainFailure::NegativeCoefficient { k });
        }
        if f[0] <= self.tol {
            return Err(DomainFailure::NonPositiveConstant);
        }
        Ok(())
    }

    fn construct(&self, index: usize, a: f64, b: f64) -> Option<Construction> {
        let s = a + b;
        let p = a * b;
        // (t - a)(t - b) = t^2 - s t + p
        let base = [p, -s, 1.0];
        let times_linear = |c: f64| [p * c, p - s * c, c - s, 1.0, 0.0];
        match index {
            1 => Some(Construction {
                monomial: [p, -s, 1.0, 0.0, 0.0],
                len: 3,
                c: None,
                d: None,
            }),
            2 => {
                if s.abs() < SUM_ZERO_TOL {
                    return None;
                }
                let n2 = self.n() as f64 + 2.0;
                let c = (p * n2 + 3.0) / (n2 * s);
                Some(Construction {
                    monomial: times_linear(c),
                    len: 4,
                    c: Some(c),
                    d: None,
                })
            }
            3 => Some(Construction {
                monomial: times_linear(s),
                len: 4,
                c: None,
                d: None,
            }),
            4 | 5 => {
                // f = E0 + c E1 + d E2 with E_j the expansion of base * t^(2-j).
                let mut e0 = [0.0; 5];
                let mut e1 = [0.0; 5];
                let mut e2 = [0.0; 5];
                self.basis
                    .expand_into(&[0.0, 0.0, base[0], base[1], base[2]], &mut e0);
                self.basis
                    .expand_into(&[0.0, base[0], base[1], base[2]], &mut e1[..4]);
                self.basis.expand_into(&base, &mut e2[..3]);
                let (r, q) = if index == 4 { (1, 2) } else { (2, 3) };
                let det = e1[r] * e2[q] - e2[r] * e1[q];
                let scale = (e1[r] * e2[q]).abs() + (e2[r] * e1[q]).abs();
                if det.is_nan() || det.abs() <= SINGULAR_REL * scale.max(1.0) {
                    return None;
                }
                let c = (-e0[r] * e2[q] + e2[r] * e0[q]) / det;
                let d = (-e1[r] * e0[q] + e0[r] * e1[q]) / det;
                // (t^2 - s t + p)(t^2 + c t + d)
                let monomial = [p * d, p * c - s * d, d - s * c + p, c - s, 1.0];
                Some(Construction {
                    monomial,
                    len: 5,
                    c: Some(c),
                    d: Some(d),
                })
            }
            _ => None,
        }
    }
}

fn check_index(index: usize) -> Result<()> {
    if CANDIDATES.contains(&index) {
        Ok(())
    } else {
        Err(Error::CandidateIndex(index))
    }
}

pub(crate) fn best_of(values: &[f64; 5]) -> BestBound {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if !min.is_finite() {
        return BestBound {
            value: f64::INFINITY,
            winners: Vec::new(),
        };
    }
    let tie = 1e-12 * min.abs().max(1.0);
    let winners = CANDIDATES
        .iter()
        .zip(values)
        .filter(|(_, &v)| v - min <= tie)
        .map(|(&i, _)| i)
        .collect();
    BestBound {
        value: min,
        winners,
    }
}

/// Build candidate `P_index` for `pair` with the default tolerance.
pub fn build_candidate(index: usize, pair: &InnerProductPair) -> Result<CandidateBound> {
    CandidateBuilder::new(pair.n)?.build(index, pair.a, pair.b)
}

/// Minimum of `U_1..U_5` at `pair`; infinite when no candidate is in its domain.
pub fn best_bound(pair: &InnerProductPair) -> BestBound {
    CandidateBuilder::new(pair.n)
        .expect("pair dimension is validated")
        .best(pair.a, pair.b)
}

/// Reason [`delsarte_check`] refused to certify a bound.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DelsarteRejection {
    #[error("coefficient f_{k} = {value} is negative")]
    NegativeCoefficient { k: usize, value: f64 },
    #[error("constant term f_0 = {value} is not positive")]
    NonPositiveConstant { value: f64 },
    #[error("f({t}) = {value} is positive on an allowed inner product")]
    PositiveOnAllowed { t: f64, value: f64 },
}

/// Generic Delsarte LP check: a Gegenbauer expansion with `f_k >= 0`, `f_0 > 0` and
/// `f <= 0` on every allowed inner product certifies `|S| <= floor(f(1) / f_0)`.
pub fn delsarte_check(
    expansion: &GegenbauerExpansion,
    allowed: &[f64],
    tol: f64,
) -> std::result::Result<u64, DelsarteRejection> {
    if let Some((k, &value)) = expansion
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, &f)| f < -tol)
    {
        return Err(DelsarteRejection::NegativeCoefficient { k, value });
    }
    let f0 = expansion.f0();
    if f0 <= tol {
        return Err(DelsarteRejection::NonPositiveConstant { value: f0 });
    }
    for &t in allowed {
        let value = expansion.eval(t);
        if value > tol {
            return Err(DelsarteRejection::PositiveOnAllowed { t, value });
        }
    }
    Ok(floor_bound(expansion.value_at_one() / f0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn u1_oracle(n: f64, a: f64, b: f64) -> f64 {
        (1.0 - a) * (1.0 - b) / (a * b + 1.0 / n)
    }

    fn pair(n: usize, a: f64, b: f64) -> InnerProductPair {
        InnerProductPair::new(n, a, b).unwrap()
    }

    #[test]
    fn pair_validation() {
        assert!(InnerProductPair::new(7, 0.2, 0.3).is_err());
        assert!(InnerProductPair::new(7, 0.2, 0.2).is_err());
        assert!(InnerProductPair::new(7, 1.0, 0.2).is_err());
        assert!(InnerProductPair::new(7, 0.2, -1.01).is_err());
        assert!(InnerProductPair::new(1, 0.2, -0.2).is_err());
        assert!(InnerProductPair::new(7, 0.2, -1.0).is_ok());
    }

    #[test]
    fn candidate_one_dimension_seven() {
        let c = build_candidate(1, &pair(7, 1.0 / 3.0, -1.0 / 3.0)).unwrap();
        let e = c.expansion.as_ref().unwrap();
        assert_abs_diff_eq!(e.coeff(0), 2.0 / 63.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.coeff(1), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.coeff(2), 6.0 / 7.0, epsilon = 1e-15);
        assert!(c.in_domain);
        assert_abs_diff_eq!(c.value, 28.0, epsilon = 1e-9);
        assert_abs_diff_eq!(
            c.value,
            u1_oracle(7.0, 1.0 / 3.0, -1.0 / 3.0),
            epsilon = 1e-9
        );
    }

    #[test]
    fn candidate_one_dimension_twenty_three() {
        let c = build_candidate(1, &pair(23, 0.2, -0.2)).unwrap();
        assert!(c.in_domain);
        assert_abs_diff_eq!(c.value, 276.0, epsilon = 1e-9);
        assert_eq!(floor_bound(c.value), 276);
    }

    #[test]
    fn candidate_two_undefined_when_sum_vanishes() {
        for n in [3, 7, 23] {
            let c = build_candidate(2, &pair(n, 0.25, -0.25)).unwrap();
            assert!(!c.in_domain);
            assert_eq!(c.value, f64::INFINITY);
            assert_eq!(c.failure, Some(DomainFailure::Undefined));
            assert!(c.poly.is_none());
        }
    }

    #[test]
    fn candidate_two_matches_closed_forms() {
        let (n, a, b) = (25usize, 0.1, -0.6);
        let nf = n as f64;
        let c = build_candidate(2, &pair(n, a, b)).unwrap();
        let cc = (a * b * (nf + 2.0) + 3.0) / ((nf + 2.0) * (a + b));
        assert_abs_diff_eq!(c.c.unwrap(), cc, epsilon = 1e-14);
        let e = c.expansion.unwrap();
        assert_abs_diff_eq!(e.coeff(1), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(e.coeff(0), a * b * cc + (cc - a - b) / nf, epsilon = 1e-13);
    }

    #[test]
    fn candidate_three_has_no_quadratic_term() {
        let c = build_candidate(3, &pair(10, 0.1, -0.5)).unwrap();
        assert!(c.expansion.unwrap().coeff(2).abs() < 1e-12);
    }

    #[test]
    fn candidates_four_and_five_zero_their_pairs() {
        let p = pair(25, -0.2, -0.8);
        let c4 = build_candidate(4, &p).unwrap();
        let e4 = c4.expansion.unwrap();
        assert!(e4.coeff(1).abs() < 1e-12 && e4.coeff(2).abs() < 1e-12);
        let c5 = build_candidate(5, &p).unwrap();
        let e5 = c5.expansion.unwrap();
        assert!(e5.coeff(2).abs() < 1e-12 && e5.coeff(3).abs() < 1e-12);
        for c in [c4.poly.unwrap(), c5.poly.unwrap()] {
            assert!(c.eval(-0.2).abs() < 1e-12 && c.eval(-0.8).abs() < 1e-12);
        }
    }

    #[test]
    fn fast_value_agrees_with_full_build() {
        let builder = CandidateBuilder::new(19).unwrap();
        for (a, b) in [(0.15, -0.27), (-0.1, -0.55), (0.3, -0.4), (0.05, -0.9)] {
            for i in CANDIDATES {
                let full = builder.build(i, a, b).unwrap().value;
                let fast = builder.value(i, a, b);
                assert!(
                    full == fast || (full - fast).abs() < 1e-12 * full.abs(),
                    "{i} {a} {b}"
                );
            }
        }
    }

    #[test]
    fn bad_index_rejected() {
        assert_eq!(
            build_candidate(0, &pair(7, 0.1, -0.2)),
            Err(Error::CandidateIndex(0))
        );
        assert_eq!(
            build_candidate(6, &pair(7, 0.1, -0.2)),
            Err(Error::CandidateIndex(6))
        );
    }

    #[test]
    fn best_bound_dimension_seven() {
        let best = best_bound(&pair(7, 1.0 / 3.0, -1.0 / 3.0));
        assert_abs_diff_eq!(best.value, 28.0, epsilon = 1e-9);
        assert!(best.winners.contains(&1));
    }

    #[test]
    fn best_bound_positive_pair_rules_out_first_candidate() {
        let p = pair(5, 0.9, 0.8);
        let c1 = build_candidate(1, &p).unwrap();
        assert_abs_diff_eq!(c1.expansion.unwrap().coeff(1), -1.7, epsilon = 1e-14);
        assert!(!c1.in_domain);
        assert_eq!(
            c1.failure,
            Some(DomainFailure::NegativeCoefficient { k: 1 })
        );
        let best = best_bound(&p);
        assert!(!best.winners.contains(&1));
    }

    #[test]
    fn delsarte_check_examples() {
        let tol = DOMAIN_TOL;
        let c = build_candidate(1, &pair(7, 1.0 / 3.0, -1.0 / 3.0)).unwrap();
        assert_eq!(
            delsarte_check(&c.expansion.unwrap(), &[1.0 / 3.0, -1.0 / 3.0], tol),
            Ok(28)
        );
        let c = build_candidate(1, &pair(23, 0.2, -0.2)).unwrap();
        assert_eq!(
            delsarte_check(&c.expansion.unwrap(), &[0.2, -0.2], tol),
            Ok(276)
        );

        let one = GegenbauerExpansion::new(9, vec![1.0]).unwrap();
        assert!(matches!(
            delsarte_check(&one, &[0.1, -0.3], tol),
            Err(DelsarteRejection::PositiveOnAllowed { .. })
        ));
        let neg = GegenbauerExpansion::new(9, vec![1.0, -0.5]).unwrap();
        assert_eq!(
            delsarte_check(&neg, &[], tol),
            Err(DelsarteRejection::NegativeCoefficient { k: 1, value: -0.5 })
        );
        let zero = GegenbauerExpansion::new(9, vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            delsarte_check(&zero, &[], tol),
            Err(DelsarteRejection::NonPositiveConstant { .. })
        ));
    }
}
