//! Explicit point configurations and their numerical verification.
//!
//! `lambda_set(n)` is the set of edge midpoints `e_i + e_j` of the simplex with
//! vertices `2 e_1, ..., 2 e_{n+1}`, centered and pushed onto the unit sphere of
//! the hyperplane it spans.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub const UNIT_TOL: f64 = 1e-10;
pub const CLUSTER_DIAMETER: f64 = 1e-8;
pub const CLUSTER_GAP: f64 = 1e-6;
pub const EIGEN_TOL: f64 = 1e-8;
pub const RANK_REL_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 42;

/// Unit vectors in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPointSet {
    n: usize,
    points: Vec<DVector<f64>>,
}

impl UnitPointSet {
    pub fn new(n: usize, points: Vec<DVector<f64>>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::PointDimension {
                    index,
                    len: p.len(),
                    n,
                });
            }
            let norm_sq = p.norm_squared();
            if (norm_sq - 1.0).abs() > UNIT_TOL {
                return Err(Error::NotUnit { index, norm_sq });
            }
        }
        Ok(Self { n, points })
    }

    /// Normalizes every input vector first.
    pub fn from_directions(n: usize, directions: Vec<Vec<f64>>) -> Result<Self> {
        let points = directions
            .into_iter()
            .map(|d| DVector::from_vec(d).normalize())
            .collect();
        Self::new(n, points)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DVector<f64>] {
        &self.points
    }

    pub fn gram(&self) -> DMatrix<f64> {
        let m = self.points.len();
        DMatrix::from_fn(m, m, |i, j| self.points[i].dot(&self.points[j]))
    }
}

/// Orthonormal basis of `{x in R^{n+1} : sum x = 0}` (Helmert vectors), one per row.
fn hyperplane_frame(n: usize) -> DMatrix<f64> {
    let mut frame = DMatrix::zeros(n, n + 1);
    for r in 0..n {
        let len = r + 1;
        let scale = 1.0 / ((len * (len + 1)) as f64).sqrt();
        for c in 0..len {
            frame[(r, c)] = scale;
        }
        frame[(r, len)] = -(len as f64) * scale;
    }
    frame
}

/// The `n(n+1)/2` normalized edge midpoints of a regular `n`-simplex, in `R^n`.
pub fn lambda_set(n: usize) -> Result<UnitPointSet> {
    if n < 2 {
        return Err(Error::Dimension { n, min: 2 });
    }
    let frame = hyperplane_frame(n);
    let centroid = 2.0 / (n as f64 + 1.0);
    let mut points = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..=n {
        for j in (i + 1)..=n {
            let mut x = DVector::from_element(n + 1, -centroid);
            x[i] += 1.0;
            x[j] += 1.0;
            points.push((&frame * x).normalize());
        }
    }
    UnitPointSet::new(n, points)
}

/// `((n - 3)/(2(n - 1)), -2/(n - 1))`, the inner products of [`lambda_set`].
pub fn lambda_params(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Dimension { n, min: 2 });
    }
    let nf = n as f64;
    Ok(((nf - 3.0) / (2.0 * (nf - 1.0)), -2.0 / (nf - 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceDiagnostic {
    TooFewPoints,
    OneDistance,
    NotTwoDistance,
}

impl std::fmt::Display for DistanceDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceDiagnostic::TooFewPoints => "too few points",
            DistanceDiagnostic::OneDistance => "one-distance",
            DistanceDiagnostic::NotTwoDistance => "not two-distance",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoDistanceCertificate {
    /// Larger inner product (or the single value for a one-distance set).
    pub a: f64,
    pub b: f64,
    /// Unordered pairs at `a` and at `b`.
    pub pair_counts: (usize, usize),
    pub valid: bool,
    pub diagnostic: Option<DistanceDiagnostic>,
}

/// Split the off-diagonal Gram entries at their largest gap and accept exactly two tight clusters.
pub fn verify_two_distance(s: &UnitPointSet) -> TwoDistanceCertificate {
    let m = s.len();
    let invalid = |a, b, counts, diag| TwoDistanceCertificate {
        a,
        b,
        pair_counts: counts,
        valid: false,
        diagnostic: Some(diag),
    };
    if m < 3 {
        return invalid(f64::NAN, f64::NAN, (0, 0), DistanceDiagnostic::TooFewPoints);
    }
    let pts = s.points();
    let mut values: Vec<f64> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            values.push(pts[i].dot(&pts[j]));
        }
    }
    values.sort_by(f64::total_cmp);
    let total = values.len();
    let spread = values[total - 1] - values[0];
    if spread < CLUSTER_DIAMETER {
        let mean = values.iter().sum::<f64>() / total as f64;
        return invalid(mean, mean, (total, 0), DistanceDiagnostic::OneDistance);
    }
    let (split, gap) = values
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i + 1, w[1] - w[0]))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    let (low, high) = values.split_at(split);
    let diameter = |c: &[f64]| c[c.len() - 1] - c[0];
    let mean = |c: &[f64]| c.iter().sum::<f64>() / c.len() as f64;
    let (a, b) = (mean(high), mean(low));
    let counts = (high.len(), low.len());
    if gap <= CLUSTER_GAP || diameter(low) >= CLUSTER_DIAMETER || diameter(high) >= CLUSTER_DIAMETER
    {
        return invalid(a, b, counts, DistanceDiagnostic::NotTwoDistance);
    }
    TwoDistanceCertificate {
        a,
        b,
        pair_counts: counts,
        valid: true,
        diagnostic: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramReport {
    pub psd: bool,
    pub rank: usize,
}

/// Positive semidefiniteness and rank of the Gram matrix from its spectrum.
pub fn gram_check(s: &UnitPointSet) -> GramReport {
    if s.is_empty() {
        return GramReport { psd: true, rank: 0 };
    }
    let eig = SymmetricEigen::new(s.gram());
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let rank = eig.eigenvalues.iter().filter(|&&l| l > EIGEN_TOL).count();
    GramReport {
        psd: min > -EIGEN_TOL,
        rank,
    }
}

fn numerical_rank(m: &DMatrix<f64>) -> usize {
    let sv = m.singular_values();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_REL_TOL * largest).count()
}

fn random_unit_vectors(n: usize, count: usize, seed: u64) -> Vec<DVector<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            v.normalize()
        })
        .collect()
}

/// Numerical rank of the functions `f_i(x) = F(<x, x_i>)`, with
/// `F(t) = (t - a)(t - b)/((1 - a)(1 - b))`, together with the `n` coordinate
/// functionals, sampled at the set itself plus `n + 20` random unit vectors.
///
/// For a two-distance set with `a + b >= 0` the system is linearly independent,
/// so the rank is `|S| + n`.
pub fn independence_rank(s: &UnitPointSet, a: f64, b: f64, seed: u64) -> Result<usize> {
    if a + b < 0.0 {
        return Err(Error::HypothesisViolated { sum: a + b });
    }
    let n = s.n();
    let m = s.len();
    let denom = (1.0 - a) * (1.0 - b);
    let kernel = |t: f64| (t - a) * (t - b) / denom;

    let mut samples: Vec<DVector<f64>> = s.points().to_vec();
    samples.extend(random_unit_vectors(n, n + 20, seed));

    let rows = m + n;
    let eval = DMatrix::from_fn(rows, samples.len(), |r, c| {
        let x = &samples[c];
        if r < m {
            kernel(x.dot(&s.points()[r]))
        } else {
            x[r - m]
        }
    });
    Ok(numerical_rank(&eval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn frame_is_orthonormal_and_centered() {
        let f = hyperplane_frame(6);
        let g = &f * f.transpose();
        assert!((g - DMatrix::<f64>::identity(6, 6)).abs().max() < 1e-14);
        for r in 0..6 {
            assert!(f.row(r).sum().abs() < 1e-14);
        }
    }

    #[test]
    fn lambda_sizes() {
        assert_eq!(lambda_set(23).unwrap().len(), 276);
        assert_eq!(lambda_set(7).unwrap().len(), 28);
        assert_eq!(lambda_set(2).unwrap().len(), 3);
        assert!(lambda_set(1).is_err());
    }

    #[test]
    fn lambda_params_examples() {
        let (a, b) = lambda_params(7).unwrap();
        assert_abs_diff_eq!(a, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a + b, 0.0, epsilon = 1e-15);
        let (a, b) = lambda_params(23).unwrap();
        assert_abs_diff_eq!(a, 5.0 / 11.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, -1.0 / 11.0, epsilon = 1e-15);
        assert_eq!(lambda_params(3).unwrap(), (0.0, -1.0));
    }

    #[test]
    fn lambda_seven_certificate() {
        let cert = verify_two_distance(&lambda_set(7).unwrap());
        assert!(cert.valid);
        assert_abs_diff_eq!(cert.a, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cert.b, -1.0 / 3.0, epsilon = 1e-12);
        assert_eq!(cert.pair_counts, (168, 210));
    }

    #[test]
    fn simplex_is_one_distance() {
        let n = 5;
        let frame = hyperplane_frame(n);
        let verts: Vec<DVector<f64>> = (0..=n)
            .map(|i| {
                let mut x = DVector::from_element(n + 1, -1.0 / (n as f64 + 1.0));
                x[i] += 1.0;
                (&frame * x).normalize()
            })
            .collect();
        let s = UnitPointSet::new(n, verts).unwrap();
        let cert = verify_two_distance(&s);
        assert!(!cert.valid);
        assert_eq!(cert.diagnostic, Some(DistanceDiagnostic::OneDistance));
        assert_abs_diff_eq!(cert.a, -1.0 / n as f64, epsilon = 1e-12);
    }

    #[test]
    fn random_triple_is_not_two_distance() {
        let pts = random_unit_vectors(4, 3, 7);
        let cert = verify_two_distance(&UnitPointSet::new(4, pts).unwrap());
        assert!(!cert.valid);
        assert_eq!(cert.diagnostic, Some(DistanceDiagnostic::NotTwoDistance));
    }

    #[test]
    fn two_points_too_few() {
        let pts = random_unit_vectors(3, 2, 1);
        let cert = verify_two_distance(&UnitPointSet::new(3, pts).unwrap());
        assert_eq!(cert.diagnostic, Some(DistanceDiagnostic::TooFewPoints));
    }

    #[test]
    fn unit_point_set_validation() {
        let bad = vec![DVector::from_vec(vec![1.0, 1.0])];
        assert!(matches!(
            UnitPointSet::new(2, bad),
            Err(Error::NotUnit { .. })
        ));
        let short = vec![DVector::from_vec(vec![1.0])];
        assert!(matches!(
            UnitPointSet::new(2, short),
            Err(Error::PointDimension { .. })
        ));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(
            gram_check(&lambda_set(7).unwrap()),
            GramReport { psd: true, rank: 7 }
        );
        assert_eq!(
            gram_check(&lambda_set(23).unwrap()),
            GramReport {
                psd: true,
                rank: 23
            }
        );
        let anti =
            UnitPointSet::from_directions(3, vec![vec![0.0, 1.0, 0.0], vec![0.0, -1.0, 0.0]])
                .unwrap();
        assert_eq!(gram_check(&anti), GramReport { psd: true, rank: 1 });
    }

    #[test]
    fn independence_examples() {
        for (n, expected) in [(7, 35), (8, 44), (9, 54)] {
            let s = lambda_set(n).unwrap();
            let (a, b) = lambda_params(n).unwrap();
            assert_eq!(
                independence_rank(&s, a, b, DEFAULT_SEED).unwrap(),
                expected,
                "n = {n}"
            );
        }
    }

    #[test]
    fn independence_rejects_negative_sum() {
        let s = lambda_set(5).unwrap();
        let (a, b) = lambda_params(5).unwrap();
        assert!(matches!(
            independence_rank(&s, a, b, DEFAULT_SEED),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        assert_eq!(random_unit_vectors(5, 4, 9), random_unit_vectors(5, 4, 9));
        assert_ne!(random_unit_vectors(5, 4, 9), random_unit_vectors(5, 4, 10));
    }
}
