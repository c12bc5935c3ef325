//! Bounds under the Larman–Rogers–Seidel ratio constraint.
//!
//! A spherical two-distance set with more than `2n + 3` points has its inner
//! products tied by `b = b_k(a) = (ka - 1)/(k - 1)` for an integer
//! `2 <= k <= K(n) = floor((1 + sqrt(2n))/2)`. On the slice where `a + b_k(a) < 0`,
//! `a` ranges over `I_k = [(2 - k)/k, 1/(2k - 1))`, and the best of the five
//! candidate bounds along that curve is the piecewise rational function `Q_k^{(n)}(a)`.
//! Its supremum over `I_k` gives `omega_hat(n, k)`, and the maximum over `k`
//! combined with `rho(n) = n(n+1)/2` bounds `g(n)`.

use rayon::prelude::*;

use crate::bound_polys::{floor_bound, BestBound, CandidateBuilder, DOMAIN_TOL};
use crate::error::{Error, Result};

/// `(k a - 1)/(k - 1)`
pub fn b_k(k: usize, a: f64) -> f64 {
    let kf = k as f64;
    (kf * a - 1.0) / (kf - 1.0)
}

/// `max(floor((1 + sqrt(2n))/2), 2)`
pub fn k_max(n: usize) -> usize {
    let k = ((1.0 + (2.0 * n as f64).sqrt()) / 2.0).floor() as usize;
    k.max(2)
}

/// Endpoints `((2 - k)/k, 1/(2k - 1))` of `I_k`. The right endpoint is excluded
/// from `I_k` itself but every search here runs over the closed interval.
pub fn interval(k: usize) -> (f64, f64) {
    let kf = k as f64;
    ((2.0 - kf) / kf, 1.0 / (2.0 * kf - 1.0))
}

/// `n(n+1)/2`, the size of the simplex edge-midpoint configuration; defined for `n >= 7`.
pub fn rho(n: usize) -> Result<u64> {
    if n < 7 {
        return Err(Error::Dimension { n, min: 7 });
    }
    Ok((n * (n + 1) / 2) as u64)
}

/// Grid and refinement settings for the supremum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Number of uniform grid points over the closed interval (endpoints included).
    pub grid: usize,
    /// Golden-section refinement stops once the bracket is narrower than this.
    pub bracket_width: f64,
    /// Sign tolerance passed to the candidate domain checks.
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid: 20001,
            bracket_width: 1e-10,
            tol: DOMAIN_TOL,
        }
    }
}

/// Result of maximizing `Q` over the closure of `I_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Supremum {
    pub value: f64,
    pub argmax: f64,
    /// Grid spans `[from, to]` on which `Q` is infinite. Nonempty means the LP
    /// method is inconclusive for this slice and `value` is infinite.
    pub infinite_spans: Vec<(f64, f64)>,
}

impl Supremum {
    pub fn is_conclusive(&self) -> bool {
        self.infinite_spans.is_empty() && self.value.is_finite()
    }
}

/// `Q_k^{(n)}` on one slice.
#[derive(Debug, Clone)]
pub struct SliceFunction {
    k: usize,
    lo: f64,
    hi: f64,
    builder: CandidateBuilder,
}

impl SliceFunction {
    pub fn new(n: usize, k: usize, tol: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::SliceIndex {
                n,
                k,
                k_max: k_max(n),
            });
        }
        let (lo, hi) = interval(k);
        Ok(Self {
            k,
            lo,
            hi,
            builder: CandidateBuilder::with_tol(n, tol)?,
        })
    }

    pub fn n(&self) -> usize {
        self.builder.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Best candidate at `(a, b_k(a))`. `a` must lie in the closed interval.
    pub fn eval(&self, a: f64) -> Result<BestBound> {
        let slack = 1e-12;
        if !(a >= self.lo - slack && a <= self.hi + slack) {
            return Err(Error::OutOfInterval {
                a,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.eval_unchecked(a.clamp(self.lo, self.hi)))
    }

    fn eval_unchecked(&self, a: f64) -> BestBound {
        // b_k(lo) = -1 exactly in real arithmetic; rounding can push it just below.
        let b = b_k(self.k, a).max(-1.0);
        self.builder.best(a, b)
    }

    fn value(&self, a: f64) -> f64 {
        self.eval_unchecked(a).value
    }

    pub fn grid_point(&self, i: usize, samples: usize) -> f64 {
        if i + 1 == samples {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (samples - 1) as f64
        }
    }

    /// Dense grid followed by golden-section refinement of every local maximum.
    pub fn supremum(&self, cfg: &SearchConfig) -> Supremum {
        let grid = cfg.grid.max(2);
        let xs: Vec<f64> = (0..grid).map(|i| self.grid_point(i, grid)).collect();
        let vs: Vec<f64> = xs.iter().map(|&a| self.value(a)).collect();

        let spans = infinite_spans(&xs, &vs);
        if !spans.is_empty() {
            return Supremum {
                value: f64::INFINITY,
                argmax: spans[0].0,
                infinite_spans: spans,
            };
        }

        let mut best = (xs[0], vs[0]);
        let mut spans = Vec::new();
        for i in 0..grid {
            let left_ok = i == 0 || vs[i] >= vs[i - 1];
            let right_ok = i + 1 == grid || vs[i] >= vs[i + 1];
            if !(left_ok && right_ok) {
                continue;
            }
            if vs[i] > best.1 {
                best = (xs[i], vs[i]);
            }
            let l = xs[i.saturating_sub(1)];
            let r = xs[(i + 1).min(grid - 1)];
            let (x, v) = self.golden_max(l, r, cfg.bracket_width);
            if v.is_infinite() {
                spans.push((x, x));
            } else if v > best.1 {
                best = (x, v);
            }
        }
        if !spans.is_empty() {
            return Supremum {
                value: f64::INFINITY,
                argmax: spans[0].0,
                infinite_spans: spans,
            };
        }
        Supremum {
            value: best.1,
            argmax: best.0,
            infinite_spans: Vec::new(),
        }
    }

    /// Golden-section search for a maximum on `[l, r]`, returning the best point seen.
    /// `Q` can jump where candidates enter or leave their domains, so the running best
    /// is kept rather than trusting the final bracket.
    fn golden_max(&self, mut l: f64, mut r: f64, width: f64) -> (f64, f64) {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let mut best = (l, self.value(l));
        let consider = |x: f64, v: f64, best: &mut (f64, f64)| {
            if v > best.1 {
                *best = (x, v);
            }
        };
        let rv = self.value(r);
        consider(r, rv, &mut best);
        let mut c = r - INV_PHI * (r - l);
        let mut d = l + INV_PHI * (r - l);
        let mut fc = self.value(c);
        let mut fd = self.value(d);
        consider(c, fc, &mut best);
        consider(d, fd, &mut best);
        let mut iterations = 0;
        while r - l > width && iterations < 200 {
            if best.1.is_infinite() {
                break;
            }
            if fc > fd {
                r = d;
                d = c;
                fd = fc;
                c = r - INV_PHI * (r - l);
                fc = self.value(c);
                consider(c, fc, &mut best);
            } else {
                l = c;
                c = d;
                fc = fd;
                d = l + INV_PHI * (r - l);
                fd = self.value(d);
                consider(d, fd, &mut best);
            }
            iterations += 1;
        }
        best
    }
}

fn infinite_spans(xs: &[f64], vs: &[f64]) -> Vec<(f64, f64)> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    for (i, v) in vs.iter().enumerate() {
        match (v.is_infinite(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                spans.push((xs[s], xs[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        spans.push((xs[s], xs[xs.len() - 1]));
    }
    spans
}

/// `Q_k^{(n)}(a)`; infinite when no candidate is in its domain.
pub fn q(n: usize, k: usize, a: f64) -> Result<f64> {
    Ok(SliceFunction::new(n, k, DOMAIN_TOL)?.eval(a)?.value)
}

fn check_slice(n: usize, k: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Dimension { n, min: 4 });
    }
    let kmax = k_max(n);
    if k < 2 || k > kmax {
        return Err(Error::SliceIndex { n, k, k_max: kmax });
    }
    Ok(())
}

/// Everything computed for one `(n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KSlice {
    pub n: usize,
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
    pub phi: Supremum,
    /// `max(floor(phi), 2n + 3)`; `None` when the slice is inconclusive.
    pub omega_hat_nk: Option<u64>,
}

pub fn slice(n: usize, k: usize, cfg: &SearchConfig) -> Result<KSlice> {
    check_slice(n, k)?;
    let f = SliceFunction::new(n, k, cfg.tol)?;
    let phi = f.supremum(cfg);
    let omega_hat_nk = phi
        .is_conclusive()
        .then(|| floor_bound(phi.value).max(2 * n as u64 + 3));
    let (lo, hi) = f.bounds();
    Ok(KSlice {
        n,
        k,
        lo,
        hi,
        phi,
        omega_hat_nk,
    })
}

/// Supremum of `Q_k^{(n)}` over the closure of `I_k` with default settings.
pub fn phi(n: usize, k: usize) -> Result<Supremum> {
    Ok(slice(n, k, &SearchConfig::default())?.phi)
}

pub fn omega_hat_nk(n: usize, k: usize) -> Result<Option<u64>> {
    Ok(slice(n, k, &SearchConfig::default())?.omega_hat_nk)
}

/// Maximum of `omega_hat(n, k)` over `k = 2..=k_max(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaHat {
    pub n: usize,
    /// `None` when some slice is inconclusive.
    pub value: Option<u64>,
    /// Smallest `k` attaining the maximum, or the first inconclusive `k`.
    pub k_star: usize,
    pub slices: Vec<KSlice>,
}

pub fn omega_hat_with(n: usize, cfg: &SearchConfig) -> Result<OmegaHat> {
    if n < 7 {
        return Err(Error::Dimension { n, min: 7 });
    }
    let slices = (2..=k_max(n))
        .map(|k| slice(n, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = slices.iter().find(|s| s.omega_hat_nk.is_none()) {
        let k_star = bad.k;
        return Ok(OmegaHat {
            n,
            value: None,
            k_star,
            slices,
        });
    }
    let mut value = 0;
    let mut k_star = 2;
    for s in &slices {
        let v = s.omega_hat_nk.expect("checked above");
        if v > value {
            value = v;
            k_star = s.k;
        }
    }
    Ok(OmegaHat {
        n,
        value: Some(value),
        k_star,
        slices,
    })
}

pub fn omega_hat(n: usize) -> Result<OmegaHat> {
    omega_hat_with(n, &SearchConfig::default())
}

/// Upper bound `max(omega_hat(n), rho(n))` on `g(n)`; `None` when inconclusive.
pub fn g_upper(n: usize) -> Result<Option<u64>> {
    let rho = rho(n)?;
    Ok(omega_hat(n)?.value.map(|w| w.max(rho)))
}

/// One row of the bound table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub omega_hat: Option<u64>,
    pub rho: u64,
    pub k_star: usize,
    pub g_upper: Option<u64>,
}

impl TableRow {
    pub fn is_conclusive(&self) -> bool {
        self.omega_hat.is_some()
    }
}

/// Rows for `n_min..=n_max`, computed in parallel and returned in order of `n`.
pub fn table(n_min: usize, n_max: usize, cfg: &SearchConfig) -> Result<Vec<TableRow>> {
    if n_min < 7 {
        return Err(Error::Dimension { n: n_min, min: 7 });
    }
    if n_min > n_max {
        return Err(Error::EmptyRange { n_min, n_max });
    }
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let w = omega_hat_with(n, cfg)?;
            let rho = rho(n)?;
            Ok(TableRow {
                n,
                omega_hat: w.value,
                rho,
                k_star: w.k_star,
                g_upper: w.value.map(|v| v.max(rho)),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSample {
    pub a: f64,
    /// Infinite when no candidate is in its domain.
    pub q: f64,
    pub winners: Vec<usize>,
}

/// `samples` uniform points of `Q_k^{(n)}` over the closed interval, endpoints included.
pub fn profile(n: usize, k: usize, samples: usize, tol: f64) -> Result<Vec<ProfileSample>> {
    check_slice(n, k)?;
    if samples < 2 {
        return Err(Error::Samples {
            min: 2,
            got: samples,
        });
    }
    let f = SliceFunction::new(n, k, tol)?;
    Ok((0..samples)
        .map(|i| {
            let a = f.grid_point(i, samples);
            let best = f.eval_unchecked(a);
            ProfileSample {
                a,
                q: best.value,
                winners: best.winners,
            }
        })
        .collect())
}
