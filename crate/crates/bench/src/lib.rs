//! Criterion benchmarks for the bound pipeline live in `benches/`.

/// Evenly spaced points over the closed interval of slice `k`, shared by the benches.
pub fn slice_points(k: usize, count: usize) -> Vec<f64> {
    let (lo, hi) = twodist::interval(k);
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count.max(2) - 1) as f64)
        .collect()
}
