//! Compensated summation of slowly convergent series with power-law tails.
//!
//! Terms are assumed to behave like `n^σ (d_0 + d_1/n + …)` for large `n`,
//! which holds for every hypergeometric-times-rational weight in this crate.
//! The remainder after `N` terms then expands in powers `N^{σ+1-k}`, so
//! partial sums at `N, 2N, 4N, …` can be Richardson-extrapolated with known
//! exponents.

use serde::Serialize;

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Outcome of the doubling-N growth test on partial sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthTest {
    /// `(N, S_N)` at `N = n0, 2 n0, 4 n0, …`.
    pub checkpoints: Vec<(usize, f64)>,
    /// `log2` of the ratio of the last two increments; `σ + 1` asymptotically.
    pub exponent_estimate: f64,
    pub unbounded: bool,
}

/// Increments that shrink slower than `2^-0.05` per doubling count as growth.
const GROWTH_EXPONENT_FLOOR: f64 = -0.05;

/// Ground-truth value of a series together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub value: f64,
    pub abs_error_bound: f64,
    pub terms_used: usize,
    /// Finite series summed in exact rational arithmetic.
    pub exact: bool,
    /// Present when the series was classified by the growth test instead of summed.
    pub growth: Option<GrowthTest>,
}

impl OracleResult {
    pub fn exact(value: f64, terms_used: usize) -> Self {
        Self { value, abs_error_bound: 0.0, terms_used, exact: true, growth: None }
    }

    pub fn is_divergent(&self) -> bool {
        self.growth.as_ref().is_some_and(|g| g.unbounded)
    }
}

/// Partial sums `S_N = Σ_{n<N} f(n)` at each (increasing) checkpoint.
pub fn partial_sums_at<I>(terms: I, checkpoints: &[usize]) -> Vec<f64>
where
    I: IntoIterator<Item = f64>,
{
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut acc = CompensatedSum::new();
    let mut next = checkpoints.iter().copied().peekable();
    let mut taken = 0usize;
    for (n, x) in terms.into_iter().enumerate() {
        while next.peek() == Some(&n) {
            out.push(acc.value());
            next.next();
        }
        if next.peek().is_none() {
            break;
        }
        acc.add(x);
        taken = n + 1;
    }
    for n in next {
        debug_assert!(n >= taken, "iterator ended before checkpoint {n}");
        out.push(acc.value());
    }
    out
}

/// Doubling-N growth test: partial sums at `n0 · 2^j`, `j = 0..=doublings`.
pub fn growth_test<I>(terms: I, n0: usize, doublings: u32) -> GrowthTest
where
    I: IntoIterator<Item = f64>,
{
    assert!(doublings >= 2 && n0 > 0);
    let ns: Vec<usize> = (0..=doublings).map(|j| n0 << j).collect();
    let sums = partial_sums_at(terms, &ns);
    let incs: Vec<f64> = sums.windows(2).map(|w| w[1] - w[0]).collect();
    let last = incs[incs.len() - 1];
    let prev = incs[incs.len() - 2];
    let exponent_estimate = (last.abs() / prev.abs()).log2();
    let same_sign = incs.iter().all(|d| *d > 0.0) || incs.iter().all(|d| *d < 0.0);
    let unbounded = same_sign && exponent_estimate >= GROWTH_EXPONENT_FLOOR;
    GrowthTest { checkpoints: ns.into_iter().zip(sums).collect(), exponent_estimate, unbounded }
}

/// Richardson levels used at the summation cap.
const RICHARDSON_LEVELS: u32 = 4;
/// Smallest checkpoint at which the integral tail bound is trusted.
const MIN_BOUND_CHECKPOINT: usize = 1024;
/// Number of terms used by the growth test when the series diverges.
const GROWTH_N0: usize = 1 << 12;

/// Integral tail estimate `2 · C N^{σ+1} / |σ+1|` with `C = |f(N)| / N^σ`.
pub fn integral_tail_bound(last_term: f64, n: usize, sigma: f64) -> f64 {
    2.0 * last_term.abs() * n as f64 / (sigma + 1.0).abs()
}

/// Sum a series whose terms decay like `n^σ`.
///
/// For `σ < -1`, terms are accumulated with compensation until the integral
/// tail bound drops below `tol`. If the cap `n_cap` is reached first, the
/// partial sums at `n_cap / 2^k` are Richardson-extrapolated; the change
/// between the two highest extrapolation orders serves as the error bound.
/// For `σ ≥ -1` the series is classified with the doubling-N growth test.
pub fn sum_power_law_series<I>(terms: I, sigma: f64, n_cap: usize, tol: f64) -> Result<OracleResult>
where
    I: IntoIterator<Item = f64>,
{
    if sigma >= -1.0 {
        let g = growth_test(terms, GROWTH_N0, 4);
        let (n, s) = *g.checkpoints.last().expect("growth test has checkpoints");
        return Ok(OracleResult {
            value: s,
            abs_error_bound: f64::INFINITY,
            terms_used: n,
            exact: false,
            growth: Some(g),
        });
    }

    let step = 1usize << RICHARDSON_LEVELS;
    let cap = (n_cap / step).max(MIN_BOUND_CHECKPOINT / step) * step;
    let richardson_points: Vec<usize> =
        (0..=RICHARDSON_LEVELS).map(|k| cap >> (RICHARDSON_LEVELS - k)).collect();

    let mut acc = CompensatedSum::new();
    let mut sums = Vec::with_capacity(richardson_points.len());
    let mut next_bound_check = MIN_BOUND_CHECKPOINT;
    let mut last_bound = f64::INFINITY;
    let mut ri = 0;
    for (n, x) in terms.into_iter().enumerate().take(cap) {
        acc.add(x);
        let count = n + 1;
        if count == next_bound_check || count == cap {
            last_bound = integral_tail_bound(x, count, sigma);
            if last_bound <= tol {
                return Ok(OracleResult {
                    value: acc.value(),
                    abs_error_bound: last_bound,
                    terms_used: count,
                    exact: false,
                    growth: None,
                });
            }
            next_bound_check = next_bound_check.saturating_mul(2);
        }
        if ri < richardson_points.len() && count == richardson_points[ri] {
            sums.push(acc.value());
            ri += 1;
        }
    }
    if sums.len() < richardson_points.len() {
        // the iterator ran dry: the series is finite
        return Ok(OracleResult {
            value: acc.value(),
            abs_error_bound: 0.0,
            terms_used: cap,
            exact: false,
            growth: None,
        });
    }

    let (value, err) = richardson(&sums, sigma + 1.0);
    let err = err.max(4.0 * f64::EPSILON * value.abs());
    if err <= tol {
        Ok(OracleResult { value, abs_error_bound: err, terms_used: cap, exact: false, growth: None })
    } else {
        Err(Error::ToleranceUnreachable { tol, bound: err.min(last_bound), terms: cap })
    }
}

/// Richardson extrapolation of `S(N_j)`, `N_j = N_0 2^j`, assuming
/// `S(N) = S - Σ_k e_k N^{p-k}`. Returns the extrapolated value and an error
/// estimate from the last two diagonal entries.
pub fn richardson(sums: &[f64], p: f64) -> (f64, f64) {
    let levels = sums.len();
    assert!(levels >= 2);
    let mut table: Vec<Vec<f64>> = vec![sums.to_vec()];
    for k in 1..levels {
        let r = 2f64.powf(p - (k - 1) as f64);
        let prev = &table[k - 1];
        let row: Vec<f64> = prev.windows(2).map(|w| (w[1] - r * w[0]) / (1.0 - r)).collect();
        table.push(row);
    }
    let best = *table[levels - 1].last().unwrap();
    let second = *table[levels - 2].last().unwrap();
    (best, 2.0 * (best - second).abs())
}
