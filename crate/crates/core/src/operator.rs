//! Normalised Taylor series, Hadamard products and the operator
//! `I_{a,b,c}(f) = z·3F2(a, b, c; b+1, c+1; z) * f`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{term_sequence, Params, RealTerms};
use crate::summation::{growth_test, sum_power_law_series, GrowthTest, OracleResult};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Truncated `f(z) = z + Σ_{n=2}^N a_n z^n`; `coefficients[n-1]` holds `a_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorSeries {
    coefficients: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        match coefficients.first() {
            Some(a1) if *a1 == ONE => Ok(Self { coefficients }),
            _ => Err(Error::InvalidParameter("a normalised series needs a_1 = 1".into())),
        }
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self { coefficients: vec![ONE] }
    }

    /// `a_1 = 1` and `a_n = coeff(n)` for `2 ≤ n ≤ truncation`.
    pub fn from_fn(truncation: usize, mut coeff: impl FnMut(usize) -> Complex64) -> Self {
        let mut coefficients = Vec::with_capacity(truncation.max(1));
        coefficients.push(ONE);
        coefficients.extend((2..=truncation).map(&mut coeff));
        Self { coefficients }
    }

    pub fn from_real_fn(truncation: usize, mut coeff: impl FnMut(usize) -> f64) -> Self {
        Self::from_fn(truncation, |n| Complex64::new(coeff(n), 0.0))
    }

    /// Highest power kept.
    pub fn truncation(&self) -> usize {
        self.coefficients.len()
    }

    /// `a_n`, zero beyond the truncation (and for `n = 0`).
    pub fn coeff(&self, n: usize) -> Complex64 {
        if n == 0 {
            return ZERO;
        }
        self.coefficients.get(n - 1).copied().unwrap_or(ZERO)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// The series of `z f'(z)`, coefficients `n a_n`.
    pub fn z_derivative(&self) -> Self {
        let coefficients = self.coefficients.iter().enumerate().map(|(i, a)| a * (i + 1) as f64).collect();
        Self { coefficients }
    }
}

/// Coefficient-wise product, truncated at the shorter series.
pub fn hadamard_product(f: &TaylorSeries, g: &TaylorSeries) -> TaylorSeries {
    let coefficients = f.coefficients.iter().zip(&g.coefficients).map(|(x, y)| x * y).collect();
    TaylorSeries { coefficients }
}

/// Truncation of `z·3F2(α, b, c; b+1, c+1; z)`: `a_n = t_{n-1}`, with
/// `α = |a|` when `use_abs_a` is set.
pub fn z_hypergeometric(p: &Params, use_abs_a: bool, truncation: usize) -> TaylorSeries {
    let coefficients = term_sequence(p, use_abs_a, truncation.saturating_sub(1));
    TaylorSeries { coefficients }
}

/// Coefficients of `I_{a,b,c}(f)`: `A_1 = 1`, `A_n = t_{n-1}(a, b, c) a_n`.
pub fn operator_coefficients(p: &Params, f: &TaylorSeries, truncation: usize) -> TaylorSeries {
    let t = term_sequence(p, false, truncation.saturating_sub(1));
    TaylorSeries::from_fn(truncation, |n| t[n - 1] * f.coeff(n))
}

/// Modulus bound on the `n`-th coefficient of a source function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CoefficientProfile {
    ExactSeries(TaylorSeries),
    /// `|a_n| ≤ 1`
    Ones,
    /// `|a_n| ≤ n`, univalent functions.
    UnivalentBound,
    /// `|a_n| ≤ 2(1-β)/n`, the class `R(β)`.
    MacGregorBound {
        beta: f64,
    },
}

impl CoefficientProfile {
    #[inline]
    pub fn bound(&self, n: usize) -> f64 {
        match self {
            CoefficientProfile::ExactSeries(f) => f.coeff(n).norm(),
            CoefficientProfile::Ones => 1.0,
            CoefficientProfile::UnivalentBound => n as f64,
            CoefficientProfile::MacGregorBound { beta } => 2.0 * (1.0 - beta) / n as f64,
        }
    }

    /// Polynomial degree of `bound(n)`; `None` for finitely supported profiles.
    pub fn degree(&self) -> Option<i32> {
        match self {
            CoefficientProfile::ExactSeries(_) => None,
            CoefficientProfile::Ones => Some(0),
            CoefficientProfile::UnivalentBound => Some(1),
            CoefficientProfile::MacGregorBound { .. } => Some(-1),
        }
    }

    /// The series with `a_n = bound(n)`, `n ≤ truncation`.
    pub fn extremal_series(&self, truncation: usize) -> TaylorSeries {
        TaylorSeries::from_real_fn(truncation, |n| self.bound(n))
    }
}

/// Real polynomial in `n`, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightPoly {
    coeffs: Vec<f64>,
}

impl WeightPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 n`.
    pub fn linear(c0: f64, c1: f64) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn mul(&self, other: &WeightPoly) -> WeightPoly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        WeightPoly::new(out)
    }

    #[inline]
    pub fn eval(&self, n: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * n + c)
    }

    pub fn degree(&self) -> i32 {
        self.coeffs.len() as i32 - 1
    }
}

/// Truncated premise sum and its tail exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSum {
    pub value: f64,
    /// `|a| - 3 + deg(weight · bound)`; `-∞` for finitely supported profiles.
    pub tail_exponent: f64,
    pub convergent: bool,
}

fn tail_exponent(profile: &CoefficientProfile, p: &Params, weight: &WeightPoly) -> f64 {
    match profile.degree() {
        Some(d) => p.abs_a() - 3.0 + (weight.degree() + d) as f64,
        None => f64::NEG_INFINITY,
    }
}

/// `weight(n) t_{n-1}(|a|, b, c) bound(n)` for `n = 2, 3, …`.
fn premise_terms<'a>(
    profile: &'a CoefficientProfile,
    p: &Params,
    weight: &'a WeightPoly,
) -> impl Iterator<Item = f64> + 'a {
    RealTerms::new(p.abs_a(), p.b, p.c).enumerate().skip(1).map(move |(k, t)| {
        let n = k + 1;
        weight.eval(n as f64) * t * profile.bound(n)
    })
}

/// `Σ_{n=2}^{N} weight(n) t_{n-1}(|a|, b, c) bound(n)`.
pub fn weighted_coefficient_sum(
    profile: &CoefficientProfile,
    p: &Params,
    weight: &WeightPoly,
    truncation: usize,
) -> CoefficientSum {
    let n_terms = match profile {
        CoefficientProfile::ExactSeries(f) => truncation.min(f.truncation()),
        _ => truncation,
    }
    .saturating_sub(1);
    let mut acc = crate::summation::CompensatedSum::new();
    acc.extend(premise_terms(profile, p, weight).take(n_terms));
    let tail_exponent = tail_exponent(profile, p, weight);
    CoefficientSum { value: acc.value(), tail_exponent, convergent: tail_exponent < -1.0 }
}

/// The infinite premise sum, extrapolated as in [`sum_power_law_series`].
pub fn weighted_coefficient_limit(
    profile: &CoefficientProfile,
    p: &Params,
    weight: &WeightPoly,
    n_cap: usize,
    tol: f64,
) -> Result<OracleResult> {
    if let CoefficientProfile::ExactSeries(f) = profile {
        let s = weighted_coefficient_sum(profile, p, weight, f.truncation());
        return Ok(OracleResult {
            value: s.value,
            abs_error_bound: 0.0,
            terms_used: f.truncation(),
            exact: false,
            growth: None,
        });
    }
    let sigma = tail_exponent(profile, p, weight);
    sum_power_law_series(premise_terms(profile, p, weight), sigma, n_cap, tol)
}

/// Doubling-N growth test on the premise partial sums.
pub fn weighted_coefficient_growth(
    profile: &CoefficientProfile,
    p: &Params,
    weight: &WeightPoly,
    n0: usize,
    doublings: u32,
) -> GrowthTest {
    growth_test(premise_terms(profile, p, weight), n0, doublings)
}
