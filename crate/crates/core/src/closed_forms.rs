//! Closed forms of `3F2(α, b, c; b+1, c+1; 1)` and of its weighted variants
//! `Σ w(n) t_n` with `w(n) ∈ {1, n+1, (n+1)², (n+1)³, 1/(n+1)}`, next to a
//! brute-force oracle that never touches Gamma.
//!
//! Writing `t_n = (α)_n/n! · bc/((n+b)(n+c))` and splitting
//! `(n+1)^k/((n+b)(n+c))` into partial fractions gives
//!
//! ```text
//! Σ (n+1)^k t_n = bc Γ(1-α)/(c-b) · [(1-b)^k Γ(b)/Γ(1-α+b) - (1-c)^k Γ(c)/Γ(1-α+c)]
//!               + bc Σ (α)_n/n! · Q_k(n)
//! ```
//!
//! where `Q_k` is a polynomial of degree `k-2`. The polynomial remainder
//! vanishes whenever the series converges without terminating; for a
//! terminating series `α = -m` it equals a finite sum that is non-zero only
//! at the boundary cases `m = 0` (`k = 2, 3`) and `m = 1` (`k = 3`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gamma, terminating_degree, Params, RealTerms, DEGENERATE_EPS, POLE_EPS};
use crate::summation::sum_power_law_series;
pub use crate::summation::OracleResult;

mod exact;

/// Summation cap used by the oracle unless the caller chooses another.
pub const ORACLE_N_CAP: usize = 1_000_000;

/// Weight multiplying the `n`-th term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    /// `1`
    W0,
    /// `n + 1`
    W1,
    /// `(n + 1)²`
    W2,
    /// `(n + 1)³`
    W3,
    /// `1 / (n + 1)`
    WInv,
}

impl Weight {
    pub const ALL: [Weight; 5] = [Weight::W0, Weight::W1, Weight::W2, Weight::W3, Weight::WInv];

    pub fn degree(self) -> i32 {
        match self {
            Weight::W0 => 0,
            Weight::W1 => 1,
            Weight::W2 => 2,
            Weight::W3 => 3,
            Weight::WInv => -1,
        }
    }

    #[inline]
    pub fn eval(self, n: usize) -> f64 {
        let m = (n + 1) as f64;
        match self {
            Weight::W0 => 1.0,
            Weight::W1 => m,
            Weight::W2 => m * m,
            Weight::W3 => m * m * m,
            Weight::WInv => 1.0 / m,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Weight::W0 => "W0",
            Weight::W1 => "W1",
            Weight::W2 => "W2",
            Weight::W3 => "W3",
            Weight::WInv => "WInv",
        }
    }

    /// Upper end (exclusive) of the real `α` range on which the weighted
    /// series converges: `α < 2 - deg`.
    pub fn validity_bound(self) -> f64 {
        2.0 - self.degree().max(0) as f64
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "w0" | "0" => Ok(Weight::W0),
            "w1" | "1" => Ok(Weight::W1),
            "w2" | "2" => Ok(Weight::W2),
            "w3" | "3" => Ok(Weight::W3),
            "winv" | "inv" | "4" => Ok(Weight::WInv),
            other => Err(Error::InvalidParameter(format!("unknown weight {other:?}"))),
        }
    }
}

/// Which closed form to evaluate: the bracket as printed, or the re-derived one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    #[default]
    Derived,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Derived => "derived",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "printed" => Ok(Variant::Printed),
            "derived" => Ok(Variant::Derived),
            other => Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedSumSpec {
    pub weight: Weight,
    pub variant: Variant,
}

impl WeightedSumSpec {
    pub fn derived(weight: Weight) -> Self {
        Self { weight, variant: Variant::Derived }
    }

    pub fn printed(weight: Weight) -> Self {
        Self { weight, variant: Variant::Printed }
    }
}

/// How the numerator parameter enters: `α = a` (must be real) or `α = |a|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaMode {
    #[default]
    Raw,
    Modulus,
}

impl std::str::FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "raw" => Ok(AlphaMode::Raw),
            "modulus" | "abs" => Ok(AlphaMode::Modulus),
            other => Err(Error::InvalidParameter(format!("unknown alpha mode {other:?}"))),
        }
    }
}

pub fn resolve_alpha(p: &Params, mode: AlphaMode) -> Result<f64> {
    match mode {
        AlphaMode::Modulus => Ok(p.abs_a()),
        AlphaMode::Raw if p.a.im == 0.0 => Ok(p.a.re),
        AlphaMode::Raw => {
            Err(Error::DomainViolation(format!("raw mode needs a real numerator parameter, got a = {}", p.a)))
        }
    }
}

/// Tail exponent `σ = α - 3 + deg(W)`: the weighted terms decay like `n^σ`.
pub fn convergence_exponent(spec: &WeightedSumSpec, p: &Params, mode: AlphaMode) -> f64 {
    let alpha = match mode {
        AlphaMode::Raw => p.a.re,
        AlphaMode::Modulus => p.abs_a(),
    };
    exponent_for(spec.weight, alpha)
}

pub(crate) fn exponent_for(weight: Weight, alpha: f64) -> f64 {
    alpha - 3.0 + weight.degree() as f64
}

/// Whether `Σ w(n) t_n` is a finite number: terminating, or `σ < -1`.
pub fn is_convergent(weight: Weight, alpha: f64) -> bool {
    terminating_degree(alpha).is_some() || exponent_for(weight, alpha) < -1.0
}

/// Shared parameter checks of every closed form. NaN fails every check.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn check_domain(alpha: f64, b: f64, c: f64) -> Result<()> {
    if !(alpha < 2.0) {
        return Err(Error::DomainViolation(format!("closed forms need α < 2, got α = {alpha}")));
    }
    if !(b > alpha - 1.0 && c > alpha - 1.0) {
        return Err(Error::DomainViolation(format!("need b, c > α - 1 (α = {alpha}, b = {b}, c = {c})")));
    }
    if (b - c).abs() < DEGENERATE_EPS {
        return Err(Error::DegenerateParameters(format!("b ≈ c ({b}, {c})")));
    }
    if (alpha - 1.0).abs() < POLE_EPS {
        return Err(Error::NearPole { what: "Γ(1-α) at α", value: alpha });
    }
    Ok(())
}

/// The pieces `K = bcΓ(1-α)/(c-b)`, `G_b = Γ(b)/Γ(1-α+b)`, `G_c = Γ(c)/Γ(1-α+c)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GammaParts {
    pub alpha: f64,
    pub b: f64,
    pub c: f64,
    pub k: f64,
    pub gb: f64,
    pub gc: f64,
}

impl GammaParts {
    pub fn new(alpha: f64, b: f64, c: f64) -> Result<Self> {
        check_domain(alpha, b, c)?;
        let pole = |_| Error::NearPole { what: "Γ(1-α) at α", value: alpha };
        let k = b * c * gamma(1.0 - alpha).map_err(pole)? / (c - b);
        let gb = gamma(b)? / gamma(1.0 - alpha + b)?;
        let gc = gamma(c)? / gamma(1.0 - alpha + c)?;
        Ok(Self { alpha, b, c, k, gb, gc })
    }

    /// `K [u(b) G_b - u(c) G_c]`.
    pub fn bracket(&self, u: impl Fn(f64) -> f64) -> f64 {
        self.k * (u(self.b) * self.gb - u(self.c) * self.gc)
    }

    /// `bc/((α-1)(b-1)(c-1))`.
    pub fn inv_offset(&self) -> f64 {
        self.b * self.c / ((self.alpha - 1.0) * (self.b - 1.0) * (self.c - 1.0))
    }

    /// The closed form of `Σ t_n/(n+1)`.
    pub fn inverse_weight(&self) -> Result<f64> {
        let (alpha, b, c) = (self.alpha, self.b, self.c);
        if (b - 1.0).abs() < DEGENERATE_EPS || (c - 1.0).abs() < DEGENERATE_EPS {
            return Err(Error::DegenerateParameters(format!(
                "the 1/(n+1) weight needs b, c ≠ 1 (b = {b}, c = {c})"
            )));
        }
        let g2 = gamma(2.0 - alpha).map_err(|_| Error::NearPole { what: "Γ(2-α) at α", value: alpha })?;
        let inner = g2 / (c - b) * ((c - 1.0) * self.gb - (b - 1.0) * self.gc);
        Ok(self.inv_offset() * (inner - 1.0))
    }
}

/// `3F2(α, b, c; b+1, c+1; 1) = bc/(c-b) Γ(1-α) [Γ(b)/Γ(1-α+b) - Γ(c)/Γ(1-α+c)]`.
pub fn miller_paris_value(p: &Params, mode: AlphaMode) -> Result<f64> {
    let alpha = resolve_alpha(p, mode)?;
    let g = GammaParts::new(alpha, p.b, p.c)?;
    Ok(g.k * (g.gb - g.gc))
}

/// `bc Σ_{n≤m} (-m)_n/n! · Q_k(n)`: the polynomial remainder of the partial
/// fraction split, non-zero only for short terminating series.
fn terminating_remainder(k: i32, m: u64, b: f64, c: f64) -> f64 {
    let q = |n: f64| match k {
        2 => 1.0,
        3 => n + 3.0 - b - c,
        _ => 0.0,
    };
    let mut w = 1.0;
    let mut acc = 0.0;
    for n in 0..=m {
        acc += w * q(n as f64);
        w *= (n as f64 - m as f64) / (n as f64 + 1.0);
    }
    b * c * acc
}

/// Closed form of `Σ_{n≥0} w(n) t_n`.
///
/// Fails with [`Error::DivergentSum`] when the series diverges, unless `force`
/// is set, in which case the formula is evaluated anyway (its value is then
/// an analytic continuation, not a sum).
pub fn weighted_sum_closed(spec: &WeightedSumSpec, p: &Params, mode: AlphaMode, force: bool) -> Result<f64> {
    let alpha = resolve_alpha(p, mode)?;
    let parts = GammaParts::new(alpha, p.b, p.c)?;
    if !force && !is_convergent(spec.weight, alpha) {
        return Err(Error::DivergentSum { exponent: exponent_for(spec.weight, alpha) });
    }
    closed_from_parts(spec, &parts)
}

pub(crate) fn closed_from_parts(spec: &WeightedSumSpec, g: &GammaParts) -> Result<f64> {
    let k = spec.weight.degree();
    let value = match (spec.weight, spec.variant) {
        (Weight::WInv, _) => g.inverse_weight()?,
        (Weight::W3, Variant::Printed) => g.bracket(|x| (1.0 - x).powi(3) - x * x),
        (_, variant) => {
            let main = g.bracket(|x| (1.0 - x).powi(k));
            match (variant, terminating_degree(g.alpha)) {
                (Variant::Derived, Some(m)) => main + terminating_remainder(k, m, g.b, g.c),
                _ => main,
            }
        }
    };
    Ok(value)
}

/// Ground-truth `Σ w(n) t_n`, independent of Gamma.
///
/// Terminating series are summed exactly in rational arithmetic. Otherwise
/// the terms are accumulated with compensation up to `n_cap`, with the tail
/// handled as in [`sum_power_law_series`]; divergent series come back with
/// the growth test attached.
pub fn weighted_sum_oracle(
    spec: &WeightedSumSpec,
    p: &Params,
    mode: AlphaMode,
    tol: f64,
    n_cap: usize,
) -> Result<OracleResult> {
    let alpha = resolve_alpha(p, mode)?;
    if let Some(m) = terminating_degree(alpha) {
        let value = exact::terminating_weighted_sum(spec.weight, m, p.b, p.c);
        return Ok(OracleResult::exact(value, m as usize + 1));
    }
    let weight = spec.weight;
    let terms = RealTerms::new(alpha, p.b, p.c).enumerate().map(move |(n, t)| weight.eval(n) * t);
    sum_power_law_series(terms, exponent_for(weight, alpha), n_cap, tol)
}

/// The amount by which the printed `(n+1)³` bracket differs from the derived one:
/// `K [c² G_c - b² G_b]`.
pub fn w3_printed_discrepancy(p: &Params, mode: AlphaMode) -> Result<f64> {
    let alpha = resolve_alpha(p, mode)?;
    let g = GammaParts::new(alpha, p.b, p.c)?;
    Ok(g.k * (g.c * g.c * g.gc - g.b * g.b * g.gb))
}
