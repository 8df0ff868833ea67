//! Sufficient conditions for `z·3F2` and for `I_{a,b,c}(f)` to lie in the
//! classes `S*_λ`, `C_λ`, `UCV` and `S_p`.
//!
//! Every criterion bounds a premise series
//! `T = Σ_{n≥2} w(n) t_{n-1}(|a|, b, c) bound(n)` by a class threshold. With
//! `m = n - 1`, each `T` rearranges into a combination of the weighted sums
//! `W0..W3, WInv` of [`crate::closed_forms`], which is how the closed-form
//! left-hand sides are rebuilt here. The displayed inequalities are also
//! evaluated verbatim so that transcription slips show up as a mismatch.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{closed_from_parts, GammaParts, Weight, WeightedSumSpec};
use crate::error::{Error, Result};
use crate::numerics::{ClassParams, Params, DEGENERATE_EPS, POLE_EPS};
use crate::operator::{
    operator_coefficients, weighted_coefficient_growth, weighted_coefficient_limit, weighted_coefficient_sum,
    z_hypergeometric, CoefficientProfile, CoefficientSum, TaylorSeries, WeightPoly,
};
use crate::summation::{GrowthTest, OracleResult};

/// Target class of a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometricClass {
    /// `|zf'/f - 1| < λ`
    StarlikeLambda,
    /// `zf' ∈ S*_λ`
    ConvexLambda,
    /// `Re(1 + zf''/f') > |zf''/f'|`
    Ucv,
    /// `Re(zf'/f) > |zf'/f - 1|`
    Sp,
}

impl GeometricClass {
    pub const ALL: [GeometricClass; 4] = [
        GeometricClass::StarlikeLambda,
        GeometricClass::ConvexLambda,
        GeometricClass::Ucv,
        GeometricClass::Sp,
    ];

    /// Weight of `|a_n|` in the class's coefficient condition.
    pub fn coefficient_weight(self, lambda: f64) -> WeightPoly {
        let n = WeightPoly::linear(0.0, 1.0);
        match self {
            GeometricClass::StarlikeLambda => WeightPoly::linear(lambda - 1.0, 1.0),
            GeometricClass::ConvexLambda => n.mul(&WeightPoly::linear(lambda - 1.0, 1.0)),
            GeometricClass::Ucv => n.mul(&WeightPoly::linear(-1.0, 1.0)),
            GeometricClass::Sp => WeightPoly::linear(-1.0, 2.0),
        }
    }

    /// Right-hand side of the coefficient condition.
    pub fn threshold(self, lambda: f64) -> f64 {
        match self {
            GeometricClass::StarlikeLambda | GeometricClass::ConvexLambda => lambda,
            GeometricClass::Ucv => 1.0 / 3.0,
            GeometricClass::Sp => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GeometricClass::StarlikeLambda => "starlike",
            GeometricClass::ConvexLambda => "convex",
            GeometricClass::Ucv => "ucv",
            GeometricClass::Sp => "sp",
        }
    }
}

impl std::str::FromStr for GeometricClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "starlike" | "starlike-lambda" | "st" => Ok(GeometricClass::StarlikeLambda),
            "convex" | "convex-lambda" | "cv" => Ok(GeometricClass::ConvexLambda),
            "ucv" | "uc" => Ok(GeometricClass::Ucv),
            "sp" | "parabolic" => Ok(GeometricClass::Sp),
            other => Err(Error::InvalidParameter(format!("unknown class {other:?}"))),
        }
    }
}

/// Where the coefficient bound of the input function comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceClass {
    /// The function `z·3F2` itself, `|a_n| ≤ 1`.
    Itself,
    /// `f ∈ R(β)`, `|a_n| ≤ 2(1-β)/n`.
    RBeta,
    /// `f ∈ S`, `|a_n| ≤ n`.
    Univalent,
}

impl SourceClass {
    pub fn profile(self, cp: &ClassParams) -> CoefficientProfile {
        match self {
            SourceClass::Itself => CoefficientProfile::Ones,
            SourceClass::RBeta => CoefficientProfile::MacGregorBound { beta: cp.beta },
            SourceClass::Univalent => CoefficientProfile::UnivalentBound,
        }
    }
}

impl std::str::FromStr for SourceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "itself" | "self" | "ones" => Ok(SourceClass::Itself),
            "r-beta" | "rbeta" | "r" => Ok(SourceClass::RBeta),
            "univalent" | "s" => Ok(SourceClass::Univalent),
            other => Err(Error::InvalidParameter(format!("unknown source class {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    ST1,
    ST2,
    ST3,
    CV1,
    CV2,
    CV3,
    UC1,
    UC2,
    UC3,
    SP1,
    SP2,
    SP3,
}

use TheoremId::*;

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [ST1, ST2, ST3, CV1, CV2, CV3, UC1, UC2, UC3, SP1, SP2, SP3];

    pub fn target(self) -> GeometricClass {
        match self {
            ST1 | ST2 | ST3 => GeometricClass::StarlikeLambda,
            CV1 | CV2 | CV3 => GeometricClass::ConvexLambda,
            UC1 | UC2 | UC3 => GeometricClass::Ucv,
            SP1 | SP2 | SP3 => GeometricClass::Sp,
        }
    }

    pub fn source(self) -> SourceClass {
        match self {
            ST1 | CV1 | UC1 | SP1 => SourceClass::Itself,
            ST2 | CV2 | UC2 | SP2 => SourceClass::RBeta,
            ST3 | CV3 | UC3 | SP3 => SourceClass::Univalent,
        }
    }

    /// Weight of the premise sum, `w(n)`.
    pub fn premise_weight(self, cp: &ClassParams) -> WeightPoly {
        self.target().coefficient_weight(cp.lambda)
    }

    pub fn premise_profile(self, cp: &ClassParams) -> CoefficientProfile {
        self.source().profile(cp)
    }

    /// `deg(w · bound)`.
    pub fn premise_degree(self) -> i32 {
        let weight_deg = match self.target() {
            GeometricClass::StarlikeLambda | GeometricClass::Sp => 1,
            GeometricClass::ConvexLambda | GeometricClass::Ucv => 2,
        };
        let profile_deg = match self.source() {
            SourceClass::Itself => 0,
            SourceClass::RBeta => -1,
            SourceClass::Univalent => 1,
        };
        weight_deg + profile_deg
    }

    /// Criteria whose rearrangement goes through the `1/(n+1)` weight, which
    /// excludes `|a| = 1`, `b = 1` and `c = 1`.
    pub fn uses_inverse_weight(self) -> bool {
        matches!(self, ST2 | SP2)
    }

    pub fn label(self) -> &'static str {
        match self {
            ST1 => "ST1",
            ST2 => "ST2",
            ST3 => "ST3",
            CV1 => "CV1",
            CV2 => "CV2",
            CV3 => "CV3",
            UC1 => "UC1",
            UC2 => "UC2",
            UC3 => "UC3",
            SP1 => "SP1",
            SP2 => "SP2",
            SP3 => "SP3",
        }
    }

    /// Coefficients of `W0, W1, W2, W3, WInv` in the rebuilt left-hand side,
    /// and the constant `D` with `T = s (L - D)`.
    fn rearrangement(self, lambda: f64) -> ([f64; 5], f64) {
        let l1 = lambda - 1.0;
        match self {
            ST1 | CV2 => ([l1, 1.0, 0.0, 0.0, 0.0], lambda),
            ST2 => ([1.0, 0.0, 0.0, 0.0, l1], lambda),
            ST3 | CV1 => ([0.0, l1, 1.0, 0.0, 0.0], lambda),
            CV3 => ([0.0, 0.0, l1, 1.0, 0.0], lambda),
            UC1 => ([0.0, -1.0, 1.0, 0.0, 0.0], 0.0),
            UC2 => ([-1.0, 1.0, 0.0, 0.0, 0.0], 0.0),
            UC3 => ([0.0, 0.0, -1.0, 1.0, 0.0], 0.0),
            SP1 => ([-1.0, 2.0, 0.0, 0.0, 0.0], 1.0),
            SP2 => ([2.0, 0.0, 0.0, 0.0, -1.0], 1.0),
            SP3 => ([0.0, -1.0, 2.0, 0.0, 0.0], 1.0),
        }
    }

    /// Scale `s` in `T = s (L - D)`: `2(1-β)` for `R(β)` sources.
    fn scale(self, cp: &ClassParams) -> f64 {
        match self.source() {
            SourceClass::RBeta => 2.0 * (1.0 - cp.beta),
            _ => 1.0,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label() == up)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    /// The premise series diverges, so the criterion says nothing.
    DivergentPremise,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::DivergentPremise => "DivergentPremise",
        }
    }
}

/// One criterion evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub theorem: TheoremId,
    /// Rebuilt left-hand side of the displayed inequality `lhs ≤ rhs`.
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// Closed form of the premise series `T`.
    pub premise_statistic: Option<f64>,
    /// Bound on `T` required by the class: `λ`, `1/3` or `1`.
    pub premise_threshold: f64,
    /// `None` unless the premise converges.
    pub holds: Option<bool>,
    pub verdict: Verdict,
    pub premise_exponent: f64,
    pub premise_convergent: bool,
    /// The displayed left-hand side evaluated as written.
    pub printed_lhs: Option<f64>,
    pub printed_matches_derived: Option<bool>,
    pub notes: Vec<String>,
}

/// Relative agreement required between printed and rebuilt left-hand sides.
const PRINTED_MATCH_TOL: f64 = 1e-9;

/// The displayed left-hand side, transcribed as written (with `|a|`).
fn printed_lhs(id: TheoremId, g: &GammaParts, lambda: f64) -> Result<f64> {
    let (b, c) = (g.b, g.c);
    let k = g.k;
    // Γ(x+1)/Γ(1-|a|+x) = x G_x
    let (hb, hc) = (b * g.gb, c * g.gc);
    let v = match id {
        ST1 | CV2 => g.bracket(|x| lambda - x),
        ST2 => g.bracket(|x| (x - lambda) / (x - 1.0)),
        ST3 => g.bracket(|x| (1.0 - x) * (lambda - x)),
        CV1 => k * ((1.0 - b) * (lambda - b) * g.gb - (1.0 - b) * (lambda - c) * g.gc),
        CV3 => g.bracket(|x| x * x - x - x * x * x + lambda * (1.0 - x) * (1.0 - x)),
        UC1 => k * ((1.0 - c) * hc - (1.0 - b) * hb),
        UC2 => k * (hc - hb),
        UC3 => g.bracket(|x| x * x - x - x * x * x),
        SP1 => g.bracket(|x| 1.0 - 2.0 * x),
        SP2 => {
            if (b - 1.0).abs() < DEGENERATE_EPS || (c - 1.0).abs() < DEGENERATE_EPS {
                return Err(Error::DegenerateParameters("b or c equals 1".into()));
            }
            g.bracket(|x| (2.0 * x - 1.0) / (x - 1.0)) + g.inv_offset()
        }
        SP3 => g.bracket(|x| (1.0 - x) * (1.0 - 2.0 * x)),
    };
    Ok(v)
}

struct Evaluation {
    lhs: f64,
    rhs: f64,
    statistic: f64,
    printed: Result<f64>,
}

fn evaluate(id: TheoremId, alpha: f64, p: &Params, cp: &ClassParams) -> Result<Evaluation> {
    let g = GammaParts::new(alpha, p.b, p.c)?;
    let (coeffs, d) = id.rearrangement(cp.lambda);
    let mut combo = 0.0;
    for (w, coeff) in Weight::ALL.iter().zip(coeffs) {
        if coeff != 0.0 {
            combo += coeff * closed_from_parts(&WeightedSumSpec::derived(*w), &g)?;
        }
    }
    let s = id.scale(cp);
    let theta = id.target().threshold(cp.lambda);
    let shift = if id == ST2 { (cp.lambda - 1.0) * g.inv_offset() } else { 0.0 };
    Ok(Evaluation {
        lhs: combo + shift,
        rhs: theta / s + d + shift,
        statistic: s * (combo - d),
        printed: printed_lhs(id, &g, cp.lambda),
    })
}

/// Evaluate one criterion at `(p, cp)`, using `|a|` throughout.
///
/// A divergent premise series is a verdict, not an error; parameter
/// problems (`b ≈ c`, `b, c ≤ |a| - 1`, Gamma poles on a convergent
/// premise) are errors.
pub fn criterion(id: TheoremId, p: &Params, cp: &ClassParams) -> Result<CriterionReport> {
    let alpha = p.abs_a();
    if p.is_degenerate() {
        return Err(Error::DegenerateParameters(format!("b ≈ c ({}, {})", p.b, p.c)));
    }
    if !(p.b > alpha - 1.0 && p.c > alpha - 1.0) {
        return Err(Error::DomainViolation(format!(
            "{id} needs b, c > |a| - 1 (|a| = {alpha}, b = {}, c = {})",
            p.b, p.c
        )));
    }
    if id.uses_inverse_weight() {
        if (alpha - 1.0).abs() < POLE_EPS {
            return Err(Error::NearPole { what: "|a|", value: alpha });
        }
        if (p.b - 1.0).abs() < DEGENERATE_EPS || (p.c - 1.0).abs() < DEGENERATE_EPS {
            return Err(Error::DegenerateParameters(format!(
                "{id} needs b, c ≠ 1 (b = {}, c = {})",
                p.b, p.c
            )));
        }
    }

    let premise_exponent = alpha - 3.0 + id.premise_degree() as f64;
    let premise_convergent = premise_exponent < -1.0;
    let mut notes = Vec::new();

    let eval = if premise_convergent {
        Some(evaluate(id, alpha, p, cp)?)
    } else {
        notes.push(format!("premise series diverges: tail exponent {premise_exponent} >= -1"));
        match evaluate(id, alpha, p, cp) {
            Ok(e) => {
                notes.push("lhs/rhs are analytic continuations, not sums".into());
                Some(e)
            }
            Err(e) => {
                notes.push(format!("closed forms unavailable: {e}"));
                None
            }
        }
    };

    let (printed_lhs, printed_matches_derived) = match &eval {
        Some(Evaluation { lhs, printed: Ok(pr), .. }) => {
            let ok = (pr - lhs).abs() <= PRINTED_MATCH_TOL * lhs.abs().max(1.0);
            if !ok {
                notes.push(format!("printed display gives {pr}, rebuilt form gives {lhs}"));
            }
            (Some(*pr), Some(ok))
        }
        Some(Evaluation { printed: Err(e), .. }) => {
            notes.push(format!("printed display unavailable: {e}"));
            (None, None)
        }
        None => (None, None),
    };

    let (verdict, holds) = match (&eval, premise_convergent) {
        (Some(e), true) if e.lhs <= e.rhs => (Verdict::Holds, Some(true)),
        (Some(_), true) => (Verdict::Fails, Some(false)),
        _ => (Verdict::DivergentPremise, None),
    };

    Ok(CriterionReport {
        theorem: id,
        lhs: eval.as_ref().map(|e| e.lhs),
        rhs: eval.as_ref().map(|e| e.rhs),
        premise_statistic: eval.as_ref().map(|e| e.statistic),
        premise_threshold: id.target().threshold(cp.lambda),
        holds,
        verdict,
        premise_exponent,
        premise_convergent,
        printed_lhs,
        printed_matches_derived,
        notes,
    })
}

/// Truncated premise sum `Σ_{n=2}^N w(n) t_{n-1}(|a|) bound(n)` of a criterion.
pub fn premise_partial_sum(id: TheoremId, p: &Params, cp: &ClassParams, truncation: usize) -> CoefficientSum {
    weighted_coefficient_sum(&id.premise_profile(cp), p, &id.premise_weight(cp), truncation)
}

/// The premise series summed by brute force (with tail extrapolation).
pub fn premise_oracle(
    id: TheoremId,
    p: &Params,
    cp: &ClassParams,
    n_cap: usize,
    tol: f64,
) -> Result<OracleResult> {
    weighted_coefficient_limit(&id.premise_profile(cp), p, &id.premise_weight(cp), n_cap, tol)
}

/// Doubling-N growth test on the premise partial sums.
pub fn premise_growth(id: TheoremId, p: &Params, cp: &ClassParams, n0: usize, doublings: u32) -> GrowthTest {
    weighted_coefficient_growth(&id.premise_profile(cp), p, &id.premise_weight(cp), n0, doublings)
}

/// The series whose coefficients attain the premise bounds: `z·3F2` with
/// `|a|` for the function itself, `I_{|a|,b,c}` of the extremal source
/// series otherwise.
pub fn extremal_series(id: TheoremId, p: &Params, cp: &ClassParams, truncation: usize) -> TaylorSeries {
    let pm = p.with_modulus();
    match id.source() {
        SourceClass::Itself => z_hypergeometric(&pm, false, truncation),
        _ => operator_coefficients(&pm, &id.premise_profile(cp).extremal_series(truncation), truncation),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSumTest {
    pub class: GeometricClass,
    pub statistic: f64,
    pub threshold: f64,
    pub holds: bool,
}

/// Coefficient sufficient condition `Σ_{n=2}^N w_class(n) |a_n| ≤ threshold`.
pub fn coefficient_sum_test(
    class: GeometricClass,
    f: &TaylorSeries,
    cp: &ClassParams,
    truncation: usize,
) -> CoefficientSumTest {
    let w = class.coefficient_weight(cp.lambda);
    let upper = truncation.min(f.truncation());
    let mut acc = crate::summation::CompensatedSum::new();
    acc.extend((2..=upper).map(|n| w.eval(n as f64) * f.coeff(n).norm()));
    let statistic = acc.value();
    let threshold = class.threshold(cp.lambda);
    CoefficientSumTest { class, statistic, threshold, holds: statistic <= threshold }
}
