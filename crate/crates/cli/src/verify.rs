//! `verify-lemma`: closed-form weighted sums against brute-force oracles.

use clausen_core::closed_forms::{resolve_alpha, ORACLE_N_CAP};
use clausen_core::numerics::terminating_degree;
use clausen_core::{
    convergence_exponent, weighted_sum_closed, weighted_sum_oracle, AlphaMode, Complex64, OracleResult,
    Params, Variant, Weight, WeightedSumSpec,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::Row;
use crate::range::{cartesian, NameList, RangeSpec};
use crate::{CliError, Options};

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_N_MAX: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyEntry {
    pub spec: WeightedSumSpec,
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyPlan {
    pub entries: Vec<VerifyEntry>,
    pub mode: AlphaMode,
    /// Relative tolerance, floored at [`ABS_FLOOR`].
    pub tol: f64,
    pub n_max: usize,
    pub force_partial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub part: &'static str,
    pub variant: &'static str,
    /// The numerator parameter as it enters the sum (`a` or `|a|`).
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub closed: Option<f64>,
    pub oracle: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub convergent: bool,
    pub exact: bool,
}

impl Row for VerifyRow {
    const HEADER: &'static [&'static str] =
        &["part", "variant", "a", "b", "c", "closed", "oracle", "abs_err", "rel_err", "convergent", "exact"];
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    /// Indices of rows whose error exceeds the tolerance, any variant.
    pub flagged: Vec<usize>,
    /// A convergent derived-variant row exceeds the tolerance.
    pub audit_failed: bool,
    pub notes: Vec<String>,
}

impl VerifyPlan {
    pub fn new(entries: Vec<VerifyEntry>, mode: AlphaMode) -> Self {
        Self { entries, mode, tol: DEFAULT_TOL, n_max: DEFAULT_N_MAX, force_partial: false }
    }

    pub fn from_options(o: &Options) -> Result<Self, CliError> {
        let parts = o.part.clone().unwrap_or_else(|| NameList(vec!["all".into()])).resolve(&Weight::ALL)?;
        let variants = o
            .variant
            .clone()
            .unwrap_or_else(|| NameList(vec!["derived".into(), "printed".into()]))
            .resolve(&[Variant::Derived, Variant::Printed])?;
        let mode = o.mode.unwrap_or_default();
        let a_re = o.required(o.a_re, "a-re")?;
        let a_im = o.a_im.unwrap_or(RangeSpec::single(0.0));
        let b = o.required(o.b, "b")?;
        let c = o.required(o.c, "c")?;
        let mut entries = Vec::new();
        for [ar, ai, b, c] in cartesian([&a_re, &a_im, &b, &c]) {
            let params = Params::new(Complex64::new(ar, ai), b, c)?;
            resolve_alpha(&params, mode)?;
            for &weight in &parts {
                for &variant in &variants {
                    entries.push(VerifyEntry { spec: WeightedSumSpec { weight, variant }, params });
                }
            }
        }
        let tol = o.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::InvalidInput(format!("--tol must be positive, got {tol}")));
        }
        let n_max = o.n_max.unwrap_or(DEFAULT_N_MAX);
        if !(1..=ORACLE_N_CAP).contains(&n_max) {
            return Err(CliError::InvalidInput(format!("--n-max must lie in 1..={ORACLE_N_CAP}")));
        }
        Ok(Self { entries, mode, tol, n_max, force_partial: o.force_partial })
    }
}

/// Absolute floor of the per-row tolerance.
pub const ABS_FLOOR: f64 = 1e-10;

fn exceeds(abs_err: f64, oracle: f64, tol: f64) -> bool {
    abs_err > (tol * oracle.abs()).max(ABS_FLOOR)
}

fn verify_one(plan: &VerifyPlan, e: &VerifyEntry) -> (VerifyRow, Vec<String>) {
    let mut notes = Vec::new();
    let p = &e.params;
    let alpha = resolve_alpha(p, plan.mode).expect("validated when the plan was built");
    let sigma = convergence_exponent(&e.spec, p, plan.mode);
    let convergent = terminating_degree(alpha).is_some() || sigma < -1.0;
    let label = format!("{} {} a={alpha} b={} c={}", e.spec.weight.label(), e.spec.variant.label(), p.b, p.c);

    if !convergent && !plan.force_partial {
        notes.push(format!("{label}: divergent (tail exponent {sigma}), not summed"));
        return (row_for(e, alpha, None, None, convergent), notes);
    }
    let closed = match weighted_sum_closed(&e.spec, p, plan.mode, plan.force_partial) {
        Ok(v) => Some(v),
        Err(err) => {
            notes.push(format!("{label}: closed form: {err}"));
            None
        }
    };
    let scale = closed.map_or(1.0, f64::abs);
    let oracle_tol = (0.1 * plan.tol * scale).max(0.1 * ABS_FLOOR);
    let oracle = match weighted_sum_oracle(&e.spec, p, plan.mode, oracle_tol, plan.n_max) {
        Ok(r) => {
            if r.is_divergent() {
                notes.push(format!("{label}: partial sums grow, last at N = {}", r.terms_used));
            }
            Some(r)
        }
        Err(err) => {
            notes.push(format!("{label}: oracle: {err}"));
            None
        }
    };
    (row_for(e, alpha, closed, oracle.as_ref(), convergent), notes)
}

fn row_for(
    e: &VerifyEntry,
    alpha: f64,
    closed: Option<f64>,
    oracle: Option<&OracleResult>,
    convergent: bool,
) -> VerifyRow {
    let p = &e.params;
    let (abs_err, rel_err) = match (closed, oracle) {
        (Some(x), Some(o)) if convergent => {
            let d = (x - o.value).abs();
            (Some(d), (o.value != 0.0).then(|| d / o.value.abs()))
        }
        _ => (None, None),
    };
    VerifyRow {
        part: e.spec.weight.label(),
        variant: e.spec.variant.label(),
        a: alpha,
        b: p.b,
        c: p.c,
        closed,
        oracle: oracle.map(|o| o.value),
        abs_err,
        rel_err,
        convergent,
        exact: oracle.is_some_and(|o| o.exact),
    }
}

/// One row per plan entry, in plan order.
pub fn run_verify_lemma(plan: &VerifyPlan) -> Result<VerifyReport, CliError> {
    if plan.entries.is_empty() {
        return Err(CliError::EmptyPlan);
    }
    let results: Vec<(VerifyRow, Vec<String>)> =
        plan.entries.par_iter().map(|e| verify_one(plan, e)).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut notes = Vec::new();
    for (row, n) in results {
        rows.push(row);
        notes.extend(n);
    }
    let flagged: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| match (r.abs_err, r.oracle) {
            (Some(d), Some(o)) => exceeds(d, o, plan.tol),
            _ => false,
        })
        .map(|(i, _)| i)
        .collect();
    let audit_failed =
        flagged.iter().any(|&i| rows[i].variant == Variant::Derived.label() && rows[i].convergent);
    Ok(VerifyReport { rows, flagged, audit_failed, notes })
}
