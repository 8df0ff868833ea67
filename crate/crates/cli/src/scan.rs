//! `scan` and `check`: criteria over parameter grids.

use clausen_core::{criterion, ClassParams, Complex64, Params, TheoremId};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::Row;
use crate::range::{cartesian, NameList, RangeSpec};
use crate::{CliError, Options};

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub a_re: RangeSpec,
    pub a_im: RangeSpec,
    pub b: RangeSpec,
    pub c: RangeSpec,
    pub lambda: RangeSpec,
    pub beta: RangeSpec,
    pub theorems: Vec<TheoremId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub theorem: &'static str,
    pub a_re: f64,
    pub a_im: f64,
    pub b: f64,
    pub c: f64,
    pub lambda: f64,
    pub beta: f64,
    pub premise_exponent: f64,
    pub convergent: bool,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub holds: Option<bool>,
    pub printed_matches_derived: Option<bool>,
    pub status: &'static str,
}

impl Row for ScanRow {
    const HEADER: &'static [&'static str] = &[
        "theorem",
        "a_re",
        "a_im",
        "b",
        "c",
        "lambda",
        "beta",
        "premise_exponent",
        "convergent",
        "lhs",
        "rhs",
        "holds",
        "printed_matches_derived",
        "status",
    ];
}

impl ScanSpec {
    pub fn from_options(o: &Options) -> Result<Self, CliError> {
        let theorems =
            o.theorem.clone().unwrap_or_else(|| NameList(vec!["all".into()])).resolve(&TheoremId::ALL)?;
        Ok(Self {
            a_re: o.required(o.a_re, "a-re")?,
            a_im: o.a_im.unwrap_or(RangeSpec::single(0.0)),
            b: o.required(o.b, "b")?,
            c: o.required(o.c, "c")?,
            lambda: o.lambda.unwrap_or(RangeSpec::single(1.0)),
            beta: o.beta.unwrap_or(RangeSpec::single(0.0)),
            theorems,
        })
    }

    /// Grid points `(a_re, a_im, b, c, λ, β)`, last axis fastest.
    pub fn points(&self) -> Vec<[f64; 6]> {
        cartesian([&self.a_re, &self.a_im, &self.b, &self.c, &self.lambda, &self.beta])
    }

    pub fn row_count(&self) -> usize {
        [&self.a_re, &self.a_im, &self.b, &self.c, &self.lambda, &self.beta]
            .iter()
            .map(|r| r.steps)
            .product::<usize>()
            * self.theorems.len()
    }
}

/// One criterion at one point; parameter errors become the row status.
pub fn scan_point(id: TheoremId, point: [f64; 6]) -> (ScanRow, Vec<String>) {
    let [a_re, a_im, b, c, lambda, beta] = point;
    let a = Complex64::new(a_re, a_im);
    let mut row = ScanRow {
        theorem: id.label(),
        a_re,
        a_im,
        b,
        c,
        lambda,
        beta,
        premise_exponent: a.norm() - 3.0 + id.premise_degree() as f64,
        convergent: false,
        lhs: None,
        rhs: None,
        holds: None,
        printed_matches_derived: None,
        status: "",
    };
    row.convergent = row.premise_exponent < -1.0;
    let report = Params::new(a, b, c)
        .and_then(|p| ClassParams::new(lambda, beta).map(|cp| (p, cp)))
        .and_then(|(p, cp)| criterion(id, &p, &cp));
    match report {
        Ok(r) => {
            row.premise_exponent = r.premise_exponent;
            row.convergent = r.premise_convergent;
            row.lhs = r.lhs;
            row.rhs = r.rhs;
            row.holds = r.holds;
            row.printed_matches_derived = r.printed_matches_derived;
            row.status = r.verdict.label();
            (row, r.notes)
        }
        Err(e) => {
            row.status = e.status();
            (row, vec![e.to_string()])
        }
    }
}

fn evaluate(spec: &ScanSpec) -> Result<Vec<(ScanRow, Vec<String>)>, CliError> {
    if spec.theorems.is_empty() {
        return Err(CliError::InvalidInput("no theorems selected".into()));
    }
    let jobs: Vec<(TheoremId, [f64; 6])> =
        spec.points().into_iter().flat_map(|p| spec.theorems.iter().map(move |&id| (id, p))).collect();
    Ok(jobs.into_par_iter().map(|(id, p)| scan_point(id, p)).collect())
}

/// Rows in grid order (theorem fastest), independent of thread scheduling.
pub fn run_scan(spec: &ScanSpec) -> Result<Vec<ScanRow>, CliError> {
    Ok(evaluate(spec)?.into_iter().map(|(r, _)| r).collect())
}

/// A message attached to the criterion it came from.
pub type Note = (&'static str, String);

/// As [`run_scan`], keeping each row's notes.
pub fn run_check(spec: &ScanSpec) -> Result<(Vec<ScanRow>, Vec<Note>), CliError> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for (row, n) in evaluate(spec)? {
        notes.extend(n.into_iter().map(|s| (row.theorem, s)));
        rows.push(row);
    }
    Ok((rows, notes))
}
