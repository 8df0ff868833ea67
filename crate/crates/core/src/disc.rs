//! Sampling the unit disc to falsify class membership of truncated series.
//!
//! A negative margin at a sample point shows the truncated polynomial is not
//! in the class. A positive minimum is evidence only: the grid is finite and
//! the polynomial is a truncation, whose error the report bounds when a
//! coefficient bound is supplied.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::GeometricClass;
use crate::error::{Error, Result};
use crate::numerics::{ClassParams, Params, RealTerms};
use crate::operator::{CoefficientProfile, TaylorSeries};

/// Below this modulus a denominator counts as a zero of `f` (or `f'`).
pub const ZERO_EPS: f64 = 1e-14;

/// Polar sample grid `z = r e^{iθ}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscGrid {
    radii: Vec<f64>,
    angles: usize,
}

impl DiscGrid {
    pub const MAX_RADIUS: f64 = 0.999;
    pub const MIN_ANGLES: usize = 8;

    pub fn new(radii: Vec<f64>, angles: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidParameter("grid needs at least one radius".into()));
        }
        if !radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("grid radii must be strictly increasing".into()));
        }
        if !(radii[0] > 0.0 && radii[radii.len() - 1] <= Self::MAX_RADIUS) {
            return Err(Error::InvalidParameter(format!("grid radii must lie in (0, {}]", Self::MAX_RADIUS)));
        }
        if angles < Self::MIN_ANGLES {
            return Err(Error::InvalidParameter(format!("need at least {} angles", Self::MIN_ANGLES)));
        }
        Ok(Self { radii, angles })
    }

    /// `n_radii` equally spaced radii `r_max k / n_radii`, `k = 1..=n_radii`.
    pub fn uniform(r_max: f64, n_radii: usize, angles: usize) -> Result<Self> {
        let radii = (1..=n_radii)
            .map(|k| if k == n_radii { r_max } else { r_max * k as f64 / n_radii as f64 })
            .collect();
        Self::new(radii, angles)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn r_max(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.angles as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscMarginReport {
    pub class: GeometricClass,
    pub min_margin: f64,
    /// `(r, θ)` of the minimum.
    pub argmin: (f64, f64),
    /// `Σ_{n>N} bound(n) r_max^n`, when a coefficient bound was supplied.
    pub truncation_error_bound: Option<f64>,
    pub points_evaluated: usize,
    /// Sample points skipped because a denominator vanished.
    pub zeros_encountered: Vec<(f64, f64)>,
}

impl DiscMarginReport {
    pub fn falsified(&self, tolerance: f64) -> bool {
        self.min_margin < -tolerance
    }

    pub fn with_truncation_bound(mut self, bound: f64) -> Self {
        self.truncation_error_bound = Some(bound);
        self
    }
}

/// `(f(z), f'(z), f''(z))` of the truncated polynomial by Horner's scheme.
pub fn series_eval012(f: &TaylorSeries, z: Complex64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut d1, mut d2) = (zero, zero, zero);
    // coefficients of z^N .. z^1, then the constant term 0
    for a in f.coefficients().iter().rev().chain(std::iter::once(&zero)) {
        d2 = d2 * z + d1;
        d1 = d1 * z + p;
        p = p * z + a;
    }
    (p, d1, 2.0 * d2)
}

/// `Σ_{n>N} bound(n) r^n`, summed until the terms stop mattering.
pub fn truncation_error_bound(bound: impl Fn(usize) -> f64, truncation: usize, r: f64) -> f64 {
    let mut acc = 0.0;
    let mut rn = r.powi(truncation as i32);
    for n in truncation + 1.. {
        rn *= r;
        let term = bound(n) * rn;
        acc += term;
        if term <= 1e-17 * acc || rn < 1e-300 || n > truncation + 10_000_000 {
            break;
        }
    }
    acc
}

/// `Σ_{n>N} t_{n-1}(|a|) bound(n) r^n`: truncation error at radius `r` of
/// `I_{a,b,c}` applied to any series whose coefficients obey `profile`.
pub fn operator_truncation_bound(p: &Params, profile: &CoefficientProfile, truncation: usize, r: f64) -> f64 {
    let mut acc = 0.0;
    let mut rn = r.powi(truncation as i32);
    for (k, t) in RealTerms::new(p.abs_a(), p.b, p.c).enumerate().skip(truncation) {
        let n = k + 1;
        rn *= r;
        let term = t.abs() * profile.bound(n) * rn;
        acc += term;
        let settled = n > truncation + 64 && term <= 1e-17 * acc;
        if settled || rn < 1e-300 || n > truncation + 10_000_000 {
            break;
        }
    }
    acc
}

/// Margin of the class inequality at one point; `None` at a zero of the denominator.
pub fn point_margin(class: GeometricClass, f: &TaylorSeries, z: Complex64, cp: &ClassParams) -> Option<f64> {
    let (f0, f1, f2) = series_eval012(f, z);
    let one = Complex64::new(1.0, 0.0);
    let m = match class {
        GeometricClass::StarlikeLambda | GeometricClass::Sp => {
            if f0.norm() < ZERO_EPS {
                return None;
            }
            let q = z * f1 / f0;
            if class == GeometricClass::StarlikeLambda {
                cp.lambda - (q - one).norm()
            } else {
                q.re - (q - one).norm()
            }
        }
        GeometricClass::ConvexLambda | GeometricClass::Ucv => {
            if f1.norm() < ZERO_EPS {
                return None;
            }
            let q = z * f2 / f1;
            if class == GeometricClass::ConvexLambda {
                cp.lambda - q.norm()
            } else {
                (one + q).re - q.norm()
            }
        }
    };
    m.is_finite().then_some(m)
}

#[derive(Debug, Clone)]
struct RingResult {
    best: Option<(f64, f64, f64)>,
    evaluated: usize,
    zeros: Vec<(f64, f64)>,
}

fn order(a: &(f64, f64, f64), b: &(f64, f64, f64)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2))
}

/// Minimum of the class margin over the grid.
///
/// Rings are evaluated in parallel; ties are broken by the smallest `(r, θ)`,
/// so the result does not depend on scheduling.
pub fn class_margin(
    class: GeometricClass,
    f: &TaylorSeries,
    grid: &DiscGrid,
    cp: &ClassParams,
) -> Result<DiscMarginReport> {
    let rings: Vec<RingResult> = grid
        .radii()
        .par_iter()
        .map(|&r| {
            let mut ring = RingResult { best: None, evaluated: 0, zeros: Vec::new() };
            for j in 0..grid.angles() {
                let theta = grid.theta(j);
                let z = Complex64::from_polar(r, theta);
                match point_margin(class, f, z, cp) {
                    Some(m) => {
                        ring.evaluated += 1;
                        let cand = (m, r, theta);
                        if ring.best.is_none_or(|b| order(&cand, &b) == Ordering::Less) {
                            ring.best = Some(cand);
                        }
                    }
                    None => ring.zeros.push((r, theta)),
                }
            }
            ring
        })
        .collect();

    let best =
        rings.iter().filter_map(|r| r.best).min_by(order).ok_or_else(|| {
            Error::InvalidParameter("every sample point hit a zero of the denominator".into())
        })?;
    Ok(DiscMarginReport {
        class,
        min_margin: best.0,
        argmin: (best.1, best.2),
        truncation_error_bound: None,
        points_evaluated: rings.iter().map(|r| r.evaluated).sum(),
        zeros_encountered: rings.into_iter().flat_map(|r| r.zeros).collect(),
    })
}

/// `φ(z) = 1 + (2/π²) (log((1+√z)/(1-√z)))²`, principal branches.
pub fn parabola_map(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let s = z.sqrt();
    let l = ((one + s) / (one - s)).ln();
    one + l * l * (2.0 / (PI * PI))
}
