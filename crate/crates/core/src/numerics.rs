//! Gamma, Pochhammer and hypergeometric term kernels.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance to a non-positive integer below which Gamma reports a pole.
pub const POLE_EPS: f64 = 1e-12;
/// Separation below which `b` and `c` (or `b` and `1`) count as equal.
pub const DEGENERATE_EPS: f64 = 1e-9;

/// The parameter triple of `3F2(a, b, c; b+1, c+1; z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub a: Complex64,
    pub b: f64,
    pub c: f64,
}

impl Params {
    pub fn new(a: Complex64, b: f64, c: f64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite()) || a == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter(format!("a must be finite and non-zero, got {a}")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidParameter(format!("b must be positive, got {b}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
        }
        Ok(Self { a, b, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), b, c)
    }

    pub fn abs_a(&self) -> f64 {
        self.a.norm()
    }

    /// The same triple with `a` replaced by `|a|`.
    pub fn with_modulus(&self) -> Self {
        Self { a: Complex64::new(self.abs_a(), 0.0), ..*self }
    }

    /// `|b - c| < 1e-9`: every closed form divides by `c - b`.
    pub fn is_degenerate(&self) -> bool {
        (self.b - self.c).abs() < DEGENERATE_EPS
    }
}

/// Class parameters: `λ ∈ (0, 1]` for `S*_λ` and `C_λ`, `β ∈ [0, 1)` for `R(β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    pub lambda: f64,
    pub beta: f64,
}

impl ClassParams {
    pub fn new(lambda: f64, beta: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::InvalidParameter(format!("lambda must lie in (0, 1], got {lambda}")));
        }
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta must lie in [0, 1), got {beta}")));
        }
        Ok(Self { lambda, beta })
    }
}

impl Default for ClassParams {
    fn default() -> Self {
        Self { lambda: 1.0, beta: 0.0 }
    }
}

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(πx)` with the argument reduced exactly, so zeros at integers stay sharp.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

fn is_near_nonpositive_integer(x: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() < POLE_EPS
}

/// Real Gamma function.
///
/// Lanczos approximation for `x ≥ 0.5`, Euler reflection below.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidParameter("gamma of NaN".into()));
    }
    if is_near_nonpositive_integer(x) {
        return Err(Error::PoleArgument(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut sum = LANCZOS_P[0];
    for (i, p) in LANCZOS_P.iter().enumerate().skip(1) {
        sum += p / (x + i as f64);
    }
    let w = x + LANCZOS_G + 0.5;
    // w^(x+1/2) e^-w, split in halves to postpone overflow
    let half = w.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-w).exp()) * sum
}

/// Rising factorial `(a)_n = a(a+1)⋯(a+n-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// Terms `t_0..=t_n` of `3F2(α, b, c; b+1, c+1; 1)` by the ratio recurrence,
/// with `α = |a|` when `use_abs_a` is set and `α = a` otherwise.
pub fn term_sequence(p: &Params, use_abs_a: bool, n: usize) -> Vec<Complex64> {
    let alpha = if use_abs_a { Complex64::new(p.abs_a(), 0.0) } else { p.a };
    let mut out = Vec::with_capacity(n + 1);
    let mut t = Complex64::new(1.0, 0.0);
    out.push(t);
    for k in 0..n {
        t *= term_ratio_complex(alpha, p.b, p.c, k);
        out.push(t);
    }
    out
}

#[inline]
fn term_ratio_complex(alpha: Complex64, b: f64, c: f64, k: usize) -> Complex64 {
    let k = k as f64;
    (alpha + k) * ((b + k) * (c + k) / ((b + 1.0 + k) * (c + 1.0 + k) * (1.0 + k)))
}

/// `t_{k+1} / t_k` for real `α`.
#[inline]
pub(crate) fn term_ratio(alpha: f64, b: f64, c: f64, k: usize) -> f64 {
    let k = k as f64;
    (alpha + k) * (b + k) * (c + k) / ((b + 1.0 + k) * (c + 1.0 + k) * (1.0 + k))
}

/// Endless iterator over `t_0, t_1, …` for a real numerator parameter `α`.
#[derive(Debug, Clone)]
pub struct RealTerms {
    alpha: f64,
    b: f64,
    c: f64,
    k: usize,
    t: f64,
}

impl RealTerms {
    pub fn new(alpha: f64, b: f64, c: f64) -> Self {
        Self { alpha, b, c, k: 0, t: 1.0 }
    }
}

impl Iterator for RealTerms {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.t;
        self.t *= term_ratio(self.alpha, self.b, self.c, self.k);
        self.k += 1;
        Some(out)
    }
}

/// `Some(m)` when `α` lies within `1e-12` of the non-positive integer `-m`.
pub fn terminating_degree(alpha: f64) -> Option<u64> {
    if is_near_nonpositive_integer(alpha) {
        Some((-alpha.round()) as u64)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_examples() {
        assert!(rel(gamma(1.0).unwrap(), 1.0) < 1e-15);
        assert!(rel(gamma(6.0).unwrap(), 120.0) < 1e-14);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_rejects_poles() {
        for x in [0.0, -1.0, -7.0, -3.0 + 1e-13] {
            assert!(matches!(gamma(x), Err(Error::PoleArgument(_))), "{x}");
        }
        assert!(gamma(-3.0 + 1e-6).is_ok());
    }

    #[test]
    fn gamma_recurrence_grid() {
        let mut x: f64 = -9.5;
        while x <= 9.5 {
            let near_pole = (x - x.round()).abs() < 1e-3 && x.round() <= 0.0
                || ((x + 1.0) - (x + 1.0).round()).abs() < 1e-3 && (x + 1.0).round() <= 0.0;
            if !near_pole {
                let g1 = gamma(x + 1.0).unwrap();
                let g0 = gamma(x).unwrap();
                assert!(((g1 - x * g0) / g1).abs() < 1e-12, "x = {x}");
            }
            x += 0.0625;
        }
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for n in -12..12 {
            assert_eq!(sin_pi(n as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-9.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_examples() {
        let z = Complex64::new(0.3, -2.0);
        assert_eq!(pochhammer(z, 0), Complex64::new(1.0, 0.0));
        assert_eq!(pochhammer(Complex64::new(1.0, 0.0), 5), Complex64::new(120.0, 0.0));
        assert_eq!(pochhammer(Complex64::new(-2.0, 0.0), 4), Complex64::new(0.0, 0.0));
        let i3 = pochhammer(Complex64::new(0.0, 1.0), 3);
        assert!((i3.norm() - 10f64.sqrt()).abs() < 1e-14);
        assert!(i3.norm() <= pochhammer(Complex64::new(1.0, 0.0), 3).re);
    }

    #[test]
    fn term_sequence_examples() {
        let p = Params::real(-1.0, 2.0, 3.0).unwrap();
        let t = term_sequence(&p, false, 6);
        assert_eq!(t[0], Complex64::new(1.0, 0.0));
        assert_eq!(t[1].re, -0.5);
        assert!(t[2..].iter().all(|v| *v == Complex64::new(0.0, 0.0)));

        let p = Params::real(0.5, 1.0, 2.0).unwrap();
        let t = term_sequence(&p, false, 1);
        assert!((t[1].re - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn real_terms_match_complex_sequence() {
        let p = Params::real(-1.7, 0.4, 3.2).unwrap();
        let c = term_sequence(&p, false, 40);
        for (k, r) in RealTerms::new(-1.7, 0.4, 3.2).take(41).enumerate() {
            assert!((c[k].re - r).abs() <= 1e-15 * r.abs(), "k = {k}");
        }
    }

    #[test]
    fn terminating_detection() {
        assert_eq!(terminating_degree(-2.0), Some(2));
        assert_eq!(terminating_degree(0.0), Some(0));
        assert_eq!(terminating_degree(-1.0 + 1e-13), Some(1));
        assert_eq!(terminating_degree(-1.5), None);
        assert_eq!(terminating_degree(1.0), None);
    }

    #[test]
    fn params_validation() {
        assert!(Params::real(0.0, 1.0, 2.0).is_err());
        assert!(Params::real(0.5, -1.0, 2.0).is_err());
        assert!(Params::real(0.5, 1.0, 0.0).is_err());
        assert!(ClassParams::new(0.0, 0.0).is_err());
        assert!(ClassParams::new(1.0, 1.0).is_err());
        assert!(ClassParams::new(1.0, 0.99).is_ok());
        assert!(Params::real(0.5, 2.0, 2.0 + 1e-10).unwrap().is_degenerate());
    }
}
