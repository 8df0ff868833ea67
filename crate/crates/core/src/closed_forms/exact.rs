//! Exact rational evaluation of terminating weighted sums (`α = -m`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Weight;

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite parameter")
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact terms `t_0..=t_m` of `3F2(-m, b, c; b+1, c+1; 1)`, with `b` and `c`
/// taken at their exact binary values.
pub(crate) fn terminating_terms(m: u64, b: f64, c: f64) -> Vec<BigRational> {
    let alpha = -int(m);
    let (b, c) = (rational(b), rational(c));
    let one = BigRational::one();
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut t = BigRational::one();
    out.push(t.clone());
    for n in 0..m {
        let k = int(n);
        let num = (&alpha + &k) * (&b + &k) * (&c + &k);
        let den = (&b + &one + &k) * (&c + &one + &k) * (&k + &one);
        t = t * num / den;
        out.push(t.clone());
    }
    out
}

fn weight(w: Weight, n: u64) -> BigRational {
    let m = int(n + 1);
    match w {
        Weight::W0 => BigRational::one(),
        Weight::W1 => m,
        Weight::W2 => &m * &m,
        Weight::W3 => &m * &m * &m,
        Weight::WInv => m.recip(),
    }
}

pub(crate) fn terminating_weighted_sum_exact(w: Weight, m: u64, b: f64, c: f64) -> BigRational {
    terminating_terms(m, b, c)
        .into_iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (n, t)| acc + weight(w, n as u64) * t)
}

pub(crate) fn terminating_weighted_sum(w: Weight, m: u64, b: f64, c: f64) -> f64 {
    let s = terminating_weighted_sum_exact(w, m, b, c);
    s.to_f64().unwrap_or(f64::NAN)
}
