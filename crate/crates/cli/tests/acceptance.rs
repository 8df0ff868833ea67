//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stderr so it shows up even when test output is captured.
//!
//! Oracles here are independent of the library routes they check: exact
//! rational sums, high-precision reference values, and Richardson
//! extrapolation of truncated coefficient sums.

use std::io::Write;
use std::time::{Duration, Instant};

use clausen_cli::output::render;
use clausen_cli::{run_scan, run_verify_lemma, Format, RangeSpec, ScanSpec, VerifyEntry, VerifyPlan};
use clausen_core::criteria::{extremal_series, premise_growth, GeometricClass};
use clausen_core::{
    class_margin, coefficient_sum_test, criterion, miller_paris_value, weighted_sum_closed,
    weighted_sum_oracle, AlphaMode, ClassParams, Complex64, DiscGrid, Params, TaylorSeries, TheoremId,
    Verdict, Weight, WeightedSumSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let line = format!("{} [{id}] {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

// ---------------------------------------------------------------------------
// 1. terminating-series exactness

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `Σ_{n≤m} w(n) (-m)_n/n! · bc/((n+b)(n+c))` in exact arithmetic.
fn exact_weighted_sum(w: Weight, m: i64, b: &BigRational, c: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut poch = BigRational::one();
    for n in 0..=m {
        let nn = rat(n, 1);
        let t = &poch * b * c / ((&nn + b) * (&nn + c));
        let k = rat(n + 1, 1);
        let weight = match w {
            Weight::W0 => BigRational::one(),
            Weight::W1 => k.clone(),
            Weight::W2 => &k * &k,
            Weight::W3 => &k * &k * &k,
            Weight::WInv => k.recip(),
        };
        sum += weight * t;
        poch = poch * rat(n - m, 1) / rat(n + 1, 1);
    }
    sum
}

#[test]
fn c1_terminating_series_exactness() {
    let start = Instant::now();
    let pairs = [((2, 1), (3, 1)), ((3, 2), (5, 2)), ((1, 2), (4, 1))];
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut failures = Vec::new();
    for m in 1..=3i64 {
        for &((bp, bq), (cp, cq)) in &pairs {
            let (b, c) = (rat(bp, bq), rat(cp, cq));
            let p = Params::real(-m as f64, bp as f64 / bq as f64, cp as f64 / cq as f64).unwrap();
            for w in Weight::ALL {
                let oracle = exact_weighted_sum(w, m, &b, &c).to_f64().unwrap();
                let closed = weighted_sum_closed(&WeightedSumSpec::derived(w), &p, AlphaMode::Raw, false);
                let lib_oracle =
                    weighted_sum_oracle(&WeightedSumSpec::derived(w), &p, AlphaMode::Raw, 1e-15, 10).unwrap();
                cases += 1;
                match closed {
                    Ok(v) => {
                        let rel = if oracle == 0.0 { v.abs() } else { ((v - oracle) / oracle).abs() };
                        worst = worst.max(rel);
                        if rel > 1e-12 || !lib_oracle.exact || lib_oracle.value != oracle {
                            failures.push(format!(
                                "{} a=-{m} b={} c={}: {v} vs {oracle}",
                                w.label(),
                                p.b,
                                p.c
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{} a=-{m}: {e}", w.label())),
                }
            }
        }
    }

    let params = Params::real(-2.0, 2.0, 3.0).unwrap();
    let plan = VerifyPlan::new(
        vec![VerifyEntry { spec: WeightedSumSpec::printed(Weight::W3), params }],
        AlphaMode::Raw,
    );
    let printed = run_verify_lemma(&plan).unwrap();
    let row = &printed.rows[0];
    let printed_ok =
        (row.closed.unwrap() - 0.9).abs() < 1e-12 && row.oracle == Some(1.1) && printed.flagged == vec![0];
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && printed_ok && elapsed < Duration::from_secs(1);
    report(
        1,
        "terminating-series exactness",
        pass,
        &format!(
            "{cases} cases, max rel err {worst:.1e} (tol 1e-12); W3 printed closed {:.15} vs oracle {:?}, flagged {}; {}",
            row.closed.unwrap(),
            row.oracle.unwrap(),
            printed_ok,
            ms(elapsed)
        ),
    );
    assert!(pass, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 2. nonterminating identity audit

/// Reference sums computed to 30 digits by convergence-accelerated summation.
#[allow(clippy::excessive_precision)]
const REFERENCE_SUMS: [(Weight, f64, f64, f64, f64); 10] = [
    (Weight::W0, 1.85, 2.5, 3.25, 45.61725430226370894),
    (Weight::W0, -1.5, 0.75, 4.0, 0.56427922844925058924),
    (Weight::W1, 0.85, 1.5, 2.0, 16.409749068829255041),
    (Weight::W1, -0.4, 0.3, 0.6, 0.90978836274712848342),
    (Weight::W2, -0.15, 2.0, 3.0, -3.7363378111608647889),
    (Weight::W2, -1.75, 0.5, 1.25, 0.22031701644092058613),
    (Weight::W3, -1.15, 2.0, 5.0, 5.2594377063502933483),
    (Weight::W3, -2.5, 0.25, 3.5, 0.37395156927135721905),
    (Weight::WInv, 1.85, 2.5, 3.25, 2.9116315463466345965),
    (Weight::WInv, 0.5, 2.0, 3.0, 1.2),
];

fn alpha_domain(w: Weight) -> (f64, f64) {
    match w {
        Weight::W0 | Weight::WInv => (-2.0, 1.9),
        Weight::W1 => (-2.0, 0.9),
        Weight::W2 => (-2.0, -0.1),
        Weight::W3 => (-3.0, -1.1),
    }
}

fn sample_point(rng: &mut ChaCha8Rng, w: Weight) -> Params {
    let (lo, hi) = alpha_domain(w);
    loop {
        let alpha = rng.gen_range(lo..hi);
        let floor = (alpha - 1.0).max(0.0) + 0.05;
        let b = rng.gen_range(floor..5.0);
        let c = rng.gen_range(floor..5.0);
        let near_one = |x: f64| (x - 1.0).abs() < 0.05;
        if near_one(alpha) || (b - c).abs() < 0.05 || alpha.abs() < 1e-3 {
            continue;
        }
        if w == Weight::WInv && (near_one(b) || near_one(c)) {
            continue;
        }
        return Params::real(alpha, b, c).unwrap();
    }
}

#[test]
fn c2_nonterminating_identity_audit() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut max_terms = 0;
    for w in Weight::ALL {
        let spec = WeightedSumSpec::derived(w);
        for _ in 0..100 {
            let p = sample_point(&mut rng, w);
            let closed = match weighted_sum_closed(&spec, &p, AlphaMode::Raw, false) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{} a={} b={} c={}: {e}", w.label(), p.a.re, p.b, p.c));
                    continue;
                }
            };
            let tol = (1e-9 * closed.abs()).max(1e-12);
            match weighted_sum_oracle(&spec, &p, AlphaMode::Raw, tol, 100_000) {
                Ok(o) => {
                    max_terms = max_terms.max(o.terms_used);
                    let rel = ((closed - o.value) / o.value).abs();
                    worst = worst.max(rel);
                    if rel > 1e-7 {
                        failures.push(format!(
                            "{} a={} b={} c={}: {closed} vs {}",
                            w.label(),
                            p.a.re,
                            p.b,
                            p.c,
                            o.value
                        ));
                    }
                }
                Err(e) => failures.push(format!("{} a={} b={} c={}: {e}", w.label(), p.a.re, p.b, p.c)),
            }
        }
    }
    let mut ref_worst: f64 = 0.0;
    for (w, a, b, c, v) in REFERENCE_SUMS {
        let p = Params::real(a, b, c).unwrap();
        let spec = WeightedSumSpec::derived(w);
        let o = weighted_sum_oracle(&spec, &p, AlphaMode::Raw, 1e-9 * v.abs(), 100_000).unwrap();
        let x = weighted_sum_closed(&spec, &p, AlphaMode::Raw, false).unwrap();
        ref_worst = ref_worst.max(((o.value - v) / v).abs()).max(((x - v) / v).abs());
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && ref_worst <= 1e-7 && elapsed < Duration::from_secs(60);
    report(
        2,
        "nonterminating identity audit",
        pass,
        &format!(
            "500 samples, max rel err {worst:.1e} (tol 1e-7), oracle N <= {max_terms}; reference sums max rel err {ref_worst:.1e}; {}",
            ms(elapsed)
        ),
    );
    assert!(pass, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 3. degenerate continuity

#[test]
fn c3_degenerate_continuity() {
    let near_zero = Params::real(1e-6, 2.0, 3.0).unwrap();
    let mp = miller_paris_value(&near_zero, AlphaMode::Raw).unwrap();
    let w1 = weighted_sum_closed(&WeightedSumSpec::derived(Weight::W1), &near_zero, AlphaMode::Raw, false)
        .unwrap();
    let below = Params::real(-1e-6, 2.0, 3.0).unwrap();
    let w2 =
        weighted_sum_closed(&WeightedSumSpec::derived(Weight::W2), &below, AlphaMode::Raw, false).unwrap();
    let pass = (mp - 1.0).abs() <= 1e-5 && (w1 - 1.0).abs() <= 1e-5 && (w2 + 5.0).abs() <= 1e-4;
    report(
        3,
        "degenerate continuity",
        pass,
        &format!("3F2 at a=1e-6: {mp:.9}; W1 at a=1e-6: {w1:.9}; W2 at a=-1e-6: {w2:.9} (1 - bc = -5)"),
    );
    assert!(pass);
}

// ---------------------------------------------------------------------------
// 4. criterion-oracle consistency

/// `Σ_{n=2}^N w(n)|a_n|` of the extremal series, Richardson-extrapolated in
/// `N` with remainder exponents `σ+1, σ, σ-1`.
fn extrapolated_coefficient_sum(id: TheoremId, p: &Params, cp: &ClassParams, sigma: f64, n: usize) -> f64 {
    let f = extremal_series(id, p, cp, n);
    let levels = 4;
    let mut row: Vec<f64> = (0..levels)
        .map(|k| coefficient_sum_test(id.target(), &f, cp, n >> (levels - 1 - k)).statistic)
        .collect();
    for k in 0..levels - 1 {
        let r = 2f64.powf(sigma + 1.0 - k as f64);
        row = row.windows(2).map(|w| (w[1] - r * w[0]) / (1.0 - r)).collect();
    }
    row[0]
}

fn random_criterion_point(rng: &mut ChaCha8Rng, id: TheoremId, max_abs: f64) -> (Params, ClassParams) {
    loop {
        let modulus = rng.gen_range(0.05..max_abs);
        if (modulus - 1.0).abs() < 0.05 {
            continue;
        }
        let phase = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let floor = (modulus - 1.0).max(0.0) + 0.05;
        let b = rng.gen_range(floor..5.0);
        let c = rng.gen_range(floor..5.0);
        if (b - c).abs() < 0.05
            || (id.uses_inverse_weight() && ((b - 1.0).abs() < 0.05 || (c - 1.0).abs() < 0.05))
        {
            continue;
        }
        let cp = ClassParams::new(rng.gen_range(0.05..1.0), rng.gen_range(0.0..0.9)).unwrap();
        return (Params::new(Complex64::from_polar(modulus, phase), b, c).unwrap(), cp);
    }
}

#[test]
fn c4_criterion_oracle_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let groups = [
        (TheoremId::ST1, 0.9),
        (TheoremId::SP1, 0.9),
        (TheoremId::UC2, 0.9),
        (TheoremId::CV2, 0.9),
        (TheoremId::ST2, 1.9),
        (TheoremId::SP2, 1.9),
    ];
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (id, max_abs) in groups {
        for _ in 0..25 {
            let (p, cp) = random_criterion_point(&mut rng, id, max_abs);
            let r = match criterion(id, &p, &cp) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{id}: {e}"));
                    continue;
                }
            };
            let t = r.premise_statistic.unwrap();
            let oracle = extrapolated_coefficient_sum(id, &p, &cp, r.premise_exponent, 100_000);
            let err = (t - oracle).abs() / t.abs().max(1.0);
            worst = worst.max(err);
            if err > 1e-6 || !r.premise_convergent {
                failures.push(format!("{id} |a|={} b={} c={} {cp:?}: {t} vs {oracle}", p.abs_a(), p.b, p.c));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        4,
        "criterion-oracle consistency",
        pass,
        &format!(
            "150 points over ST1 SP1 UC2 CV2 ST2 SP2, max err {worst:.1e} (tol 1e-6), {}",
            ms(start.elapsed())
        ),
    );
    assert!(pass, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 5. divergence classification

#[test]
fn c5_divergence_classification() {
    let ids =
        [TheoremId::ST3, TheoremId::CV1, TheoremId::CV3, TheoremId::UC1, TheoremId::UC3, TheoremId::SP3];
    let cp = ClassParams::new(0.5, 0.3).unwrap();
    let mut failures = Vec::new();
    let mut min_growth = f64::INFINITY;
    for id in ids {
        for modulus in [0.1, 0.5, 1.0, 1.5] {
            let p = Params::real(modulus, 2.0, 3.0).unwrap();
            let verdict = criterion(id, &p, &cp).map(|r| r.verdict);
            let g = premise_growth(id, &p, &cp, 1024, 4);
            min_growth = min_growth.min(g.exponent_estimate);
            if verdict != Ok(Verdict::DivergentPremise) || !g.unbounded {
                failures.push(format!("{id} |a|={modulus}: {verdict:?}, growth {:?}", g.exponent_estimate));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        5,
        "divergence classification",
        pass,
        &format!("24 points all DivergentPremise with growing partial sums, smallest growth exponent {min_growth:.3}"),
    );
    assert!(pass, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 6. no false certificate

#[test]
fn c6_no_false_certificate() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let grid = DiscGrid::uniform(0.99, 100, 720).unwrap();
    let mut certified = 0;
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for _ in 0..200 {
        let modulus = rng.gen_range(0.05..0.95);
        let phase = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let b = rng.gen_range(0.1..5.0);
        let c = rng.gen_range(0.1..5.0);
        let lambda = rng.gen_range(0.05..1.0);
        let Ok(p) = Params::new(Complex64::from_polar(modulus, phase), b, c) else { continue };
        let cp = ClassParams::new(lambda, 0.0).unwrap();
        for id in [TheoremId::ST1, TheoremId::SP1] {
            let holds = matches!(criterion(id, &p, &cp), Ok(r) if r.verdict == Verdict::Holds);
            if !holds {
                continue;
            }
            certified += 1;
            let f = extremal_series(id, &p, &cp, 200);
            let m = class_margin(id.target(), &f, &grid, &cp).unwrap();
            worst = worst.min(m.min_margin);
            if m.min_margin < -1e-6 {
                failures.push(format!("{id} |a|={modulus} b={b} c={c} λ={lambda}: margin {}", m.min_margin));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && certified > 0 && elapsed < Duration::from_secs(120);
    report(
        6,
        "no false certificate",
        pass,
        &format!(
            "{certified} certified (point, theorem) pairs, smallest margin {worst:.3e} (floor -1e-6); {}",
            ms(elapsed)
        ),
    );
    assert!(pass, "{failures:?}");
}

// ---------------------------------------------------------------------------
// 7. coefficient-sum examples and identity margins

#[test]
fn c7_coefficient_sum_examples() {
    let mut checks = Vec::new();
    let z = TaylorSeries::identity();
    for class in GeometricClass::ALL {
        let t = coefficient_sum_test(class, &z, &ClassParams::new(0.6, 0.0).unwrap(), 100);
        checks.push(("f = z statistic 0", t.statistic == 0.0 && t.holds));
    }
    let cp = ClassParams::new(1.0, 0.0).unwrap();
    let f = TaylorSeries::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]).unwrap();
    let t = coefficient_sum_test(GeometricClass::StarlikeLambda, &f, &cp, 2);
    checks.push(("single-term equality", t.statistic == 1.0 && t.holds));
    let koebe = TaylorSeries::from_real_fn(10_000, |n| n as f64);
    let sums: Vec<f64> = [10, 100, 1000, 10_000]
        .iter()
        .map(|&n| coefficient_sum_test(GeometricClass::StarlikeLambda, &koebe, &cp, n).statistic)
        .collect();
    let fails = !coefficient_sum_test(GeometricClass::StarlikeLambda, &koebe, &cp, 10).holds;
    checks.push(("Koebe sums grow and fail", sums.windows(2).all(|w| w[1] > 10.0 * w[0]) && fails));

    let grid = DiscGrid::uniform(0.99, 20, 64).unwrap();
    for lambda in [0.25, 0.7, 1.0] {
        let cp = ClassParams::new(lambda, 0.0).unwrap();
        let s = class_margin(GeometricClass::StarlikeLambda, &z, &grid, &cp).unwrap().min_margin;
        let u = class_margin(GeometricClass::Ucv, &z, &grid, &cp).unwrap().min_margin;
        checks.push(("f = z margins", (s - lambda).abs() <= 1e-14 && (u - 1.0).abs() <= 1e-14));
    }
    let pass = checks.iter().all(|c| c.1);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    report(7, "coefficient-sum examples", pass, &format!("{} checks, failed: {failed:?}", checks.len()));
    assert!(pass);
}

// ---------------------------------------------------------------------------
// 8. determinism

#[test]
fn c8_scan_is_byte_reproducible() {
    let spec = ScanSpec {
        a_re: "0.1:1.9:5".parse().unwrap(),
        a_im: RangeSpec::single(0.0),
        b: "0.5:4:5".parse().unwrap(),
        c: "0.5:4:5".parse().unwrap(),
        lambda: RangeSpec::single(0.8),
        beta: RangeSpec::single(0.25),
        theorems: TheoremId::ALL.to_vec(),
    };
    let first = render(&run_scan(&spec).unwrap(), Format::Csv).unwrap();
    let second = render(&run_scan(&spec).unwrap(), Format::Csv).unwrap();
    let rows = first.iter().filter(|&&b| b == b'\n').count() - 1;
    let pass = first == second && rows == 125 * 12;
    report(
        8,
        "determinism",
        pass,
        &format!(
            "5x5x5 grid x 12 theorems = {rows} rows, {} bytes, identical: {}",
            first.len(),
            first == second
        ),
    );
    assert!(pass);
}
