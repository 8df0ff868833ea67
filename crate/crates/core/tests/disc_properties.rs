use clausen_core::criteria::GeometricClass;
use clausen_core::disc::point_margin;
use clausen_core::{parabola_map, ClassParams, Complex64, TaylorSeries};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_series(coeffs: &[(f64, f64)]) -> TaylorSeries {
    let mut v = vec![Complex64::new(1.0, 0.0)];
    v.extend(coeffs.iter().map(|&(re, im)| Complex64::new(re, im)));
    TaylorSeries::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convex_margin_is_starlike_margin_of_z_derivative(
        coeffs in prop::collection::vec((-0.1f64..0.1, -0.1f64..0.1), 1..12),
        r in 0.0f64..0.95, theta in 0.0f64..std::f64::consts::TAU, lambda in 0.05f64..1.0,
    ) {
        let f = small_series(&coeffs);
        let g = f.z_derivative();
        let z = Complex64::from_polar(r, theta);
        let cp = ClassParams::new(lambda, 0.0).unwrap();
        let m1 = point_margin(GeometricClass::ConvexLambda, &f, z, &cp);
        let m2 = point_margin(GeometricClass::StarlikeLambda, &g, z, &cp);
        match (m1, m2) {
            (Some(x), Some(y)) => prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{} vs {}", x, y),
            (None, None) => {}
            other => prop_assert!(false, "zero detected on one side only: {:?}", other),
        }
    }
}

#[test]
fn parabola_map_lands_in_omega() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let r = 0.99 * rng.gen::<f64>().sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let w = parabola_map(Complex64::from_polar(r, theta));
        let margin = w.re - (w - 1.0).norm();
        assert!(margin > 0.0, "z = {r} e^(i{theta}), φ = {w}, margin = {margin}");
    }
}
