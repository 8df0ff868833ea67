//! Benchmark fixtures shared by the `kernels` bench target.

use clausen_core::{ClassParams, Params};

/// A convergent, non-terminating point used across benchmarks.
pub fn sample_params() -> Params {
    Params::real(0.45, 1.7, 3.2).expect("valid fixture")
}

pub fn sample_class() -> ClassParams {
    ClassParams::new(0.8, 0.2).expect("valid fixture")
}
