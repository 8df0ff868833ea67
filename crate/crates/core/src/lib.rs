//! Clausen's hypergeometric function `z·3F2(a, b, c; b+1, c+1; z)` as a source
//! of geometric-function-theory criteria.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: real Gamma, Pochhammer symbols and the hypergeometric term
//!   recurrence every other module consumes.
//! * [`summation`]: compensated partial sums, tail bounds, Richardson
//!   extrapolation and the doubling-N growth test.
//! * [`closed_forms`]: the `z = 1` value and the weighted sums with weights
//!   `1, n+1, (n+1)², (n+1)³, 1/(n+1)`, plus their brute-force oracle.
//! * [`operator`]: Taylor series, Hadamard products, the operator
//!   `I_{a,b,c}` and coefficient profiles of the source classes.
//! * [`criteria`]: the twelve sufficient-condition criteria and the four
//!   coefficient-sum class tests.
//! * [`disc`]: empirical falsification of class membership on a grid of the
//!   unit disc.

pub mod closed_forms;
pub mod criteria;
pub mod disc;
mod error;
pub mod numerics;
pub mod operator;
pub mod summation;

pub use closed_forms::{
    convergence_exponent, miller_paris_value, weighted_sum_closed, weighted_sum_oracle, AlphaMode,
    OracleResult, Variant, Weight, WeightedSumSpec,
};
pub use criteria::{
    coefficient_sum_test, criterion, CoefficientSumTest, CriterionReport, GeometricClass, SourceClass,
    TheoremId, Verdict,
};
pub use disc::{
    class_margin, operator_truncation_bound, parabola_map, series_eval012, DiscGrid, DiscMarginReport,
};
pub use error::{Error, Result};
pub use numerics::{gamma, pochhammer, term_sequence, ClassParams, Params};
pub use operator::{
    hadamard_product, operator_coefficients, weighted_coefficient_sum, CoefficientProfile, CoefficientSum,
    TaylorSeries, WeightPoly,
};

pub use num_complex::Complex64;
