//! Cyclic resultants `cres(f; r) = ∏ f(ζ₁z₁, …, ζₙzₙ)` over all n-tuples of
//! r-th roots of unity.
//!
//! [`quick_cyclic_resultant`] is the divide-and-conquer route for `r = 2^k`;
//! [`iterated_resultant_baseline`] nests Sylvester resultants with
//! `u^r - 1` the general-purpose way; [`poisson_numeric_oracle`] evaluates the
//! defining product numerically.

mod baseline;
mod oracle;
mod quick;

use thiserror::Error;

use crate::poly::PolyError;

pub use baseline::{
    iterated_resultant_baseline, iterated_resultant_baseline_with, BaselineOptions,
};
pub use oracle::{poisson_log_product, poisson_numeric_oracle, LogComplex};
pub use quick::{
    estimate_terms, quick_cyclic_resultant, quick_cyclic_resultant_with, quick_levels,
    QuickOptions, DEFAULT_MAX_TERMS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycresError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("cyclic resultant of the zero polynomial")]
    ZeroPolynomial,
    #[error("estimated {estimated} terms exceeds the cap of {cap}")]
    MemoryBudget { estimated: u128, cap: u128 },
    #[error("resultant order must be at least 1")]
    InvalidOrder,
    #[error("{factors} root-of-unity evaluations exceed the limit of {limit}")]
    TooManyFactors { factors: u128, limit: u128 },
    #[error("evaluation point must have nonzero coordinates")]
    ZeroCoordinate,
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("product magnitude e^{ln_abs} overflows double precision")]
    Overflow { ln_abs: f64 },
    #[error("baseline exceeded its time budget")]
    Timeout,
}
