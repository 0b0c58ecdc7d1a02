//! Exact sparse Laurent polynomials over the Gaussian rationals.

mod error;
mod exponent;
mod gaussian;
mod laurent;
mod logmag;
mod newton;
mod parse;

pub use error::PolyError;
pub use exponent::Exponent;
pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use logmag::{log_abs, log_ratio, log_sqrt, LogMagnitude};
pub use newton::{newton, newton_of_points, HalfSpace, NewtonData};
pub use parse::{max_variable_index, parse};

pub(crate) use gaussian::fmt_rational;
pub(crate) use newton::bounding_box_widths;

impl std::str::FromStr for LaurentPoly {
    type Err = PolyError;

    /// Parses with `nvars` inferred from the largest variable index (at least 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s, max_variable_index(s).max(1))
    }
}
