//! Semi-algebraic approximations of the unlog amoeba.
//!
//! For `cres(f; 2^k) = Σ b_β x^β` and candidate orders `α`, the system is
//!
//! ```text
//! Σ_{β ≠ 2^{kn}α} |b_β| x^β  ≥  |b_{2^{kn}α}| x^{2^{kn}α}    for every candidate α
//! x_1, …, x_n ≥ 0
//! ```
//!
//! and its solution set is the unlog lopsided amoeba of the resultant
//! restricted to those orders.

mod raster;
mod system;

use thiserror::Error;

use crate::cycres::CycresError;
use crate::lopsided::LopsidedError;
use crate::poly::PolyError;

pub use raster::{overlay_svg, rasterize, Raster, RasterBox};
pub use system::{
    semialg_description, semialg_from_resultant, AbsolutePoly, Candidate, SemiAlgSystem,
};

#[derive(Debug, Error)]
pub enum SemialgError {
    #[error(transparent)]
    Cycres(#[from] CycresError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lopsided(#[from] LopsidedError),
    #[error("candidate order set is empty")]
    EmptyCandidates,
    #[error("level must be at least 1")]
    InvalidLevel,
    #[error("raster box must lie in the open positive orthant with lo < hi")]
    InvalidBox,
    #[error("raster resolution must be at least 2 and at most {cap}")]
    InvalidResolution { cap: usize },
    #[error("rasterization needs a planar system, got {0} variables")]
    NotPlanar(usize),
    #[error("candidate order has {got} entries, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}
