//! Lopsided approximation of amoebas.
//!
//! The crate computes cyclic resultants `cres(f; 2^k)` of Laurent polynomials
//! with exact Gaussian-rational coefficients using a divide-and-conquer sign
//! flipping scheme, and builds on them:
//!
//! * [`lopsided`]: lopsidedness certificates and order recovery,
//! * [`grid`]: grid membership approximations of the amoeba,
//! * [`semialg`]: semi-algebraic descriptions of the unlog amoeba and their rasters,
//! * [`bench`]: timing of the quick resultant against a Sylvester-matrix baseline.
//!
//! ```
//! use amoeba::poly::parse;
//! use amoeba::cycres::quick_cyclic_resultant;
//!
//! let f = parse("z1 + 1", 1).unwrap();
//! let g = quick_cyclic_resultant(&f, 1).unwrap();
//! assert_eq!(g.to_string(), "-z1^2+1");
//! ```

pub mod bench;
pub mod cli;
pub mod cycres;
pub mod grid;
pub mod lopsided;
pub mod poly;
pub mod semialg;

pub use cycres::{iterated_resultant_baseline, poisson_numeric_oracle, quick_cyclic_resultant};
pub use lopsided::{choose_level, is_lopsided, Certificate, LogPoint};
pub use poly::{GaussianRational, LaurentPoly};
