//! Exact quadratic forms over ℚ and quadratic maps into quadrics.
//!
//! The crate is layered: [`poly`], [`parse`], [`arith`], [`gcd`] and
//! [`matrix`] form the exact algebra core; [`qform`] decides isotropy and
//! computes Witt decompositions; [`curvemaps`] and [`planemaps`] build and
//! check maps from lines and planes into quadrics; [`veronese`] holds the
//! symmetric-matrix model of the Veronese surface.

pub mod arith;
pub mod curvemaps;
pub mod error;
pub mod gcd;
pub mod matrix;
pub mod parse;
pub mod planemaps;
pub mod poly;
pub mod qform;
pub mod scalar;
pub mod veronese;

pub use arith::{square_class, SquareClass};
pub use curvemaps::CurveMap;
pub use error::{Error, Result};
pub use gcd::poly_content_and_primitive;
pub use matrix::Matrix;
pub use parse::{parse_poly, poly};
pub use planemaps::{Classification, MapLabel, QuadraticMap};
pub use poly::{MPoly, Monomial};
pub use qform::{hilbert_symbol, Place, QuadraticForm, Signature, WittDecomposition};
pub use scalar::{Field, Ring};
pub use veronese::SymMatrix3;

/// Arbitrary-precision rational, the default scalar.
pub type Rat = num_rational::BigRational;
/// Polynomial with [`Rat`] coefficients.
pub type Poly = MPoly<Rat>;
/// Matrix of rationals.
pub type RatMatrix = Matrix<Rat>;
