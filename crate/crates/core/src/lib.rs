//! Limit-computable sets, their Ershov classification, and exact
//! asymptotic-density constructions on finite horizons.
//!
//! Every quantity is computed over exact rationals. The numeric code is
//! generic over [`ExactScalar`]; [`Rational`] (arbitrary precision) is the
//! default and [`Rational64`] trades range for speed.

pub mod approx;
pub mod constructions;
pub mod density;
pub mod error;
pub mod harness;
pub mod reals;
pub mod scalar;
pub mod window;

pub use approx::{classify, ApproxTable, BoundFunction, SetPrefix};
pub use error::{Error, Result};
pub use scalar::ExactScalar;
pub use window::Window;

/// Arbitrary-precision rationals, the default scalar.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals.
pub type Rational64 = num_rational::Ratio<i64>;
