//! Exact scalar abstraction.
//!
//! Every density, bound and residual in the crate is an exact ratio. The
//! algorithms only need ordered field arithmetic plus a way to build a value
//! from a pair of counts, so they are written against [`ExactScalar`] and work
//! with any `num_rational::Ratio<T>` over a signed integer type. The crate
//! root fixes [`crate::Rational`] (arbitrary precision) as the default.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait ExactScalar:
    Clone + Ord + Num + Signed + Debug + Display + Send + Sync + 'static
{
    /// `numer / denom`; `denom` must be nonzero.
    fn ratio(numer: usize, denom: usize) -> Self;

    fn from_count(n: usize) -> Self {
        Self::ratio(n, 1)
    }

    fn floor_count(&self) -> Option<usize>;

    fn ceil_count(&self) -> Option<usize>;

    /// Parses `p/r` or a bare integer.
    fn parse_exact(s: &str) -> Option<Self>;

    /// Lossy conversion, for display only.
    fn approx_f64(&self) -> f64;

    fn clamp_unit(&self) -> Self {
        if self < &Self::zero() {
            Self::zero()
        } else if self > &Self::one() {
            Self::one()
        } else {
            self.clone()
        }
    }

    fn in_unit_interval(&self) -> bool {
        self >= &Self::zero() && self <= &Self::one()
    }
}

impl<T> ExactScalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Debug
        + Display
        + Send
        + Sync
        + 'static,
{
    fn ratio(numer: usize, denom: usize) -> Self {
        assert!(denom != 0, "ratio with zero denominator");
        let n = T::from_usize(numer).expect("count exceeds scalar range");
        let d = T::from_usize(denom).expect("count exceeds scalar range");
        Ratio::new(n, d)
    }

    fn floor_count(&self) -> Option<usize> {
        self.floor().to_integer().to_usize()
    }

    fn ceil_count(&self) -> Option<usize> {
        self.ceil().to_integer().to_usize()
    }

    fn parse_exact(s: &str) -> Option<Self> {
        s.trim().parse::<Ratio<T>>().ok()
    }

    fn approx_f64(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}
