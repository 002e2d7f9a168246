//! Exact scalar fields used for game values and linear algebra.
//!
//! Everything in this crate is generic over [`Scalar`], an exact ordered
//! field represented as a reduced fraction of integers. Floating point types
//! deliberately do not implement it: tight sets, equality pairs and ranks are
//! all decided by exact comparisons.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};

/// An exact ordered field whose elements are reduced fractions.
pub trait Scalar:
    Clone + Ord + Num + Signed + Debug + Display + FromStr + Send + Sync + 'static
{
    /// The integer ring the fractions are built from.
    type Int: Integer + Signed + Clone + Debug + Display + Send + Sync + 'static;

    fn from_i64(value: i64) -> Self;
    fn from_int(value: Self::Int) -> Self;
    fn numer_int(&self) -> &Self::Int;
    /// Always positive.
    fn denom_int(&self) -> &Self::Int;
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    type Int = I;

    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(I::from(value))
    }

    fn from_int(value: I) -> Self {
        Ratio::from_integer(value)
    }

    fn numer_int(&self) -> &I {
        self.numer()
    }

    fn denom_int(&self) -> &I {
        self.denom()
    }
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_scalar<T: Scalar>(text: &str) -> Option<T> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let value = text.parse::<T>().ok()?;
    // Ratio's FromStr rejects a zero denominator by returning an error, but
    // keep the guard for other implementors.
    if value.denom_int().is_zero() {
        return None;
    }
    Some(value)
}
