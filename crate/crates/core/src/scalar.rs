//! Coefficient fields.
//!
//! Every linear-algebra routine in the crate is written against [`Field`].
//! The default instantiation is [`crate::Rational`] (arbitrary precision,
//! exact); `Ratio<i64>` is exact until it overflows, and `f64` works for
//! quick experiments but gives no exactness guarantee.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// A commutative field usable as a coefficient domain.
pub trait Field:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in field")
    }
}

impl<T> Field for T where
    T: Clone + PartialEq + Debug + Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}
