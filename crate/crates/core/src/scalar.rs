//! Coefficient field abstraction.
//!
//! Everything in this crate is generic over the coefficient type. The
//! default instantiation is [`num_rational::BigRational`]; `f64` and
//! `Rational64` work too, but only the big rational type gives exact
//! certificates for the identities checked by the test suites.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// A field of coefficients for graph vectors and polynomials.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable in scalar type")
    }

    /// `p / q` in the field.
    fn ratio(p: i64, q: i64) -> Self {
        Self::from_int(p) / Self::from_int(q)
    }

    /// Parses a literal such as `3`, `-2/5` (or a decimal for float fields).
    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        Self::from_str_radix(s, 10)
            .ok()
            // ratio types insist on an explicit denominator
            .or_else(|| (!s.contains('/')).then(|| Self::from_str_radix(&format!("{s}/1"), 10).ok()).flatten())
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// `(-1)^k` as a scalar.
pub(crate) fn sign_pow<S: Scalar>(k: usize) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

pub(crate) fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_int(k as i64))
}
