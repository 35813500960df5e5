//! Scalar traits for the exact algorithms.
//!
//! Elimination runs over any [`IntegerScalar`]; machine integers are tried
//! first with checked arithmetic and the computation is repeated over
//! [`crate::Int`] when an intermediate value overflows.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, Signed, ToPrimitive};

pub trait IntegerScalar:
    Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Clone
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
}

impl<T> IntegerScalar for T where
    T: Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// Ordered field used for barycentric coordinates.
pub trait RationalScalar: Num + Signed + Ord + Clone + Debug + Display + FromPrimitive + Send + Sync {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).unwrap() / Self::from_i64(den).unwrap()
    }
}

impl<T> RationalScalar for T where T: Num + Signed + Ord + Clone + Debug + Display + FromPrimitive + Send + Sync {}

/// Writes a rational as `"num/den"` with an explicit denominator.
pub fn rational_to_string(q: &crate::Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_str(s: &str) -> crate::Result<crate::Rational> {
    use num_bigint::BigInt;
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| crate::Error::Json(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d == BigInt::from(0) {
                return Err(crate::Error::Json(format!("zero denominator in {s:?}")));
            }
            Ok(crate::Rational::new(parse(n)?, d))
        }
        None => Ok(crate::Rational::from_integer(parse(s)?)),
    }
}
