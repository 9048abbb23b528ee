//! Sign-explicit text form for exact rationals: `+1`, `-1`, `+3/2`, `0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serializer;

pub fn format_signed(x: &BigRational) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { '-' } else { '+' };
    let abs = x.abs();
    if abs.is_integer() {
        format!("{sign}{}", abs.numer())
    } else {
        format!("{sign}{}/{}", abs.numer(), abs.denom())
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_signed(x))
}
