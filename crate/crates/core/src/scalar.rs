//! Scalar abstraction for the graded-ring computations.
//!
//! The closed-form relations and the realizability layer work over
//! [`BigRational`] only. The graded ring and its series manipulations only need
//! field operations plus a way to embed rational constants, so they are written
//! against [`Scalar`] and can run in `f64`/`f32` for quick numerical work.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> {
    /// Embeds an exact rational constant.
    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeds_rationals() {
        let r = BigRational::new(BigInt::from(-3), BigInt::from(8));
        assert_eq!(f64::from_rational(&r), -0.375);
        assert_eq!(f32::from_rational(&r), -0.375f32);
        assert_eq!(BigRational::from_rational(&r), r);
        assert_eq!(f64::from_int(7), 7.0);
    }
}
