//! Exact ordered-field scalars used by the LP engine and the geometric frontends.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field element.
///
/// Fractionality, tightness and rank are decided by exact comparison, so only
/// exact types qualify. `Ratio<BigInt>` is the default; fixed-width ratios such
/// as `Ratio<i64>` also satisfy the trait but may overflow on large instances.
pub trait Scalar: Clone + Ord + Num + Signed + Debug + Display + Send + Sync + 'static {
    fn from_i64(value: i64) -> Self;

    /// True when the value has denominator one.
    fn is_integral(&self) -> bool;

    /// Smallest integer not below `self`, clamped to `0..=u64::MAX`.
    fn ceil_u64(&self) -> u64;

    /// Always `p/q`, even for integers.
    fn to_fraction_string(&self) -> String;

    /// Nearest `f64`, for floating-point guidance only.
    fn to_f64(&self) -> f64;
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + Send + Sync + From<i64> + 'static,
    I: TryInto<u64>,
    Ratio<I>: ToPrimitive,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(I::from(value))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn ceil_u64(&self) -> u64 {
        let c = self.ceil().to_integer();
        if c.is_negative() {
            0
        } else {
            c.try_into().unwrap_or(u64::MAX)
        }
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Big = Ratio<BigInt>;

    #[test]
    fn integrality_is_exact() {
        assert!(Big::from_i64(3).is_integral());
        assert!(!Big::new(1.into(), 3.into()).is_integral());
        assert!(Big::new(6.into(), 3.into()).is_integral());
    }

    #[test]
    fn ceiling() {
        assert_eq!(Big::new(7.into(), 2.into()).ceil_u64(), 4);
        assert_eq!(Big::from_i64(4).ceil_u64(), 4);
        assert_eq!(Big::from_i64(-3).ceil_u64(), 0);
        assert_eq!(Ratio::<i64>::new(1, 4).ceil_u64(), 1);
    }
}
