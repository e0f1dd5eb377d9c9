use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer scalar used by the elimination routines.
///
/// Every arithmetic operation is checked: `None` signals overflow and makes
/// the caller restart the computation on [`BigInt`], which never overflows.
pub(crate) trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, o: &Self) -> Option<Self>;
    fn is_multiple_of(&self, o: &Self) -> bool;
    fn abs_lt(&self, o: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn is_multiple_of(&self, o: &Self) -> bool {
        match self.checked_rem(*o) {
            Some(r) => r == 0,
            None => true,
        }
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn is_multiple_of(&self, o: &Self) -> bool {
        Zero::is_zero(&(self % o))
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.abs() < o.abs()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}
