//! Exact coefficient types.
//!
//! Every computation in this crate is exact. The [`Coefficient`] trait
//! collects the ring operations the algebra layers need, on top of the
//! `num-traits` vocabulary, plus unit detection so elimination code can
//! decide which entries are invertible.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// An exact commutative coefficient ring (a prime field, ℚ or ℤ).
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Short name used in theory selectors and reports (`f2`, `q`, `z`, ...).
    const NAME: &'static str;

    /// Characteristic of the ring (0 for ℚ and ℤ).
    const CHARACTERISTIC: u64;

    /// Whether every nonzero element is invertible.
    const IS_FIELD: bool;

    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse, if the element is a unit.
    fn inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }
}

/// The prime field 𝔽_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: i64) -> Self {
        Fp(value.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Coefficient for Fp<P> {
    const NAME: &'static str = match P {
        2 => "f2",
        3 => "f3",
        5 => "f5",
        7 => "f7",
        _ => "fp",
    };
    const CHARACTERISTIC: u64 = P;
    const IS_FIELD: bool = true;

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2)
        let mut base = self.0;
        let mut exp = P - 2;
        let mut acc = 1 % P;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        Some(Fp(acc))
    }
}

impl Coefficient for Rational64 {
    const NAME: &'static str = "q";
    const CHARACTERISTIC: u64 = 0;
    const IS_FIELD: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coefficient for i64 {
    const NAME: &'static str = "z";
    const CHARACTERISTIC: u64 = 0;
    const IS_FIELD: bool = false;

    fn from_i64(n: i64) -> Self {
        n
    }

    fn inverse(&self) -> Option<Self> {
        match *self {
            1 => Some(1),
            -1 => Some(-1),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F2 = Fp<2>;
    type F5 = Fp<5>;

    #[test]
    fn f2_arithmetic() {
        let one = F2::one();
        assert!((one + one).is_zero());
        assert_eq!(-one, one);
        assert_eq!(one.inverse(), Some(one));
        assert_eq!(F2::zero().inverse(), None);
    }

    #[test]
    fn integer_units() {
        assert!(1i64.is_unit());
        assert!((-1i64).is_unit());
        assert!(!2i64.is_unit());
    }

    proptest! {
        #[test]
        fn f5_inverse_is_inverse(a in 1i64..5) {
            let x = F5::new(a);
            prop_assert_eq!(x * x.inverse().unwrap(), F5::one());
        }

        #[test]
        fn fp_new_reduces(a in -100i64..100) {
            prop_assert_eq!(F5::new(a).value() as i64, a.rem_euclid(5));
        }
    }
}
