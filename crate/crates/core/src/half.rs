use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A half-integer, stored exactly as an integer numerator over the fixed
/// denominator 2. `Half::new(3)` is `3/2`, `Half::int(3)` is `3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const ONE: Half = Half(2);

    /// Builds from a numerator over denominator 2.
    pub const fn new(numerator: i64) -> Self {
        Half(numerator)
    }

    /// Builds from an ordinary integer.
    pub const fn int(n: i64) -> Self {
        Half(2 * n)
    }

    /// Numerator over the fixed denominator 2.
    pub const fn numerator(self) -> i64 {
        self.0
    }

    /// True when the value is an ordinary integer.
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if the numerator is even.
    pub const fn as_integer(self) -> Option<i64> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    /// Twice the value, always an integer.
    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn abs(self) -> Half {
        Half(self.0.abs())
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Smallest integer `m` with `m >= self`.
    pub const fn ceil(self) -> i64 {
        self.0.div_euclid(2) + (self.0.rem_euclid(2) != 0) as i64
    }

    /// Largest integer `m` with `m <= self`.
    pub const fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl AddAssign for Half {
    fn add_assign(&mut self, rhs: Half) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Half {
    fn sub_assign(&mut self, rhs: Half) {
        self.0 -= rhs.0;
    }
}

impl Mul<i64> for Half {
    type Output = Half;
    fn mul(self, rhs: i64) -> Half {
        Half(self.0 * rhs)
    }
}

impl Sum for Half {
    fn sum<I: Iterator<Item = Half>>(iter: I) -> Half {
        Half(iter.map(|h| h.0).sum())
    }
}

impl From<i64> for Half {
    fn from(n: i64) -> Half {
        Half::int(n)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::Half;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    // Wire form is the exact pair [numerator, 2].
    impl Serialize for Half {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            (self.numerator(), 2i64).serialize(serializer)
        }
    }

    impl<'de> Deserialize<'de> for Half {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            let (numerator, denominator) = <(i64, i64)>::deserialize(deserializer)?;
            if denominator != 2 {
                return Err(D::Error::custom("half-integer denominator must be 2"));
            }
            Ok(Half::new(numerator))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_arithmetic() {
        assert!(Half::new(3) > Half::int(1));
        assert_eq!(Half::int(2) + Half::new(1), Half::new(5));
        assert_eq!(Half::int(1) - Half::int(3), Half::int(-2));
        assert_eq!(-Half::new(1), Half::new(-1));
        assert_eq!(Half::new(1) * 3, Half::new(3));
    }

    #[test]
    fn floor_ceil_on_negatives() {
        assert_eq!(Half::new(-1).floor(), -1);
        assert_eq!(Half::new(-1).ceil(), 0);
        assert_eq!(Half::new(-3).ceil(), -1);
        assert_eq!(Half::int(-2).ceil(), -2);
    }
}
