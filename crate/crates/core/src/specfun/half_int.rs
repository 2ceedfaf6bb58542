//! Exact half-integer arithmetic for angular-momentum quantum numbers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A half-integer stored exactly as twice its value.
///
/// `j`, `m`, `s` are carried as `HalfInt` so that admissibility conditions
/// (`j - m_plus` integer, `N/2 - j` integer, ...) are decided exactly, never
/// through floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    /// Build from twice the value, so `from_twice(3)` is 3/2.
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if this is an integer.
    pub const fn as_integer(self) -> Option<i32> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub const fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Whether `self - other` is a nonnegative integer.
    pub fn integer_above(self, other: HalfInt) -> bool {
        let d = self.twice - other.twice;
        d >= 0 && d % 2 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl From<i32> for HalfInt {
    fn from(n: i32) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Parses `"2"`, `"-1"`, `"1/2"`, `"-3/2"`. Anything else (in particular
/// decimal floats) is rejected so quantum numbers stay exact.
impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(format!("half-integer denominator must be 2, got {s:?}"));
            }
            let n: i32 = num
                .trim()
                .parse()
                .map_err(|_| format!("invalid half-integer numerator in {s:?}"))?;
            Ok(HalfInt::from_twice(n))
        } else {
            let n: i32 = s
                .parse()
                .map_err(|_| format!("invalid quantum number {s:?} (use n or n/2)"))?;
            Ok(HalfInt::from_int(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfInt::from_twice(3); // 3/2
        let b = HalfInt::from_twice(-1); // -1/2
        assert_eq!(a + b, HalfInt::from_int(1));
        assert_eq!(a - b, HalfInt::from_twice(4));
        assert_eq!(-a, HalfInt::from_twice(-3));
        assert!(!a.is_integer());
        assert!((a + b).is_integer());
        assert_eq!((a + b).as_integer(), Some(1));
        assert_eq!(a.as_integer(), None);
    }

    #[test]
    fn order_matches_real_value() {
        let xs = [-3, -1, 0, 1, 2, 5].map(HalfInt::from_twice);
        for w in xs.windows(2) {
            assert!(w[0] < w[1]);
            assert!(w[0].to_f64() < w[1].to_f64());
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "2", "-1", "1/2", "-3/2", "7/2"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert!("0.5".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn integer_above() {
        let j = HalfInt::from_twice(5); // 5/2
        assert!(j.integer_above(HalfInt::from_twice(1)));
        assert!(!j.integer_above(HalfInt::from_int(1)));
        assert!(!HalfInt::from_int(1).integer_above(HalfInt::from_int(2)));
    }
}
