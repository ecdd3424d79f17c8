//! Exact half-integer arithmetic.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A number of the form `n/2`, stored as its doubled value.
///
/// Regular genera of non-bipartite graphs and G-degrees in dimension two
/// are half-integers; everything else in the crate is an integer, so the
/// representation is exact for every quantity we report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInteger { twice: 2 * value }
    }

    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub const fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn scale(self, factor: i64) -> Self {
        HalfInteger {
            twice: self.twice * factor,
        }
    }
}

impl From<i64> for HalfInteger {
    fn from(value: i64) -> Self {
        HalfInteger::from_int(value)
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice + rhs.twice)
    }
}

impl AddAssign for HalfInteger {
    fn add_assign(&mut self, rhs: Self) {
        self.twice += rhs.twice;
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        HalfInteger::from_twice(-self.twice)
    }
}

impl Sum for HalfInteger {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(HalfInteger::ZERO, Add::add)
    }
}

impl fmt::Display for HalfInteger {
    /// Prints `n` or `n/2`, never a decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid half-integer literal {0:?}")]
pub struct ParseHalfIntegerError(String);

impl FromStr for HalfInteger {
    type Err = ParseHalfIntegerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntegerError(s.to_owned());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInteger::from_int).map_err(|_| err()),
            Some((num, "2")) => {
                let twice: i64 = num.trim().parse().map_err(|_| err())?;
                Ok(HalfInteger::from_twice(twice))
            }
            Some((num, "1")) => num.trim().parse::<i64>().map(HalfInteger::from_int).map_err(|_| err()),
            Some(_) => Err(err()),
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInteger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_exact() {
        assert_eq!(HalfInteger::from_int(3).to_string(), "3");
        assert_eq!(HalfInteger::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInteger::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInteger::from_twice(-4).to_string(), "-2");
    }

    #[test]
    fn parse_round_trip() {
        for twice in -9..=9 {
            let h = HalfInteger::from_twice(twice);
            assert_eq!(h.to_string().parse::<HalfInteger>().unwrap(), h);
        }
        assert!("1.5".parse::<HalfInteger>().is_err());
        assert!("3/4".parse::<HalfInteger>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = HalfInteger::from_twice(1);
        let b = HalfInteger::from_twice(3);
        assert_eq!(a + b, HalfInteger::from_int(2));
        assert_eq!(b - a, HalfInteger::from_int(1));
        assert_eq!(a.scale(4), HalfInteger::from_int(2));
        assert_eq!([a, a, a].into_iter().sum::<HalfInteger>(), b);
        assert!(!a.is_integer());
        assert_eq!(b.to_integer(), None);
        assert_eq!(HalfInteger::from_int(5).to_integer(), Some(5));
    }
}
