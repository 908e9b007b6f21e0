//! Elements of the additive group ℚ/ℤ, stored as reduced fractions in `[0, 1)`.
//!
//! A pair of these encodes a torsion point of the two-dimensional torus: the
//! value `p/q` stands for `exp(2πi p/q)`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Qmod1 {
    // ordering compares (den, num), so 0 sorts first and small orders before large
    den: i64,
    num: i64,
}

impl Qmod1 {
    pub const ZERO: Qmod1 = Qmod1 { den: 1, num: 0 };

    /// Builds `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den).max(1);
        num /= g;
        den /= g;
        if num == 0 {
            den = 1;
        }
        Qmod1 { den, num }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order, which is the reduced denominator.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn scale(&self, k: i64) -> Self {
        let num = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        Qmod1::new(num, self.den)
    }

    /// One choice of `x / k` (the one in `[0, 1/|k|)` shifted by sign); `k != 0`.
    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0);
        let q = Qmod1::new(self.num, self.den * k.abs());
        if k < 0 {
            -q
        } else {
            q
        }
    }
}

impl Add for Qmod1 {
    type Output = Qmod1;
    fn add(self, rhs: Qmod1) -> Qmod1 {
        let l = self.den.lcm(&rhs.den);
        let a = self.num as i128 * (l / self.den) as i128 + rhs.num as i128 * (l / rhs.den) as i128;
        Qmod1::new((a % l as i128) as i64, l)
    }
}

impl AddAssign for Qmod1 {
    fn add_assign(&mut self, rhs: Qmod1) {
        *self = *self + rhs;
    }
}

impl Neg for Qmod1 {
    type Output = Qmod1;
    fn neg(self) -> Qmod1 {
        Qmod1::new(-self.num, self.den)
    }
}

impl Sub for Qmod1 {
    type Output = Qmod1;
    fn sub(self, rhs: Qmod1) -> Qmod1 {
        self + (-rhs)
    }
}

impl fmt::Display for Qmod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Qmod1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad fraction `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Qmod1::new(n, d))
            }
            None => Ok(Qmod1::new(s.parse().map_err(|_| bad())?, 1)),
        }
    }
}

impl Serialize for Qmod1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Qmod1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_wraps() {
        assert_eq!(Qmod1::new(4, 6), Qmod1::new(2, 3));
        assert_eq!(Qmod1::new(-1, 3), Qmod1::new(2, 3));
        assert_eq!(Qmod1::new(3, 3), Qmod1::ZERO);
        assert_eq!(Qmod1::new(1, -2), Qmod1::new(1, 2));
        assert_eq!(Qmod1::ZERO.den(), 1);
    }

    #[test]
    fn parse_and_display() {
        let q: Qmod1 = "2/6".parse().unwrap();
        assert_eq!(q.to_string(), "1/3");
        assert_eq!("0".parse::<Qmod1>().unwrap(), Qmod1::ZERO);
        assert_eq!("-1/4".parse::<Qmod1>().unwrap(), Qmod1::new(3, 4));
        assert!("1/0".parse::<Qmod1>().is_err());
        assert!("x".parse::<Qmod1>().is_err());
    }

    #[test]
    fn division_is_a_preimage() {
        let q = Qmod1::new(1, 3);
        for k in [-4, -1, 1, 2, 5] {
            assert_eq!(q.div_int(k).scale(k), q);
        }
    }

    proptest! {
        #[test]
        fn group_laws(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let x = Qmod1::new(a, b);
            let y = Qmod1::new(c, d);
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x + (-x), Qmod1::ZERO);
            prop_assert_eq!((x - y) + y, x);
            prop_assert_eq!(x.scale(x.order()), Qmod1::ZERO);
        }
    }
}
