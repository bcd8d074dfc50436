use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An exact element of ℚ/ℤ, stored as a reduced fraction `num / den` with
/// `0 <= num < den`.
///
/// Character values are exponents of roots of unity: `χ(g) = exp(2πi·v)`
/// for the value `v` returned here. No floating point is involved anywhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QZValue {
    num: u32,
    den: u32,
}

impl QZValue {
    pub const ZERO: QZValue = QZValue { num: 0, den: 1 };

    /// Reduces `num / den` modulo 1. Panics on a zero denominator.
    pub fn new(num: i64, den: u32) -> Self {
        assert!(den > 0, "zero denominator");
        let d = den as i64;
        let r = num.rem_euclid(d);
        let g = r.gcd(&d);
        QZValue {
            num: (r / g) as u32,
            den: (d / g) as u32,
        }
    }

    pub fn numerator(self) -> u32 {
        self.num
    }

    pub fn denominator(self) -> u32 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// The unique `k` in `[0, n)` with `self = k/n`, if the denominator divides `n`.
    pub fn exponent_over(self, n: u32) -> Option<u32> {
        if n == 0 || n % self.den != 0 {
            return None;
        }
        Some(self.num * (n / self.den))
    }

    /// Multiplication by an integer, still mod 1.
    pub fn times(self, k: i64) -> Self {
        QZValue::new(self.num as i64 * k, self.den)
    }
}

impl Default for QZValue {
    fn default() -> Self {
        QZValue::ZERO
    }
}

impl Add for QZValue {
    type Output = QZValue;
    fn add(self, rhs: QZValue) -> QZValue {
        let l = self.den.lcm(&rhs.den);
        let a = self.num as i64 * (l / self.den) as i64;
        let b = rhs.num as i64 * (l / rhs.den) as i64;
        QZValue::new(a + b, l)
    }
}

impl Neg for QZValue {
    type Output = QZValue;
    fn neg(self) -> QZValue {
        QZValue::new(-(self.num as i64), self.den)
    }
}

impl Sub for QZValue {
    type Output = QZValue;
    fn sub(self, rhs: QZValue) -> QZValue {
        self + (-rhs)
    }
}

impl Ord for QZValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.num as u64 * other.den as u64;
        let b = other.num as u64 * self.den as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for QZValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for QZValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_mod_one() {
        assert_eq!(QZValue::new(3, 2), QZValue::new(1, 2));
        assert_eq!(QZValue::new(-1, 4), QZValue::new(3, 4));
        assert_eq!(QZValue::new(4, 8).denominator(), 2);
        assert!(QZValue::new(6, 3).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = QZValue::new(1, 2);
        let b = QZValue::new(3, 4);
        assert_eq!(a + b, QZValue::new(1, 4));
        assert_eq!(a - b, QZValue::new(3, 4));
        assert_eq!(-b, QZValue::new(1, 4));
        assert_eq!(b.times(2), a);
    }

    #[test]
    fn exponent_over() {
        assert_eq!(QZValue::new(1, 2).exponent_over(4), Some(2));
        assert_eq!(QZValue::new(1, 4).exponent_over(2), None);
        assert_eq!(QZValue::ZERO.exponent_over(7), Some(0));
    }
}
