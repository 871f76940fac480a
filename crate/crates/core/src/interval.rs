use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

/// Closed integer interval `[lo, hi]`. A point interval is an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
}

impl Interval {
    pub fn new(lo: impl Into<BigInt>, hi: impl Into<BigInt>) -> Self {
        let (lo, hi) = (lo.into(), hi.into());
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        Interval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Interval::point(0)
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// The value if the interval is a single point.
    pub fn exact(&self) -> Option<&BigInt> {
        self.is_point().then_some(&self.lo)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Intersection with `[floor, +inf)`; an interval entirely below `floor`
    /// collapses to the point `floor`.
    pub fn clamp_below(&self, floor: &BigInt) -> Self {
        Interval { lo: self.lo.clone().max(floor.clone()), hi: self.hi.clone().max(floor.clone()) }
    }
}

impl From<BigInt> for Interval {
    fn from(v: BigInt) -> Self {
        Interval::point(v)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        &self + &rhs
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        self + &(-rhs)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        &self - &rhs
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_interval_arithmetic() {
        let x = Interval::new(1, 3);
        let y = Interval::new(-2, 5);
        assert_eq!(&x + &y, Interval::new(-1, 8));
        assert_eq!(&x - &y, Interval::new(-4, 5));
        assert_eq!(-&x, Interval::new(-3, -1));
    }

    #[test]
    fn clamp_and_display() {
        assert_eq!(Interval::new(-3, 2).clamp_below(&BigInt::zero()), Interval::new(0, 2));
        assert_eq!(Interval::new(-3, -1).clamp_below(&BigInt::zero()), Interval::zero());
        assert_eq!(Interval::point(4).to_string(), "4");
        assert_eq!(Interval::new(0, 4).to_string(), "[0, 4]");
    }

    #[test]
    #[should_panic]
    fn empty_interval_is_rejected() {
        let _ = Interval::new(2, 1);
    }
}
