//! The Picard lattice of a Hirzebruch surface `F_e`.
//!
//! `Pic(F_e)` is free on the section class `C0` (with `C0^2 = -e`) and the
//! fiber class `f` (with `f^2 = 0`, `C0.f = 1`). A [`DivisorClass`] is just a
//! lattice point `aC0 + bf`; the surface invariant travels separately in
//! [`HirzebruchSurface`] so one class can be evaluated on several surfaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HirzebruchSurface {
    e: BigInt,
}

impl HirzebruchSurface {
    pub fn new(e: impl Into<BigInt>) -> Result<Self> {
        let e = e.into();
        if e.is_negative() {
            return Err(Error::NegativeInvariant(e));
        }
        Ok(HirzebruchSurface { e })
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    /// The intersection pairing `(a1 C0 + b1 f).(a2 C0 + b2 f)`.
    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> BigInt {
        -(&d1.a * &d2.a * &self.e) + &d1.a * &d2.b + &d2.a * &d1.b
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> BigInt {
        self.intersect(d, d)
    }

    /// `K = -2 C0 - (e + 2) f`.
    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::new(-2, -(&self.e + BigInt::from(2)))
    }

    /// Very ample iff `a >= 1` and `b >= a e + 1`.
    pub fn is_very_ample(&self, h: &DivisorClass) -> bool {
        h.a >= BigInt::one() && h.b > &h.a * &self.e
    }
}

impl fmt::Display for HirzebruchSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.e)
    }
}

/// `a C0 + b f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub a: BigInt,
    pub b: BigInt,
}

impl DivisorClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        DivisorClass { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        DivisorClass::new(0, 0)
    }

    pub fn section() -> Self {
        DivisorClass::new(1, 0)
    }

    pub fn fiber() -> Self {
        DivisorClass::new(0, 1)
    }

    /// The effective cone of `F_e` is spanned by `C0` and `f`.
    pub fn is_effective(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        DivisorClass { a: &self.a * k, b: &self.b * k }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}C0{}f", self.a, self.b)
        } else {
            write!(f, "{}C0+{}f", self.a, self.b)
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { a: -&self.a, b: -&self.b }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(&BigInt::from(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: i64) -> HirzebruchSurface {
        HirzebruchSurface::new(e).unwrap()
    }

    fn d(a: i64, b: i64) -> DivisorClass {
        DivisorClass::new(a, b)
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(s(1).intersect(&DivisorClass::section(), &DivisorClass::section()), BigInt::from(-1));
        for e in 0..5 {
            assert_eq!(s(e).self_intersection(&DivisorClass::fiber()), BigInt::zero());
            assert_eq!(s(e).intersect(&DivisorClass::section(), &DivisorClass::fiber()), BigInt::one());
        }
        assert_eq!(s(0).self_intersection(&d(2, 6)), BigInt::from(24));
    }

    #[test]
    fn canonical_class() {
        assert_eq!(s(0).canonical(), d(-2, -2));
        assert_eq!(s(1).canonical(), d(-2, -3));
        let k = s(2).canonical();
        assert_eq!(s(2).self_intersection(&k), BigInt::from(8));
    }

    #[test]
    fn ampleness_and_effectivity() {
        assert!(s(0).is_very_ample(&d(2, 2)));
        assert!(!s(1).is_very_ample(&d(2, 2)));
        assert!(s(0).is_very_ample(&d(1, 1)));
        assert!(!s(0).is_very_ample(&d(0, 5)));
        assert!(d(0, 0).is_effective());
        assert!(!d(-1, 5).is_effective());
        assert!(d(2, 2).is_effective());
    }

    #[test]
    fn negative_invariant_rejected() {
        assert_eq!(HirzebruchSurface::new(-1), Err(Error::NegativeInvariant(BigInt::from(-1))));
    }

    #[test]
    fn display() {
        assert_eq!(d(2, -3).to_string(), "2C0-3f");
        assert_eq!(d(-1, 5).to_string(), "-1C0+5f");
        assert_eq!(s(3).to_string(), "F_3");
    }
}
