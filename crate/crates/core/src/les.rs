//! Cohomology of a rank-two bundle `E` from a filtration `0 -> S -> E -> Q -> 0`
//! of line bundles.
//!
//! The long exact sequence
//!
//! ```text
//! 0 -> H0(S) -> H0(E) -> H0(Q) -d0-> H1(S) -> H1(E) -> H1(Q) -d1-> H2(S) -> H2(E) -> H2(Q) -> 0
//! ```
//!
//! gives `h0 = s0 + q0 - r0`, `h1 = s1 + q1 - r0 - r1`, `h2 = s2 + q2 - r1`
//! where `r_i = rank d_i` ranges over `[0, min(q_i, s_{i+1})]`. The ranks are
//! kept as free parameters: a value is exact only when both ranges collapse.

use std::fmt;

use num_bigint::BigInt;

use crate::cohomology::{cohomology, CohomologyDims};
use crate::interval::Interval;
use crate::surface::{DivisorClass, HirzebruchSurface};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesInstance {
    pub sub: DivisorClass,
    pub quot: DivisorClass,
    pub surface: HirzebruchSurface,
}

impl LesInstance {
    /// `T_{F_e} ⊗ L` via `0 -> T_{F_e/P^1} -> T_{F_e} -> p^*T_{P^1} -> 0`,
    /// with `T_{F_e/P^1} = 2C0 + ef` and `p^*T_{P^1} = 2f`.
    pub fn tangent(twist: &DivisorClass, surface: &HirzebruchSurface) -> Self {
        let relative = DivisorClass::new(2, surface.e().clone());
        let horizontal = DivisorClass::new(0, 2);
        LesInstance { sub: twist + &relative, quot: twist + &horizontal, surface: surface.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResultKind {
    Exact,
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    pub sub: CohomologyDims,
    pub quot: CohomologyDims,
    /// Possible ranks of `H0(Q) -> H1(S)`.
    pub delta0: Interval,
    /// Possible ranks of `H1(Q) -> H2(S)`.
    pub delta1: Interval,
}

impl DimResult {
    pub fn kind(&self) -> ResultKind {
        if self.delta0.is_point() && self.delta1.is_point() {
            ResultKind::Exact
        } else {
            ResultKind::Interval
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind() == ResultKind::Exact
    }

    /// The triple for a particular choice of connecting ranks, if admissible.
    pub fn at(&self, r0: &BigInt, r1: &BigInt) -> Option<CohomologyDims> {
        if !self.delta0.contains(r0) || !self.delta1.contains(r1) {
            return None;
        }
        Some(CohomologyDims {
            h0: &self.sub.h0 + &self.quot.h0 - r0,
            h1: &self.sub.h1 + &self.quot.h1 - r0 - r1,
            h2: &self.sub.h2 + &self.quot.h2 - r1,
        })
    }

    pub fn exact(&self) -> Option<CohomologyDims> {
        if self.is_exact() {
            self.at(self.delta0.lo(), self.delta1.lo())
        } else {
            None
        }
    }

    pub fn h0(&self) -> Interval {
        let top = &self.sub.h0 + &self.quot.h0;
        Interval::new(&top - self.delta0.hi(), &top - self.delta0.lo())
    }

    pub fn h1(&self) -> Interval {
        let top = &self.sub.h1 + &self.quot.h1;
        let r = &self.delta0 + &self.delta1;
        Interval::new(&top - r.hi(), &top - r.lo())
    }

    pub fn h2(&self) -> Interval {
        let top = &self.sub.h2 + &self.quot.h2;
        Interval::new(&top - self.delta1.hi(), &top - self.delta1.lo())
    }

    pub fn h(&self) -> [Interval; 3] {
        [self.h0(), self.h1(), self.h2()]
    }

    /// `h1 - h0`, which depends only on `r1` (the `r0` terms cancel), so it is
    /// tighter than subtracting the two component intervals.
    pub fn h1_minus_h0(&self) -> Interval {
        let top = &self.sub.h1 + &self.quot.h1 - &self.sub.h0 - &self.quot.h0;
        Interval::new(&top - self.delta1.hi(), &top - self.delta1.lo())
    }

    /// `χ(S) + χ(Q)`, shared by every admissible triple.
    pub fn euler(&self) -> BigInt {
        self.sub.euler() + self.quot.euler()
    }
}

impl fmt::Display for DimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [h0, h1, h2] = self.h();
        let tag = if self.is_exact() { "exact" } else { "interval" };
        write!(f, "({h0}, {h1}, {h2}) {tag}")
    }
}

pub fn les_solve(inst: &LesInstance) -> DimResult {
    let sub = cohomology(&inst.sub, &inst.surface);
    let quot = cohomology(&inst.quot, &inst.surface);
    let delta0 = Interval::new(0, quot.h0.clone().min(sub.h1.clone()));
    let delta1 = Interval::new(0, quot.h1.clone().min(sub.h2.clone()));
    DimResult { sub, quot, delta0, delta1 }
}

/// `h^i(T_{F_e} ⊗ L)`.
pub fn tangent_cohomology(twist: &DivisorClass, surface: &HirzebruchSurface) -> DimResult {
    les_solve(&LesInstance::tangent(twist, surface))
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
    fn tangent_instance_shape() {
        let inst = LesInstance::tangent(&d(-3, -5), &s(0));
        assert_eq!(inst.sub, d(-1, -5));
        assert_eq!(inst.quot, d(-3, -3));
    }

    #[test]
    fn twisted_tangent_example() {
        let r = tangent_cohomology(&d(-3, -5), &s(0));
        assert!(r.is_exact());
        assert_eq!(r.exact().unwrap(), CohomologyDims::new(0, 0, 4));
    }

    #[test]
    fn untwisted_tangent_of_quadric() {
        let r = tangent_cohomology(&DivisorClass::zero(), &s(0));
        assert!(r.is_exact());
        assert_eq!(r.exact().unwrap(), CohomologyDims::new(6, 0, 0));
    }

    #[test]
    fn tangent_of_f1_and_f2() {
        // h0(T) = dim Aut(F_e) = e + 5 for e >= 1, and h1(T) = e - 1.
        for e in 1..6 {
            let r = tangent_cohomology(&DivisorClass::zero(), &s(e));
            let [h0, h1, h2] = r.h();
            assert_eq!(h2, Interval::zero());
            // the connecting map H0(Q) -> H1(S) is not forced by dimensions alone
            assert!(h0.contains(&BigInt::from(e + 5)), "e={e}: {h0}");
            assert!(h1.contains(&BigInt::from(e - 1)), "e={e}: {h1}");
        }
    }

    #[test]
    fn vanishing_quotient_collapses() {
        // Q = L + 2f with a(Q) = -1 has no cohomology at all.
        let inst = LesInstance { sub: d(1, 3), quot: d(-1, 7), surface: s(2) };
        let r = les_solve(&inst);
        assert!(r.is_exact());
        assert_eq!(r.exact().unwrap(), cohomology(&inst.sub, &inst.surface));
    }

    #[test]
    fn interval_result_is_consistent() {
        let inst = LesInstance { sub: d(0, -3), quot: d(0, 3), surface: s(0) };
        let r = les_solve(&inst);
        assert_eq!(r.kind(), ResultKind::Interval);
        assert_eq!(r.delta0, Interval::new(0, 2));
        for r0 in 0..=2 {
            let t = r.at(&BigInt::from(r0), &BigInt::from(0)).unwrap();
            assert_eq!(t.euler(), r.euler());
        }
        assert!(r.at(&BigInt::from(3), &BigInt::from(0)).is_none());
    }
}
