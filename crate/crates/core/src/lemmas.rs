//! Sufficient vanishing conditions for the cohomology groups that feed the
//! β and γ estimators, checked against the exact values.

use std::fmt;

use num_bigint::BigInt;

use crate::anchors;
use crate::cohomology::cohomology;
use crate::conditions::{Bound, Clause, Condition, IntRange, Linear};
use crate::interval::Interval;
use crate::les::tangent_cohomology;
use crate::surface::{DivisorClass, HirzebruchSurface};

/// The sheaf whose cohomology a lemma row talks about, as a function of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// `2C0 + ef - H`
    SectionTwist,
    /// `2f - H`
    FiberTwist,
    /// `-H + K`
    MinusHPlusK,
    /// `-H - K`
    MinusHMinusK,
    /// `-H - 2K`
    MinusHMinus2K,
    /// `T(-H)`
    TangentMinusH,
    /// `T(-H + K)`
    TangentMinusHPlusK,
}

impl Target {
    pub fn twist(&self, h: &DivisorClass, s: &HirzebruchSurface) -> DivisorClass {
        let k = s.canonical();
        match self {
            Target::SectionTwist => &DivisorClass::new(2, s.e().clone()) - h,
            Target::FiberTwist => &DivisorClass::new(0, 2) - h,
            Target::MinusHPlusK | Target::TangentMinusHPlusK => &k - h,
            Target::MinusHMinusK => -(h + &k),
            Target::MinusHMinus2K => -(h + &(2 * &k)),
            Target::TangentMinusH => -h,
        }
    }

    pub fn is_tangent(&self) -> bool {
        matches!(self, Target::TangentMinusH | Target::TangentMinusHPlusK)
    }

    /// The `i`-th cohomology dimension, as an interval for tangent twists.
    pub fn compute(&self, degree: usize, h: &DivisorClass, s: &HirzebruchSurface) -> Interval {
        let d = self.twist(h, s);
        if self.is_tangent() {
            tangent_cohomology(&d, s).h()[degree].clone()
        } else {
            Interval::point(cohomology(&d, s).get(degree).clone())
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Target::SectionTwist => "2C0+ef-H",
            Target::FiberTwist => "2f-H",
            Target::MinusHPlusK => "-H+K",
            Target::MinusHMinusK => "-H-K",
            Target::MinusHMinus2K => "-H-2K",
            Target::TangentMinusH => "T(-H)",
            Target::TangentMinusHPlusK => "T(-H+K)",
        };
        f.write_str(s)
    }
}

/// One row: `H^degree(target) = 0` whenever `premise` and `condition` hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingLemma {
    pub anchor: &'static str,
    pub target: Target,
    pub degree: usize,
    pub premise: Condition,
    pub condition: Condition,
}

impl VanishingLemma {
    pub fn group(&self) -> String {
        format!("H^{}({})", self.degree, self.target)
    }
}

fn lin(ae: i64, e: i64, c: i64) -> Linear {
    Linear::new(ae, e, c)
}

fn clause(a: IntRange, b: Vec<Bound>) -> Clause {
    Clause::new(a, b)
}

fn positive_a() -> Condition {
    Condition::new(vec![clause(IntRange::at_least(1), vec![])])
}

fn very_ample() -> Condition {
    Condition::new(vec![clause(IntRange::at_least(1), vec![Bound::AtLeast(lin(1, 0, 1))])])
}

/// All rows of the vanishing tables.
pub fn lemma_table() -> Vec<VanishingLemma> {
    use Bound::{AtLeast, AtMost};
    use IntRange as R;
    vec![
        VanishingLemma {
            anchor: anchors::LEMMA_SECTION_TWIST,
            target: Target::SectionTwist,
            degree: 1,
            premise: positive_a(),
            condition: Condition::new(vec![
                clause(R::eq(1), vec![AtMost(Linear::constant(1))]),
                clause(R::eq(2), vec![AtMost(lin(0, 1, 1))]),
                clause(R::eq(3), vec![]),
                clause(R::at_least(4), vec![AtLeast(lin(1, -2, 1))]),
            ]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_SECTION_TWIST,
            target: Target::SectionTwist,
            degree: 0,
            premise: positive_a(),
            condition: Condition::new(vec![
                clause(R::eq(1), vec![AtLeast(lin(0, 1, 1))]),
                clause(R::eq(2), vec![AtLeast(lin(0, 1, 1))]),
                clause(R::at_least(4), vec![]),
            ]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_FIBER_TWIST,
            target: Target::FiberTwist,
            degree: 1,
            premise: positive_a(),
            condition: Condition::new(vec![clause(R::eq(1), vec![]), clause(R::at_least(2), vec![AtLeast(lin(1, -1, 3))])]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_FIBER_TWIST,
            target: Target::FiberTwist,
            degree: 0,
            premise: positive_a(),
            condition: Condition::always(),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_CANONICAL_TWIST,
            target: Target::MinusHPlusK,
            degree: 1,
            premise: very_ample(),
            condition: Condition::new(vec![clause(R::any(), vec![AtLeast(lin(1, 0, 1))])]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_CANONICAL_TWIST,
            target: Target::MinusHMinusK,
            degree: 1,
            premise: very_ample(),
            condition: Condition::new(vec![
                clause(R::eq(1), vec![AtMost(Linear::constant(3))]),
                clause(R::eq(2), vec![AtMost(lin(0, 1, 3))]),
                clause(R::eq(3), vec![]),
                clause(R::at_least(4), vec![AtLeast(lin(1, -2, 3))]),
            ]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_DOUBLE_CANONICAL,
            target: Target::MinusHMinus2K,
            degree: 0,
            premise: very_ample(),
            condition: Condition::new(vec![clause(R::at_most(4), vec![AtLeast(lin(0, 2, 5))]), clause(R::at_least(5), vec![])]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_TANGENT,
            target: Target::TangentMinusH,
            degree: 1,
            premise: very_ample(),
            condition: Condition::new(vec![
                clause(R::eq(1), vec![AtMost(Linear::constant(1))]),
                clause(R::eq(2), vec![AtLeast(lin(1, -1, 3)), AtMost(lin(0, 1, 1))]),
                clause(R::eq(3), vec![AtLeast(lin(1, -1, 3))]),
                clause(R::at_least(4), vec![AtLeast(lin(1, -2, 3)), AtLeast(lin(1, -1, 3))]),
            ]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_TANGENT,
            target: Target::TangentMinusHPlusK,
            degree: 1,
            premise: very_ample(),
            condition: Condition::new(vec![
                clause(R::eq(1), vec![AtLeast(lin(0, 1, 1))]),
                clause(R::at_least(2), vec![AtLeast(lin(1, 0, 1))]),
            ]),
        },
        VanishingLemma {
            anchor: anchors::LEMMA_TANGENT,
            target: Target::TangentMinusH,
            degree: 0,
            premise: very_ample(),
            condition: Condition::new(vec![
                clause(R::eq(1), vec![AtLeast(lin(0, 1, 1))]),
                clause(R::eq(2), vec![AtLeast(lin(0, 1, 1))]),
                clause(R::at_least(3), vec![]),
            ]),
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingEntry {
    pub anchor: &'static str,
    pub group: String,
    pub condition: String,
    pub applicable: bool,
    pub condition_holds: bool,
    pub computed: Interval,
}

impl VanishingEntry {
    /// The condition held but the group was not forced to exactly zero.
    pub fn is_violation(&self) -> bool {
        self.applicable && self.condition_holds && !self.computed.is_exact_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub e: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub entries: Vec<VanishingEntry>,
}

impl VanishingReport {
    pub fn violations(&self) -> impl Iterator<Item = &VanishingEntry> {
        self.entries.iter().filter(|e| e.is_violation())
    }

    pub fn is_sound(&self) -> bool {
        self.violations().next().is_none()
    }
}

impl fmt::Display for VanishingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F_{}, H = {}", self.e, DivisorClass::new(self.a.clone(), self.b.clone()))?;
        for en in &self.entries {
            let status = match (en.applicable, en.condition_holds) {
                (false, _) => "n/a",
                (true, false) => "-",
                (true, true) if en.is_violation() => "VIOLATED",
                (true, true) => "holds",
            };
            writeln!(f, "  {:<10} {:<12} {:<9} h = {:<8} if {}", en.anchor, en.group, status, en.computed.to_string(), en.condition)?;
        }
        Ok(())
    }
}

/// Evaluate every lemma row at `H = aC0 + bf` on `s`.
pub fn h0_vanishing_lemmas(s: &HirzebruchSurface, a: impl Into<BigInt>, b: impl Into<BigInt>) -> VanishingReport {
    let (a, b) = (a.into(), b.into());
    let h = DivisorClass::new(a.clone(), b.clone());
    let entries = lemma_table()
        .into_iter()
        .map(|l| VanishingEntry {
            anchor: l.anchor,
            group: l.group(),
            condition: l.condition.to_string(),
            applicable: l.premise.holds(&a, &b, s.e()),
            condition_holds: l.condition.holds(&a, &b, s.e()),
            computed: l.target.compute(l.degree, &h, s),
        })
        .collect();
    VanishingReport { e: s.e().clone(), a, b, entries }
}

/// Whether `H^degree(target)` vanishes exactly at `(a, b)`.
pub fn vanishes(target: Target, degree: usize, s: &HirzebruchSurface, a: &BigInt, b: &BigInt) -> bool {
    let h = DivisorClass::new(a.clone(), b.clone());
    target.compute(degree, &h, s).is_exact_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: i64) -> HirzebruchSurface {
        HirzebruchSurface::new(e).unwrap()
    }

    fn entry<'r>(r: &'r VanishingReport, group: &str) -> &'r VanishingEntry {
        r.entries.iter().find(|e| e.group == group).unwrap()
    }

    #[test]
    fn spec_points() {
        let r = h0_vanishing_lemmas(&s(0), 3, 5);
        let hk = entry(&r, "H^1(-H-K)");
        assert!(hk.condition_holds && hk.computed.is_exact_zero());
        let h2k = entry(&r, "H^0(-H-2K)");
        assert!(h2k.condition_holds && h2k.computed.is_exact_zero());

        let r = h0_vanishing_lemmas(&s(0), 3, 4);
        let h2k = entry(&r, "H^0(-H-2K)");
        assert!(!h2k.condition_holds);
        assert_eq!(h2k.computed, Interval::point(2));
    }

    #[test]
    fn tangent_rows_resolve_exactly() {
        let r = h0_vanishing_lemmas(&s(0), 2, 5);
        assert!(entry(&r, "H^1(T(-H+K))").computed.is_exact_zero());
        let r = h0_vanishing_lemmas(&s(0), 2, 2);
        assert!(entry(&r, "H^0(T(-H))").computed.is_exact_zero());
    }

    #[test]
    fn sound_on_small_grid() {
        for e in 0..4 {
            for a in 1..6 {
                for b in (a * e + 1)..(a * e + 12) {
                    let r = h0_vanishing_lemmas(&s(e), a, b);
                    assert!(r.is_sound(), "{r}");
                }
            }
        }
    }

    #[test]
    fn display_flags_rows() {
        let text = h0_vanishing_lemmas(&s(1), 2, 4).to_string();
        assert!(text.contains("H^1(T(-H))"));
        assert!(!text.contains("VIOLATED"));
    }
}
