//! Validity-gated facts about `h^0(N_{Y/P^M}(twist))` for `Y = F_e` embedded by
//! `H = aC0 + bf` (followed by a linear embedding into `P^M`, `M = 1 + H^2`).
//!
//! Connecting maps of the normal-bundle sequences are never computed. The only
//! exact or bounded values the engine knows are the ones listed in a
//! [`RuleTable`], each with its own validity predicate and citation. Lookup
//! returns the first matching rule; nothing is inferred outside a predicate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::anchors;
use crate::cohomology::h1;
use crate::conditions::{Bound, Clause, Condition, IntRange, Linear};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::les::tangent_cohomology;
use crate::surface::{DivisorClass, HirzebruchSurface};

/// Which twist of the normal bundle, as a multiple `k` of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalTwist {
    /// `N(-kH)`
    MinusH,
    /// `N(-kH + K)`
    MinusHPlusK,
}

impl NormalTwist {
    pub fn divisor(&self, h: &DivisorClass, k: &BigInt, s: &HirzebruchSurface) -> DivisorClass {
        let base = -h.scale(k);
        match self {
            NormalTwist::MinusH => base,
            NormalTwist::MinusHPlusK => &base + &s.canonical(),
        }
    }
}

impl fmt::Display for NormalTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalTwist::MinusH => write!(f, "-kH"),
            NormalTwist::MinusHPlusK => write!(f, "-kH+K"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    /// `h0 = M + offset`.
    ExactAmbient { offset: i64 },
    /// `h0 <= M + offset`.
    AtMostAmbient { offset: i64 },
    /// `h0 <= h1(T_Y ⊗ twist)`.
    AtMostTangentH1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalTwistRule {
    pub id: &'static str,
    pub twist: NormalTwist,
    pub k: IntRange,
    pub validity: Condition,
    /// Additionally require `h^1(O(-kH + K)) = 0`, checked by computation.
    pub requires_k_twist_vanishing: bool,
    pub outcome: RuleOutcome,
    pub anchor: &'static str,
}

impl NormalTwistRule {
    fn applies(&self, h: &DivisorClass, s: &HirzebruchSurface, twist: NormalTwist, k: &BigInt) -> bool {
        if self.twist != twist || !self.k.contains(k) || !self.validity.holds(&h.a, &h.b, s.e()) {
            return false;
        }
        if self.requires_k_twist_vanishing {
            let d = NormalTwist::MinusHPlusK.divisor(h, k, s);
            if !h1(&d, s).is_zero() {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalTwistValue {
    /// Possible values of `h^0`; a point when the rule is exact.
    pub value: Interval,
    pub exact: bool,
    pub rule_id: &'static str,
    pub anchor: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    rules: Vec<NormalTwistRule>,
}

impl RuleTable {
    pub fn new(rules: Vec<NormalTwistRule>) -> Self {
        RuleTable { rules }
    }

    pub fn standard() -> Self {
        RuleTable::new(vec![
            NormalTwistRule {
                id: "k-twist-tangent-bound",
                twist: NormalTwist::MinusHPlusK,
                k: IntRange::at_least(1),
                validity: Condition::always(),
                requires_k_twist_vanishing: true,
                outcome: RuleOutcome::AtMostTangentH1,
                anchor: anchors::K_TWIST_BOUND,
            },
            NormalTwistRule {
                id: "a2-exact-normal",
                twist: NormalTwist::MinusH,
                k: IntRange::eq(1),
                validity: Condition::new(vec![Clause::new(IntRange::eq(2), vec![Bound::AtLeast(Linear::new(0, 1, 3))])]),
                requires_k_twist_vanishing: false,
                outcome: RuleOutcome::ExactAmbient { offset: 1 },
                anchor: anchors::GAMMA_EXACT_NORMAL,
            },
            NormalTwistRule {
                id: "a2-quadric-point",
                twist: NormalTwist::MinusH,
                k: IntRange::eq(1),
                validity: Condition::new(vec![Clause::new(
                    IntRange::eq(2),
                    vec![Bound::AtLeast(Linear::constant(2)), Bound::AtMost(Linear::constant(2))],
                )
                .with_e(IntRange::eq(0))]),
                requires_k_twist_vanishing: false,
                outcome: RuleOutcome::AtMostAmbient { offset: 2 },
                anchor: anchors::GAMMA_SPECIAL_POINT,
            },
        ])
    }

    pub fn rules(&self) -> &[NormalTwistRule] {
        &self.rules
    }

    pub fn rules_mut(&mut self) -> &mut Vec<NormalTwistRule> {
        &mut self.rules
    }

    pub fn rule(&self, id: &str) -> Option<&NormalTwistRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn rule_mut(&mut self, id: &str) -> Option<&mut NormalTwistRule> {
        self.rules.iter_mut().find(|r| r.id == id)
    }

    /// `h^0(N_{Y/P^M}(-kH))` or `h^0(N_{Y/P^M}(-kH+K))` from the first rule
    /// whose predicate holds.
    pub fn h0_normal_twist(&self, h: &DivisorClass, s: &HirzebruchSurface, twist: NormalTwist, k: &BigInt) -> Result<NormalTwistValue> {
        if !s.is_very_ample(h) {
            return Err(Error::NotVeryAmple { a: h.a.clone(), b: h.b.clone(), e: s.e().clone() });
        }
        if *k < BigInt::one() {
            return Err(Error::InvalidQuery(format!("twist multiple k must be >= 1, got {k}")));
        }
        let rule = self
            .rules
            .iter()
            .find(|r| r.applies(h, s, twist, k))
            .ok_or_else(|| Error::NoRuleApplies(format!("N({}) with k={k}, H={h} on {s}", twist)))?;
        let ambient = 1 + s.self_intersection(h);
        let (value, exact) = match rule.outcome {
            RuleOutcome::ExactAmbient { offset } => (Interval::point(ambient + offset), true),
            RuleOutcome::AtMostAmbient { offset } => (Interval::new(0, ambient + offset), false),
            RuleOutcome::AtMostTangentH1 => {
                let t = tangent_cohomology(&twist.divisor(h, k, s), s);
                (Interval::new(0, t.h1().hi().clone()), false)
            }
        };
        Ok(NormalTwistValue { value, exact, rule_id: rule.id, anchor: rule.anchor })
    }
}

impl Default for RuleTable {
    fn default() -> Self {
        RuleTable::standard()
    }
}

/// [`RuleTable::h0_normal_twist`] against the standard table.
pub fn h0_normal_twist(h: &DivisorClass, s: &HirzebruchSurface, twist: NormalTwist, k: &BigInt) -> Result<NormalTwistValue> {
    RuleTable::standard().h0_normal_twist(h, s, twist, k)
}
