//! Carpet invariants, the β/γ estimators for `α` of a K3 carpet on `F_e`, the
//! `k`-twist normal bound, and the Zak–L'vovsky gate.
//!
//! Every bound is an upper bound for `α` of the carpet, hence (by
//! semicontinuity) for the general member of the Hilbert component that
//! contains it. Verdicts are phrased for that general member.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::anchors;
use crate::cohomology::{h0, h1};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::les::tangent_cohomology;
use crate::rules::{NormalTwist, RuleTable};
use crate::surface::{DivisorClass, HirzebruchSurface};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarpetParams {
    pub a: BigInt,
    pub b: BigInt,
    pub e: BigInt,
    /// `gcd(a, b)`, the index of the smoothed K3.
    pub r: BigInt,
    pub g: BigInt,
    /// `H^2 = 2ab - a^2 e` on `F_e`.
    pub h_sq: BigInt,
    /// `Y` spans `P^N`.
    pub n: BigInt,
    /// The carpet spans `P^M`, `M = 1 + H^2`.
    pub m: BigInt,
    pub prime: bool,
    /// Primality of the general smoothing is only certified for `e <= 2`.
    pub primality_certified: bool,
}

impl CarpetParams {
    pub fn surface(&self) -> HirzebruchSurface {
        HirzebruchSurface::new(self.e.clone()).expect("validated on construction")
    }

    pub fn h(&self) -> DivisorClass {
        DivisorClass::new(self.a.clone(), self.b.clone())
    }

    /// `M - N = h^0(H + K)`.
    pub fn span_defect(&self) -> BigInt {
        let s = self.surface();
        h0(&(&self.h() + &s.canonical()), &s)
    }
}

impl fmt::Display for CarpetParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,e)=({},{},{}) (r,g)=({},{}) H^2={} N={} M={}", self.a, self.b, self.e, self.r, self.g, self.h_sq, self.n, self.m)
    }
}

pub fn carpet_params(a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<CarpetParams> {
    let (a, b) = (a.into(), b.into());
    let s = HirzebruchSurface::new(e)?;
    let h = DivisorClass::new(a.clone(), b.clone());
    if !s.is_very_ample(&h) {
        return Err(Error::NotVeryAmple { a, b, e: s.e().clone() });
    }
    let e = s.e().clone();
    let r = a.gcd(&b);
    let h_sq = s.self_intersection(&h);
    let (q, rem) = h_sq.div_rem(&(&r * &r));
    debug_assert!(rem.is_zero());
    let n = h0(&h, &s) - 1;
    Ok(CarpetParams { g: q + 1, m: &h_sq + 1, n, h_sq, prime: r.is_one(), primality_certified: e <= BigInt::from(2), r, a, b, e })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Estimator {
    Beta,
    Gamma,
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Estimator::Beta => "beta",
            Estimator::Gamma => "gamma",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTerm {
    pub label: &'static str,
    pub value: Interval,
}

/// Upper bound for `α` of the carpet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBound {
    /// Possible values of the estimator, clamped at 0.
    pub value: Interval,
    pub estimator: Estimator,
    /// 1 when a normal-bundle term is only known up to one extra section.
    pub special_correction: u8,
    pub anchors: Vec<&'static str>,
    pub params: CarpetParams,
    pub terms: Vec<AlphaTerm>,
}

impl AlphaBound {
    /// The certified bound `α <= upper()`.
    pub fn upper(&self) -> &BigInt {
        self.value.hi()
    }

    pub fn is_zero(&self) -> bool {
        self.value.hi().is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_point()
    }
}

impl fmt::Display for AlphaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.estimator, self.value)?;
        if self.special_correction > 0 {
            write!(f, " (includes +{} correction)", self.special_correction)?;
        }
        Ok(())
    }
}

fn term(label: &'static str, value: impl Into<Interval>) -> AlphaTerm {
    AlphaTerm { label, value: value.into() }
}

fn sum_terms(terms: &[AlphaTerm]) -> Interval {
    terms.iter().fold(Interval::zero(), |acc, t| &acc + &t.value)
}

/// `β = h1(T(-H+K)) + h1(T(-H)) - h0(T(-H)) + h1(-H-K) + h0(-H-2K)`.
pub fn beta(a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<AlphaBound> {
    let params = carpet_params(a, b, e)?;
    let s = params.surface();
    let h = params.h();
    let k = s.canonical();
    let minus_h_plus_k = &k - &h;
    if !h1(&minus_h_plus_k, &s).is_zero() {
        return Err(Error::PreconditionFailed(format!("h1(-H+K) != 0 for H = {h} on {s}")));
    }
    let terms = vec![
        term("h1(T(-H+K))", tangent_cohomology(&minus_h_plus_k, &s).h1()),
        term("h1(T(-H))-h0(T(-H))", tangent_cohomology(&-&h, &s).h1_minus_h0()),
        term("h1(-H-K)", h1(&-(&h + &k), &s)),
        term("h0(-H-2K)", h0(&-(&h + &(2 * &k)), &s)),
    ];
    Ok(AlphaBound {
        value: sum_terms(&terms).clamp_below(&BigInt::zero()),
        estimator: Estimator::Beta,
        special_correction: 0,
        anchors: vec![anchors::BETA_ESTIMATE, anchors::LEMMA_CANONICAL_TWIST],
        params,
        terms,
    })
}

/// `γ` for `H = 2C0 + bf`: `h0(N(-H+K)) + h0(N(-H)) + h0(-H-2K) - M - 1` with
/// both normal terms taken from the standard rule table.
pub fn gamma(b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<AlphaBound> {
    gamma_with(&RuleTable::standard(), b, e)
}

pub fn gamma_with(rules: &RuleTable, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<AlphaBound> {
    let params = carpet_params(2, b, e)?;
    let s = params.surface();
    let h = params.h();
    let one = BigInt::one();
    let nk = rules.h0_normal_twist(&h, &s, NormalTwist::MinusHPlusK, &one)?;
    let nh = rules.h0_normal_twist(&h, &s, NormalTwist::MinusH, &one)?;
    let special_correction = if nh.exact { 0 } else { u8::try_from(nh.value.hi() - &params.m - 1).unwrap_or(0) };
    let k = s.canonical();
    let terms = vec![
        term("h0(N(-H+K))", nk.value.hi().clone()),
        term("h0(N(-H))", nh.value.hi().clone()),
        term("h0(-H-2K)", h0(&-(&h + &(2 * &k)), &s)),
        term("-M-1", -(&params.m + BigInt::one())),
    ];
    Ok(AlphaBound {
        value: sum_terms(&terms).clamp_below(&BigInt::zero()),
        estimator: Estimator::Gamma,
        special_correction,
        anchors: vec![anchors::GAMMA_ESTIMATE, nk.anchor, nh.anchor],
        params,
        terms,
    })
}

/// `γ` for `a = 2`, `β` for `a >= 3`.
pub fn alpha_upper(a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<AlphaBound> {
    alpha_upper_with(&RuleTable::standard(), a, b, e)
}

pub fn alpha_upper_with(rules: &RuleTable, a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<AlphaBound> {
    let (a, b, e) = (a.into(), b.into(), e.into());
    // Surface and very-ampleness errors take priority over the a = 1 gap.
    carpet_params(a.clone(), b.clone(), e.clone())?;
    if a == BigInt::from(2) {
        gamma_with(rules, b, e)
    } else if a > BigInt::from(2) {
        beta(a, b, e)
    } else {
        Err(Error::UnsupportedA(a))
    }
}

/// The five-term bound for `h0(N(-kH))` of the carpet, `k >= 2`.
pub fn h0_n_minus_k_bound(a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Interval> {
    let k = k.into();
    if k < BigInt::from(2) {
        return Err(Error::InvalidQuery(format!("k must be >= 2, got {k}")));
    }
    let params = carpet_params(a, b, e)?;
    let s = params.surface();
    let kh = params.h().scale(&k);
    let kc = s.canonical();
    let total = tangent_cohomology(&(&kc - &kh), &s).h1()
        + tangent_cohomology(&-&kh, &s).h1_minus_h0()
        + Interval::point(h1(&-(&kh + &kc), &s))
        + Interval::point(h0(&-(&kh + &(2 * &kc)), &s));
    Ok(total.clamp_below(&BigInt::zero()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extendable {
    No,
    Unknown,
}

impl fmt::Display for Extendable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extendable::No => "no",
            Extendable::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendabilityVerdict {
    pub extendable: Extendable,
    /// Smallest `k` such that the variety is certified not `k`-extendable.
    pub k_extendability_ceiling: Option<BigInt>,
    pub h0_n_minus2_bound: Interval,
    pub reasons: Vec<String>,
}

/// Apply the Zak–L'vovsky criterion to an `α` bound in `P^M`.
pub fn zak_lvovsky(alpha: &Interval, h0_minus2: &Interval, m: &BigInt) -> ExtendabilityVerdict {
    let a = alpha.hi();
    let mut reasons = Vec::new();
    let (extendable, ceiling) = if !a.is_positive() {
        reasons.push(format!("alpha <= 0 [{}]", anchors::ZAK_LVOVSKY));
        (Extendable::No, Some(BigInt::one()))
    } else if a < m || h0_minus2.is_exact_zero() {
        let k = a + 1;
        reasons.push(format!("alpha <= {a}, not {k}-extendable [{}]", anchors::ZAK_LVOVSKY_K));
        (Extendable::Unknown, Some(k))
    } else {
        reasons.push(format!("alpha <= {a} decides nothing in P^{m} [{}]", anchors::ZAK_LVOVSKY_K));
        (Extendable::Unknown, None)
    };
    ExtendabilityVerdict { extendable, k_extendability_ceiling: ceiling, h0_n_minus2_bound: h0_minus2.clone(), reasons }
}

/// Prime genera covered by the high-genus non-extendability theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFamily {
    pub form: &'static str,
    pub k: BigInt,
}

pub fn prime_family(g: &BigInt) -> Option<PrimeFamily> {
    const FAMILIES: [(&str, i64, i64, i64); 5] =
        [("4k+1", 4, 1, 5), ("18k+4", 18, 4, 1), ("18k+7", 18, 7, 2), ("18k+13", 18, 13, 1), ("18k+16", 18, 16, 1)];
    FAMILIES.iter().find_map(|&(form, step, offset, k_min)| {
        let (k, rem) = (g - offset).div_rem(&BigInt::from(step));
        (rem.is_zero() && k >= BigInt::from(k_min)).then_some(PrimeFamily { form, k })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarpetAssessment {
    pub bound: AlphaBound,
    pub verdict: ExtendabilityVerdict,
    pub prime_family: Option<PrimeFamily>,
}

impl CarpetAssessment {
    pub fn params(&self) -> &CarpetParams {
        &self.bound.params
    }
}

/// α bound, `h0(N(-2))` bound and Zak–L'vovsky verdict for the general K3 in
/// the component of the carpet on `(a, b, e)`.
pub fn assess(a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<CarpetAssessment> {
    assess_with(&RuleTable::standard(), a, b, e)
}

pub fn assess_with(rules: &RuleTable, a: impl Into<BigInt>, b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<CarpetAssessment> {
    let (a, b, e) = (a.into(), b.into(), e.into());
    let bound = alpha_upper_with(rules, a.clone(), b.clone(), e.clone())?;
    let h0_minus2 = h0_n_minus_k_bound(a, b, e, 2)?;
    let p = &bound.params;
    let mut verdict = zak_lvovsky(&bound.value, &h0_minus2, &p.m);
    let family = if p.prime { prime_family(&p.g) } else { None };
    if p.prime && (!p.primality_certified || family.is_none()) {
        verdict.extendable = Extendable::Unknown;
        verdict.k_extendability_ceiling = None;
        let why = if p.primality_certified { "genus outside the certified prime families" } else { "primality not certified for e > 2" };
        verdict.reasons.push(format!("{why} [{}]", anchors::PRIME_FAMILIES));
    } else if verdict.extendable == Extendable::No {
        let anchor = if p.prime { anchors::PRIME_FAMILIES } else { anchors::HIGH_GENUS };
        verdict.reasons.push(format!("general K3 of index {} and genus {} in P^{} is not extendable [{anchor}]", p.r, p.g, p.m));
    }
    Ok(CarpetAssessment { bound, verdict, prime_family: family })
}

/// `β(3, b, e)` for the double-cover embeddings, with the flag saying whether
/// the split-carpet degeneration is available (`b >= 2e + 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoverBound {
    pub bound: AlphaBound,
    pub split_carpet: bool,
}

pub fn double_cover_alpha(b: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<DoubleCoverBound> {
    let (b, e) = (b.into(), e.into());
    if !(e.is_zero() || e.is_one()) {
        return Err(Error::InvalidQuery(format!("double covers need e in {{0, 1}}, got {e}")));
    }
    let split_carpet = b >= BigInt::from(2) * &e + 2;
    let mut bound = beta(3, b, e)?;
    bound.anchors.push(anchors::DOUBLE_COVER);
    Ok(DoubleCoverBound { bound, split_carpet })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn params_examples() {
        let p = carpet_params(2, 6, 0).unwrap();
        assert_eq!((p.r.clone(), p.g.clone(), p.h_sq.clone(), p.m.clone(), p.n.clone()), (bi(2), bi(7), bi(24), bi(25), bi(20)));
        assert!(!p.prime);
        let p = carpet_params(3, 3, 0).unwrap();
        assert_eq!((p.r, p.g, p.m), (bi(3), bi(3), bi(19)));
        let p = carpet_params(1, 3, 1).unwrap();
        assert_eq!((p.r, p.g), (bi(1), bi(6)));
        assert!(p.primality_certified);
        assert!(!carpet_params(1, 4, 3).unwrap().primality_certified);
    }

    #[test]
    fn params_reject() {
        assert!(matches!(carpet_params(2, 2, 1), Err(Error::NotVeryAmple { .. })));
        assert!(matches!(carpet_params(0, 2, 0), Err(Error::NotVeryAmple { .. })));
        assert!(matches!(carpet_params(2, 6, -1), Err(Error::NegativeInvariant(_))));
    }

    #[test]
    fn beta_examples() {
        for (a, b, e, v) in [(3, 5, 0, 0), (3, 3, 0, 4), (4, 4, 0, 1), (3, 6, 1, 1), (3, 4, 0, 2)] {
            let bound = beta(a, b, e).unwrap();
            assert_eq!(bound.value, Interval::point(v), "beta({a},{b},{e})");
        }
    }

    #[test]
    fn gamma_examples() {
        for (b, e, v, c) in [(6, 0, 0, 0), (2, 0, 10, 1), (4, 1, 6, 0), (4, 0, 3, 0), (6, 1, 1, 0), (3, 0, 6, 0)] {
            let g = gamma(b, e).unwrap();
            assert_eq!(g.value, Interval::point(v), "gamma({b},{e})");
            assert_eq!(g.special_correction, c);
        }
        assert!(matches!(gamma(3, 1), Err(Error::NoRuleApplies(_))));
    }

    #[test]
    fn alpha_dispatch() {
        assert_eq!(alpha_upper(2, 6, 0).unwrap().estimator, Estimator::Gamma);
        assert_eq!(alpha_upper(3, 6, 1).unwrap().upper(), &bi(1));
        assert!(matches!(alpha_upper(1, 5, 0), Err(Error::UnsupportedA(_))));
    }

    #[test]
    fn minus_k_bound() {
        assert_eq!(h0_n_minus_k_bound(2, 3, 0, 2).unwrap(), Interval::zero());
        assert_eq!(h0_n_minus_k_bound(2, 2, 0, 2).unwrap(), Interval::point(1));
        assert_eq!(h0_n_minus_k_bound(2, 2, 0, 3).unwrap(), Interval::zero());
        assert!(h0_n_minus_k_bound(2, 2, 0, 1).is_err());
    }

    #[test]
    fn zak_lvovsky_gate() {
        let v = zak_lvovsky(&Interval::zero(), &Interval::zero(), &bi(25));
        assert_eq!(v.extendable, Extendable::No);
        let v = zak_lvovsky(&Interval::point(3), &Interval::zero(), &bi(17));
        assert_eq!(v.k_extendability_ceiling, Some(bi(4)));
        let v = zak_lvovsky(&Interval::point(1), &Interval::zero(), &bi(1));
        assert_eq!(v.k_extendability_ceiling, Some(bi(2)));
        let v = zak_lvovsky(&Interval::point(30), &Interval::point(1), &bi(10));
        assert_eq!(v.k_extendability_ceiling, None);
    }

    #[test]
    fn prime_families() {
        assert_eq!(prime_family(&bi(21)).unwrap().form, "4k+1");
        assert!(prime_family(&bi(17)).is_none());
        assert!(prime_family(&bi(9)).is_none());
        assert_eq!(prime_family(&bi(22)).unwrap().form, "18k+4");
        assert_eq!(prime_family(&bi(61)).unwrap().form, "4k+1");
        assert_eq!(prime_family(&bi(43)).unwrap().form, "18k+7");
        assert!(prime_family(&bi(25)).unwrap().k == bi(6));
    }

    #[test]
    fn assessment_gating() {
        let a = assess(2, 6, 0).unwrap();
        assert_eq!(a.verdict.extendable, Extendable::No);
        // gcd 1, genus 13 is not in a certified family
        let a = assess(2, 3, 0).unwrap();
        assert_eq!(a.bound.upper(), &bi(6));
        assert_eq!(a.verdict.extendable, Extendable::Unknown);
        // genus 21 = 4*5 + 1
        let a = assess(2, 5, 0).unwrap();
        assert_eq!(a.params().g, bi(21));
        assert_eq!(a.verdict.extendable, Extendable::No);
        // same bound but e > 2 leaves primality uncertified
        let a = assess(3, 14, 3).unwrap();
        assert!(a.params().prime);
        assert_eq!(a.verdict.extendable, Extendable::Unknown);
    }

    #[test]
    fn double_cover() {
        assert!(double_cover_alpha(5, 0).unwrap().bound.is_zero());
        assert!(double_cover_alpha(7, 1).unwrap().bound.is_zero());
        let d = double_cover_alpha(4, 0).unwrap();
        assert_eq!(d.bound.value, Interval::point(2));
        assert!(d.split_carpet);
        assert!(double_cover_alpha(9, 2).is_err());
    }
}
