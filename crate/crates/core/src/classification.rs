//! Non-prime Fano threefolds and Mukai varieties whose general K3 section has
//! index `r` and genus `g`.
//!
//! Each `(r, g)` is reduced to a canonical carpet on `F_0` or `F_1`; its `α`
//! bound decides emptiness through Zak–L'vovsky, and survivors get the
//! tangent-space dimension at the cone.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::anchors;
use crate::error::{Error, Result};
use crate::extendability::{alpha_upper_with, h0_n_minus_k_bound, zak_lvovsky};
use crate::rules::RuleTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Fano,
    Mukai,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Empty,
    NonemptyIrreducible,
    OutOfScope,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Empty => "empty",
            Status::NonemptyIrreducible => "nonempty-irreducible",
            Status::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaValue {
    pub value: BigInt,
    /// Only `α <= value` is known.
    pub bound_only: bool,
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bound_only {
            write!(f, "<= {}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub kind: Kind,
    /// Dimension of the variety: 3 for Fano threefolds.
    pub n: BigInt,
    pub r: BigInt,
    pub g: BigInt,
    pub status: Status,
    pub reason: String,
    pub anchors: Vec<&'static str>,
    pub tangent_dim_at_cone: Option<BigInt>,
    pub alpha: Option<AlphaValue>,
    /// A general K3 of this type lies in a unique Fano threefold.
    pub unique_fano: bool,
    /// `(a, b, e)` of the carpet used for `α`.
    pub carpet: (BigInt, BigInt, BigInt),
}

impl fmt::Display for ClassificationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.status {
            Status::Empty => "EMPTY",
            Status::NonemptyIrreducible => "nonempty irreducible",
            Status::OutOfScope => "OUT OF SCOPE",
        };
        write!(f, "{head}")?;
        if self.status != Status::NonemptyIrreducible {
            write!(f, " ({})", self.reason)?;
        }
        if let Some(a) = &self.alpha {
            write!(f, "; alpha {a}")?;
        }
        if let Some(d) = &self.tangent_dim_at_cone {
            let cone = if self.kind == Kind::Mukai && self.n == BigInt::from(5) { "triple cone" } else { "cone" };
            write!(f, "; dim T at {cone} = {d}")?;
        }
        if self.unique_fano {
            write!(f, "; unique Fano through a general K3")?;
        }
        if self.status == Status::NonemptyIrreducible {
            write!(f, "; {}", self.reason)?;
        }
        write!(f, " [{}]", self.anchors.join("; "))
    }
}

/// The carpet whose smoothing is a general K3 of index `r`, genus `g`:
/// `(r, r(g-1)/2, 0)` for odd `g`, `(r, rg/2, 1)` for even `g`.
pub fn canonical_carpet(r: &BigInt, g: &BigInt) -> (BigInt, BigInt, BigInt) {
    if g.is_odd() {
        (r.clone(), r * (g - 1) / 2, BigInt::zero())
    } else {
        (r.clone(), r * g / 2, BigInt::one())
    }
}

/// `P = 2 + r^2(g-1)`.
fn cone_span(r: &BigInt, g: &BigInt) -> BigInt {
    r * r * (g - 1) + 2
}

/// `18 + P^2 + α + P + correction` with `P = 2 + r^2(g-1)`.
pub fn cone_tangent_dim(r: &BigInt, g: &BigInt, alpha: &BigInt, correction: u8) -> BigInt {
    let p = cone_span(r, g);
    &p * &p + alpha + &p + 18 + correction
}

/// The same count at the `(n-2)`-fold cone over a K3 inside an `n`-fold.
pub fn iterated_cone_tangent_dim(n: &BigInt, r: &BigInt, g: &BigInt, alpha: &BigInt) -> BigInt {
    let p = cone_span(r, g);
    &p * &p + (n - 2) * (alpha + &p) + 18
}

fn validate(r: &BigInt, g: &BigInt) -> Result<()> {
    if *r < BigInt::from(2) {
        return Err(Error::InvalidQuery(format!("index r must be >= 2, got {r}")));
    }
    if *g < BigInt::from(3) {
        return Err(Error::InvalidQuery(format!("genus g must be >= 3, got {g}")));
    }
    Ok(())
}

struct Analysis {
    carpet: (BigInt, BigInt, BigInt),
    alpha: BigInt,
    h0_minus2: BigInt,
    ceiling: Option<BigInt>,
}

fn analyse(rules: &RuleTable, r: &BigInt, g: &BigInt) -> Result<Analysis> {
    let carpet = canonical_carpet(r, g);
    let (a, b, e) = carpet.clone();
    let bound = alpha_upper_with(rules, a.clone(), b.clone(), e.clone())?;
    let h0_minus2 = h0_n_minus_k_bound(a, b, e, 2)?;
    let verdict = zak_lvovsky(&bound.value, &h0_minus2, &bound.params.m);
    Ok(Analysis { carpet, alpha: bound.upper().clone(), h0_minus2: h0_minus2.hi().clone(), ceiling: verdict.k_extendability_ceiling })
}

fn out_of_scope(kind: Kind, n: BigInt, r: &BigInt, g: &BigInt, err: Error) -> ClassificationRecord {
    ClassificationRecord {
        kind,
        n,
        r: r.clone(),
        g: g.clone(),
        status: Status::OutOfScope,
        reason: err.to_string(),
        anchors: vec![anchors::HIGH_GENUS],
        tangent_dim_at_cone: None,
        alpha: None,
        unique_fano: false,
        carpet: canonical_carpet(r, g),
    }
}

pub fn classify_fano(r: impl Into<BigInt>, g: impl Into<BigInt>) -> Result<ClassificationRecord> {
    classify_fano_with(&RuleTable::standard(), r, g)
}

pub fn classify_fano_with(rules: &RuleTable, r: impl Into<BigInt>, g: impl Into<BigInt>) -> Result<ClassificationRecord> {
    let (r, g) = (r.into(), g.into());
    validate(&r, &g)?;
    let an = match analyse(rules, &r, &g) {
        Ok(an) => an,
        Err(err) if err.is_indeterminate() => return Ok(out_of_scope(Kind::Fano, BigInt::from(3), &r, &g, err)),
        Err(err) => return Err(err),
    };
    let mut rec = ClassificationRecord {
        kind: Kind::Fano,
        n: BigInt::from(3),
        r: r.clone(),
        g: g.clone(),
        status: Status::Empty,
        reason: String::new(),
        anchors: Vec::new(),
        tangent_dim_at_cone: None,
        alpha: Some(AlphaValue { value: an.alpha.clone(), bound_only: false }),
        unique_fano: false,
        carpet: an.carpet,
    };
    let degree_num: BigInt = BigInt::from(2) * (&g - BigInt::one());
    if an.alpha.is_zero() {
        rec.reason = "alpha = 0, general K3 not extendable".into();
        rec.anchors = vec![anchors::FANO_EMPTY, anchors::HIGH_GENUS];
    } else if !degree_num.is_multiple_of(&r) {
        let d = degree_num.gcd(&r);
        rec.reason = format!("degree {}/{} non-integral", &degree_num / &d, &r / &d);
        rec.anchors = vec![anchors::FANO_EMPTY, anchors::FANO_INTEGRALITY];
        if let Some(a) = rec.alpha.as_mut() {
            a.bound_only = true;
        }
    } else {
        let correction = u8::try_from(&an.h0_minus2).unwrap_or(u8::MAX);
        rec.status = Status::NonemptyIrreducible;
        rec.reason = "Fano-Iskovskih families open dense; general fiber over the K3 locus irreducible".into();
        rec.anchors = vec![anchors::FANO_IRREDUCIBLE, anchors::ALPHA_EQUALITY, anchors::CONE_TANGENT];
        if correction > 0 {
            rec.anchors.push(anchors::CONE_TANGENT_SPECIAL);
        }
        rec.tangent_dim_at_cone = Some(cone_tangent_dim(&r, &g, &an.alpha, correction));
        rec.unique_fano = an.alpha.is_one();
    }
    Ok(rec)
}

pub fn classify_mukai(n: impl Into<BigInt>, r: impl Into<BigInt>, g: impl Into<BigInt>) -> Result<ClassificationRecord> {
    classify_mukai_with(&RuleTable::standard(), n, r, g)
}

pub fn classify_mukai_with(
    rules: &RuleTable,
    n: impl Into<BigInt>,
    r: impl Into<BigInt>,
    g: impl Into<BigInt>,
) -> Result<ClassificationRecord> {
    let n = n.into();
    if n < BigInt::from(4) {
        return Err(Error::InvalidQuery(format!("Mukai varieties need n >= 4, got {n}")));
    }
    let fano = classify_fano_with(rules, r, g)?;
    let mut rec = ClassificationRecord { kind: Kind::Mukai, n: n.clone(), tangent_dim_at_cone: None, unique_fano: false, ..fano.clone() };
    match fano.status {
        Status::OutOfScope => return Ok(rec),
        Status::Empty => {
            rec.reason = format!("no Fano threefold linear section: {}", fano.reason);
            rec.anchors = [vec![anchors::MUKAI_EMPTY], fano.anchors].concat();
            return Ok(rec);
        }
        Status::NonemptyIrreducible => {}
    }
    let (r, g) = (&rec.r, &rec.g);
    let alpha = fano.alpha.as_ref().map(|a| a.value.clone()).unwrap_or_default();
    if *r == BigInt::from(2) && (*g == BigInt::from(3) || *g == BigInt::from(4)) {
        rec.status = Status::Empty;
        rec.reason = "excluded by adjunction".into();
        rec.anchors = vec![anchors::MUKAI_EMPTY, anchors::MUKAI_ADJUNCTION];
        return Ok(rec);
    }
    let an = analyse(rules, r, g)?;
    match an.ceiling {
        Some(ceiling) if &n - 2 >= ceiling => {
            rec.status = Status::Empty;
            rec.reason = format!("alpha <= {alpha}, general K3 not {ceiling}-extendable");
            rec.anchors = vec![anchors::MUKAI_EMPTY, anchors::ZAK_LVOVSKY_K];
        }
        ceiling => {
            rec.status = Status::NonemptyIrreducible;
            rec.reason = match ceiling {
                Some(c) => format!("alpha <= {alpha} only excludes {c}-extensions, n-2 = {}", &n - 2),
                None => format!("alpha <= {alpha} excludes nothing"),
            };
            rec.anchors = vec![anchors::MUKAI_IRREDUCIBLE, anchors::MUKAI_TRIPLE_CONE];
            rec.tangent_dim_at_cone = Some(iterated_cone_tangent_dim(&n, r, g, &alpha));
        }
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn canonical_carpets() {
        assert_eq!(canonical_carpet(&bi(2), &bi(3)), (bi(2), bi(2), bi(0)));
        assert_eq!(canonical_carpet(&bi(3), &bi(4)), (bi(3), bi(6), bi(1)));
        assert_eq!(canonical_carpet(&bi(4), &bi(3)), (bi(4), bi(4), bi(0)));
    }

    #[test]
    fn fano_examples() {
        let rec = classify_fano(3, 3).unwrap();
        assert_eq!(rec.status, Status::Empty);
        assert!(rec.reason.contains("4/3"), "{}", rec.reason);
        assert!(rec.alpha.unwrap().bound_only);

        let rec = classify_fano(2, 6).unwrap();
        assert_eq!(rec.status, Status::NonemptyIrreducible);
        assert_eq!(rec.tangent_dim_at_cone, Some(bi(525)));
        assert!(rec.unique_fano);

        let rec = classify_fano(5, 4).unwrap();
        assert_eq!(rec.status, Status::Empty);
        assert!(rec.reason.contains("alpha = 0"));
    }

    #[test]
    fn cone_dimensions() {
        assert_eq!(cone_tangent_dim(&bi(2), &bi(3), &bi(10), 1), bi(139));
        assert_eq!(cone_tangent_dim(&bi(2), &bi(5), &bi(3), 0), bi(363));
        assert_eq!(cone_tangent_dim(&bi(4), &bi(3), &bi(1), 0), bi(1209));
        let got: Vec<_> = [(2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (4, 3)]
            .into_iter()
            .map(|(r, g)| classify_fano(r, g).unwrap().tangent_dim_at_cone.unwrap())
            .collect();
        assert_eq!(got, [139, 234, 363, 525, 889, 1209].map(bi));
    }

    #[test]
    fn mukai_examples() {
        assert_eq!(classify_mukai(6, 2, 5).unwrap().status, Status::Empty);
        let rec = classify_mukai(5, 2, 5).unwrap();
        assert_eq!(rec.status, Status::NonemptyIrreducible);
        assert_eq!(rec.tangent_dim_at_cone, Some(bi(405)));
        assert_eq!(classify_mukai(4, 2, 5).unwrap().status, Status::NonemptyIrreducible);
        let rec = classify_mukai(4, 3, 4).unwrap();
        assert_eq!(rec.status, Status::Empty);
        assert!(rec.reason.contains("alpha <= 1"));
        assert_eq!(classify_mukai(4, 2, 3).unwrap().reason, "excluded by adjunction");
        assert_eq!(classify_mukai(7, 3, 3).unwrap().status, Status::Empty);
    }

    #[test]
    fn invalid_queries() {
        assert!(classify_fano(1, 5).is_err());
        assert!(classify_fano(2, 2).is_err());
        assert!(classify_mukai(3, 2, 5).is_err());
    }
}
