//! Piecewise validity conditions on `(a, b, e)`, stored as data so that rule
//! and lemma tables can be inspected, printed and perturbed in tests.

use std::fmt;

use num_bigint::BigInt;

/// `ae * a * e + e * e + c`, the shape of every threshold on `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linear {
    pub ae: i64,
    pub e: i64,
    pub c: i64,
}

impl Linear {
    pub const fn new(ae: i64, e: i64, c: i64) -> Self {
        Linear { ae, e, c }
    }

    pub const fn constant(c: i64) -> Self {
        Linear { ae: 0, e: 0, c }
    }

    pub fn eval(&self, a: &BigInt, e: &BigInt) -> BigInt {
        BigInt::from(self.ae) * a * e + BigInt::from(self.e) * e + BigInt::from(self.c)
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let mut push = |coef: i64, sym: &str| {
            if coef == 0 {
                return;
            }
            let mag = coef.abs();
            let body = match (mag, sym.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => sym.to_string(),
                _ => format!("{mag}{sym}"),
            };
            terms.push((coef < 0, body));
        };
        push(self.ae, "ae");
        push(self.e, "e");
        push(self.c, "");
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    AtLeast(Linear),
    AtMost(Linear),
}

impl Bound {
    pub fn holds(&self, a: &BigInt, b: &BigInt, e: &BigInt) -> bool {
        match self {
            Bound::AtLeast(l) => *b >= l.eval(a, e),
            Bound::AtMost(l) => *b <= l.eval(a, e),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtLeast(l) => write!(f, "b >= {l}"),
            Bound::AtMost(l) => write!(f, "b <= {l}"),
        }
    }
}

/// Inclusive integer range with optional ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IntRange {
    pub min: Option<i64>,
    pub max: Option<i64>,
}

impl IntRange {
    pub const fn any() -> Self {
        IntRange { min: None, max: None }
    }

    pub const fn eq(n: i64) -> Self {
        IntRange { min: Some(n), max: Some(n) }
    }

    pub const fn at_least(n: i64) -> Self {
        IntRange { min: Some(n), max: None }
    }

    pub const fn at_most(n: i64) -> Self {
        IntRange { min: None, max: Some(n) }
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        self.min.is_none_or(|m| *v >= BigInt::from(m)) && self.max.is_none_or(|m| *v <= BigInt::from(m))
    }

    fn describe(&self, sym: &str) -> Option<String> {
        match (self.min, self.max) {
            (None, None) => None,
            (Some(lo), Some(hi)) if lo == hi => Some(format!("{sym} = {lo}")),
            (Some(lo), Some(hi)) => Some(format!("{lo} <= {sym} <= {hi}")),
            (Some(lo), None) => Some(format!("{sym} >= {lo}")),
            (None, Some(hi)) => Some(format!("{sym} <= {hi}")),
        }
    }
}

/// A conjunction: ranges on `a` and `e` plus bounds on `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub a: IntRange,
    pub e: IntRange,
    pub b: Vec<Bound>,
}

impl Clause {
    pub fn new(a: IntRange, b: Vec<Bound>) -> Self {
        Clause { a, e: IntRange::any(), b }
    }

    pub fn with_e(mut self, e: IntRange) -> Self {
        self.e = e;
        self
    }

    pub fn holds(&self, a: &BigInt, b: &BigInt, e: &BigInt) -> bool {
        self.a.contains(a) && self.e.contains(e) && self.b.iter().all(|bd| bd.holds(a, b, e))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        parts.extend(self.a.describe("a"));
        parts.extend(self.e.describe("e"));
        parts.extend(self.b.iter().map(|b| b.to_string()));
        if parts.is_empty() {
            write!(f, "always")
        } else {
            write!(f, "{}", parts.join(" & "))
        }
    }
}

/// A disjunction of clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub clauses: Vec<Clause>,
}

impl Condition {
    pub fn new(clauses: Vec<Clause>) -> Self {
        Condition { clauses }
    }

    pub fn always() -> Self {
        Condition { clauses: vec![Clause::new(IntRange::any(), vec![])] }
    }

    pub fn holds(&self, a: &BigInt, b: &BigInt, e: &BigInt) -> bool {
        self.clauses.iter().any(|c| c.holds(a, b, e))
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn linear_eval_and_display() {
        let l = Linear::new(1, -2, 1);
        assert_eq!(l.eval(&bi(4), &bi(3)), bi(12 - 6 + 1));
        assert_eq!(l.to_string(), "ae - 2e + 1");
        assert_eq!(Linear::new(0, 2, 5).to_string(), "2e + 5");
        assert_eq!(Linear::constant(-3).to_string(), "-3");
        assert_eq!(Linear::constant(0).to_string(), "0");
    }

    #[test]
    fn clause_and_condition() {
        let c = Condition::new(vec![
            Clause::new(IntRange::eq(2), vec![Bound::AtMost(Linear::new(0, 1, 1))]),
            Clause::new(IntRange::eq(3), vec![]),
        ]);
        assert!(c.holds(&bi(2), &bi(3), &bi(2)));
        assert!(!c.holds(&bi(2), &bi(4), &bi(2)));
        assert!(c.holds(&bi(3), &bi(100), &bi(0)));
        assert!(!c.holds(&bi(4), &bi(0), &bi(0)));
        assert_eq!(c.to_string(), "a = 2 & b <= e + 1 | a = 3");
        assert!(Condition::always().holds(&bi(-7), &bi(0), &bi(1)));
    }

    #[test]
    fn ranges() {
        assert!(IntRange::at_least(4).contains(&bi(4)));
        assert!(!IntRange::at_least(4).contains(&bi(3)));
        assert!(IntRange::at_most(4).contains(&bi(-10)));
        let c = Clause::new(IntRange::at_least(2), vec![]).with_e(IntRange::eq(0));
        assert_eq!(c.to_string(), "a >= 2 & e = 0");
    }
}
