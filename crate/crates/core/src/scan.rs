//! Grid evaluation over `(e, a, b)`.
//!
//! Points are enumerated in lexicographic `(e, a, b)` order and filtered to
//! very ample `H`. With the `parallel` feature the points are evaluated on the
//! rayon pool; either way the returned rows are in canonical order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::classification::{classify_fano_with, ClassificationRecord};
use crate::cohomology::cohomology;
use crate::error::{Error, Result};
use crate::extendability::{assess_with, beta, carpet_params, gamma_with, h0_n_minus_k_bound, AlphaBound, CarpetAssessment};
use crate::interval::Interval;
use crate::les::tangent_cohomology;
use crate::rules::RuleTable;
use crate::surface::{DivisorClass, HirzebruchSurface};

/// Which bundle `coh` talks about, given `H = aC0 + bf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bundle {
    /// `O(aC0 + bf)`
    Line,
    /// `T ⊗ O(-H)`
    TangentMinusH,
    /// `T ⊗ O(-H + K)`
    TangentMinusHPlusK,
    /// `T ⊗ O(aC0 + bf)`
    TangentTwist,
}

impl Bundle {
    pub fn is_tangent(&self) -> bool {
        !matches!(self, Bundle::Line)
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bundle::Line => "O(L)",
            Bundle::TangentMinusH => "T(-H)",
            Bundle::TangentMinusHPlusK => "T(-H+K)",
            Bundle::TangentTwist => "T(L)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDims {
    pub h: [Interval; 3],
    pub exact: bool,
}

impl fmt::Display for BundleDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h[0], self.h[1], self.h[2])
    }
}

pub fn bundle_cohomology(bundle: Bundle, d: &DivisorClass, s: &HirzebruchSurface) -> BundleDims {
    let twist = match bundle {
        Bundle::Line => {
            let c = cohomology(d, s);
            return BundleDims { h: [c.h0, c.h1, c.h2].map(Interval::point), exact: true };
        }
        Bundle::TangentMinusH => -d,
        Bundle::TangentMinusHPlusK => &s.canonical() - d,
        Bundle::TangentTwist => d.clone(),
    };
    let r = tangent_cohomology(&twist, s);
    BundleDims { h: r.h(), exact: r.is_exact() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    Cohomology(Bundle),
    Beta,
    Gamma,
    Alpha,
    NormalBound { k: u32 },
    Classify,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Cohomology(_) => "cohomology",
            Quantity::Beta => "beta",
            Quantity::Gamma => "gamma",
            Quantity::Alpha => "alpha",
            Quantity::NormalBound { .. } => "normal-k",
            Quantity::Classify => "classify",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    /// Accepts `cohomology`, `beta`, `gamma`, `alpha`, `classify` and
    /// `normal-k` (with `k = 2`) or `normal-<k>`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cohomology" => Quantity::Cohomology(Bundle::Line),
            "beta" => Quantity::Beta,
            "gamma" => Quantity::Gamma,
            "alpha" => Quantity::Alpha,
            "classify" => Quantity::Classify,
            "normal-k" => Quantity::NormalBound { k: 2 },
            other => {
                let k = other
                    .strip_prefix("normal-")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::InvalidQuery(format!("unknown computation '{other}'")))?;
                Quantity::NormalBound { k }
            }
        })
    }
}

/// Inclusive integer range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidQuery(format!("empty range {lo}..{hi}")));
        }
        Ok(Span { lo, hi })
    }

    pub fn single(v: i64) -> Self {
        Span { lo: v, hi: v }
    }
}

impl FromStr for Span {
    type Err = Error;

    /// `7` or `lo..hi` (inclusive).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidQuery(format!("bad range '{s}', expected N or LO..HI"));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Span::new(lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)
            }
            None => Ok(Span::single(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub e: Span,
    pub a: Span,
    pub b: Span,
}

impl Grid {
    pub fn new(e: Span, a: Span, b: Span) -> Result<Self> {
        if e.lo < 0 {
            return Err(Error::NegativeInvariant(BigInt::from(e.lo)));
        }
        Ok(Grid { e, a, b })
    }

    /// Very ample points in lexicographic `(e, a, b)` order.
    pub fn points(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for e in self.e.lo..=self.e.hi {
            for a in self.a.lo.max(1)..=self.a.hi {
                let b_min = self.b.lo.max(a * e + 1);
                out.extend((b_min..=self.b.hi).map(|b| (e, a, b)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowValue {
    Dims(BundleDims),
    Estimate(Box<AlphaBound>),
    Assessment(Box<CarpetAssessment>),
    NormalBound(Interval),
    Classification(Box<ClassificationRecord>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRow {
    pub e: i64,
    pub a: i64,
    pub b: i64,
    pub result: Result<RowValue>,
}

pub fn evaluate_point(q: &Quantity, rules: &RuleTable, e: i64, a: i64, b: i64) -> Result<RowValue> {
    match *q {
        Quantity::Cohomology(bundle) => {
            let s = HirzebruchSurface::new(e)?;
            Ok(RowValue::Dims(bundle_cohomology(bundle, &DivisorClass::new(a, b), &s)))
        }
        Quantity::Beta => beta(a, b, e).map(|v| RowValue::Estimate(Box::new(v))),
        Quantity::Gamma => {
            if a != 2 {
                return Err(Error::InvalidQuery(format!("gamma needs a = 2, got a = {a}")));
            }
            gamma_with(rules, b, e).map(|v| RowValue::Estimate(Box::new(v)))
        }
        Quantity::Alpha => assess_with(rules, a, b, e).map(|v| RowValue::Assessment(Box::new(v))),
        Quantity::NormalBound { k } => h0_n_minus_k_bound(a, b, e, k).map(RowValue::NormalBound),
        Quantity::Classify => {
            let p = carpet_params(a, b, e)?;
            classify_fano_with(rules, p.r, p.g).map(|v| RowValue::Classification(Box::new(v)))
        }
    }
}

fn row(q: &Quantity, rules: &RuleTable, (e, a, b): (i64, i64, i64)) -> GridRow {
    GridRow { e, a, b, result: evaluate_point(q, rules, e, a, b) }
}

pub fn evaluate_grid_sequential(grid: &Grid, q: &Quantity, rules: &RuleTable) -> Vec<GridRow> {
    grid.points().into_iter().map(|p| row(q, rules, p)).collect()
}

/// Parallel over points when the `parallel` feature is on.
pub fn evaluate_grid(grid: &Grid, q: &Quantity, rules: &RuleTable) -> Vec<GridRow> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        grid.points().into_par_iter().map(|p| row(q, rules, p)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        evaluate_grid_sequential(grid, q, rules)
    }
}

/// [`evaluate_grid`] on a dedicated pool of `workers` threads.
pub fn evaluate_grid_with_workers(grid: &Grid, q: &Quantity, rules: &RuleTable, workers: usize) -> Result<Vec<GridRow>> {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidQuery(format!("cannot start {workers} workers: {e}")))?;
        Ok(pool.install(|| evaluate_grid(grid, q, rules)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        Ok(evaluate_grid_sequential(grid, q, rules))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_ordered_and_very_ample() {
        let g = Grid::new(Span::new(0, 1).unwrap(), Span::single(3), Span::new(4, 8).unwrap()).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 10);
        assert_eq!(pts[0], (0, 3, 4));
        assert_eq!(pts[5], (1, 3, 4));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }

    #[test]
    fn empty_effective_range() {
        let g = Grid::new(Span::single(2), Span::single(3), Span::new(1, 6).unwrap()).unwrap();
        assert!(g.points().is_empty());
    }

    #[test]
    fn span_parsing() {
        assert_eq!("3..7".parse::<Span>().unwrap(), Span { lo: 3, hi: 7 });
        assert_eq!("3..=7".parse::<Span>().unwrap(), Span { lo: 3, hi: 7 });
        assert_eq!("-2".parse::<Span>().unwrap(), Span::single(-2));
        assert!("7..3".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!("normal-3".parse::<Quantity>().unwrap(), Quantity::NormalBound { k: 3 });
        assert_eq!("beta".parse::<Quantity>().unwrap(), Quantity::Beta);
        assert!("delta".parse::<Quantity>().is_err());
    }

    #[test]
    fn beta_scan_row() {
        let g = Grid::new(Span::new(0, 1).unwrap(), Span::single(3), Span::new(4, 8).unwrap()).unwrap();
        let rows = evaluate_grid(&g, &Quantity::Beta, &RuleTable::standard());
        let r = rows.iter().find(|r| (r.e, r.a, r.b) == (0, 3, 5)).unwrap();
        match r.result.as_ref().unwrap() {
            RowValue::Estimate(b) => assert!(b.is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = Grid::new(Span::new(0, 2).unwrap(), Span::new(1, 5).unwrap(), Span::new(-3, 15).unwrap()).unwrap();
        let rules = RuleTable::standard();
        for q in [Quantity::Alpha, Quantity::Cohomology(Bundle::TangentMinusH), Quantity::Classify] {
            assert_eq!(evaluate_grid(&g, &q, &rules), evaluate_grid_sequential(&g, &q, &rules));
            assert_eq!(evaluate_grid_with_workers(&g, &q, &rules, 3).unwrap(), evaluate_grid_sequential(&g, &q, &rules));
        }
    }
}
