//! Line-bundle cohomology on `F_e` by pushing forward along the ruling
//! `p: F_e -> P^1`.
//!
//! `p_* O(aC0 + bf) = O(b) ⊗ Sym^a(O ⊕ O(-e))` for `a >= 0`, and by relative
//! duality `R^1 p_* O(aC0 + bf) = ⊕_{k=0}^{-a-2} O(b + e(k+1))` for `a <= -2`.
//! Over a curve base the Leray spectral sequence degenerates, so the two rows
//! determine `h^0, h^1, h^2` exactly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::surface::{DivisorClass, HirzebruchSurface};

/// Summands `O(first), O(first + step), ..., O(first + (len-1) step)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeRun {
    pub first: BigInt,
    pub step: BigInt,
    pub len: BigInt,
}

/// A split bundle on `P^1`, stored as a union of arithmetic runs of degrees.
/// The empty bundle is the zero sheaf.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    runs: Vec<DegreeRun>,
}

/// `Σ_{k=0}^{n-1} max(0, base + slope k)` in closed form.
fn positive_part_sum(base: &BigInt, slope: &BigInt, n: &BigInt) -> BigInt {
    if !n.is_positive() {
        return BigInt::zero();
    }
    // Indices k in [lo, hi] are the ones where base + slope k > 0.
    let (lo, hi) = if slope.is_zero() {
        if base.is_positive() {
            (BigInt::zero(), n - 1)
        } else {
            return BigInt::zero();
        }
    } else if slope.is_positive() {
        let lo = if base.is_positive() { BigInt::zero() } else { (-base).div_floor(slope) + 1 };
        (lo, n - 1)
    } else {
        if !base.is_positive() {
            return BigInt::zero();
        }
        let last = (base - BigInt::one()).div_floor(&-slope);
        (BigInt::zero(), last.min(n - 1))
    };
    if lo > hi {
        return BigInt::zero();
    }
    let count = &hi - &lo + 1;
    // Σ_{k=lo}^{hi} (base + slope k) = count * base + slope * (lo + hi) * count / 2
    let index_sum = ((&lo + &hi) * &count) / 2;
    &count * base + slope * index_sum
}

impl SplitBundle {
    pub fn zero() -> Self {
        SplitBundle::default()
    }

    pub fn from_degrees<I, T>(degrees: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let runs = degrees.into_iter().map(|d| DegreeRun { first: d.into(), step: BigInt::zero(), len: BigInt::one() }).collect();
        SplitBundle { runs }
    }

    fn from_run(first: BigInt, step: BigInt, len: BigInt) -> Self {
        if !len.is_positive() {
            return SplitBundle::zero();
        }
        SplitBundle { runs: vec![DegreeRun { first, step, len }] }
    }

    pub fn runs(&self) -> &[DegreeRun] {
        &self.runs
    }

    pub fn rank(&self) -> BigInt {
        self.runs.iter().map(|r| &r.len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rank().is_zero()
    }

    /// `h^0 = Σ max(0, d + 1)`.
    pub fn h0(&self) -> BigInt {
        self.runs.iter().map(|r| positive_part_sum(&(&r.first + 1), &r.step, &r.len)).sum()
    }

    /// `h^1 = Σ max(0, -d - 1)`.
    pub fn h1(&self) -> BigInt {
        self.runs.iter().map(|r| positive_part_sum(&(-&r.first - 1), &-&r.step, &r.len)).sum()
    }

    /// `Σ (d + 1)`, which equals `h0 - h1`.
    pub fn euler(&self) -> BigInt {
        self.runs
            .iter()
            .map(|r| {
                let index_sum = (&r.len * (&r.len - 1)) / 2;
                &r.len * (&r.first + 1) + &r.step * index_sum
            })
            .sum()
    }

    /// Materialized degrees in ascending order. Only meant for small bundles.
    pub fn sorted_degrees(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for r in &self.runs {
            let mut d = r.first.clone();
            let mut k = BigInt::zero();
            while k < r.len {
                out.push(d.clone());
                d += &r.step;
                k += 1;
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .filter(|r| r.len.is_positive())
            .map(|r| {
                if r.len.is_one() {
                    format!("O({})", r.first)
                } else if r.step.is_zero() {
                    format!("O({})^{}", r.first, r.len)
                } else {
                    let last = &r.first + &r.step * (&r.len - 1);
                    format!("O({})..O({}) step {}", r.first, last, r.step)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `p_* O(D)`: `{b - k e : k = 0..a}` for `a >= 0`, zero otherwise.
pub fn pushforward(d: &DivisorClass, s: &HirzebruchSurface) -> SplitBundle {
    if d.a.is_negative() {
        return SplitBundle::zero();
    }
    SplitBundle::from_run(d.b.clone(), -s.e(), &d.a + 1)
}

/// `R^1 p_* O(D)`: `{b + e(k+1) : k = 0..(-a-2)}` for `a <= -2`, zero otherwise.
pub fn higher_pushforward(d: &DivisorClass, s: &HirzebruchSurface) -> SplitBundle {
    if d.a >= BigInt::from(-1) {
        return SplitBundle::zero();
    }
    SplitBundle::from_run(&d.b + s.e(), s.e().clone(), -&d.a - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyDims {
    pub h0: BigInt,
    pub h1: BigInt,
    pub h2: BigInt,
}

impl CohomologyDims {
    pub fn new(h0: impl Into<BigInt>, h1: impl Into<BigInt>, h2: impl Into<BigInt>) -> Self {
        CohomologyDims { h0: h0.into(), h1: h1.into(), h2: h2.into() }
    }

    pub fn zero() -> Self {
        CohomologyDims::new(0, 0, 0)
    }

    pub fn euler(&self) -> BigInt {
        &self.h0 - &self.h1 + &self.h2
    }

    pub fn get(&self, i: usize) -> &BigInt {
        match i {
            0 => &self.h0,
            1 => &self.h1,
            2 => &self.h2,
            _ => panic!("cohomological degree {i} out of range on a surface"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h0.is_zero() && self.h1.is_zero() && self.h2.is_zero()
    }
}

impl fmt::Display for CohomologyDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.h1, self.h2)
    }
}

/// Leray assembly: `h0 = h0(p_*)`, `h1 = h1(p_*) + h0(R^1p_*)`, `h2 = h1(R^1p_*)`.
pub fn cohomology(d: &DivisorClass, s: &HirzebruchSurface) -> CohomologyDims {
    let direct = pushforward(d, s);
    let higher = higher_pushforward(d, s);
    CohomologyDims { h0: direct.h0(), h1: direct.h1() + higher.h0(), h2: higher.h1() }
}

pub fn h0(d: &DivisorClass, s: &HirzebruchSurface) -> BigInt {
    pushforward(d, s).h0()
}

pub fn h1(d: &DivisorClass, s: &HirzebruchSurface) -> BigInt {
    pushforward(d, s).h1() + higher_pushforward(d, s).h0()
}

pub fn h2(d: &DivisorClass, s: &HirzebruchSurface) -> BigInt {
    higher_pushforward(d, s).h1()
}

/// Riemann–Roch: `χ(D) = 1 + D.(D - K)/2`.
pub fn euler_char(d: &DivisorClass, s: &HirzebruchSurface) -> BigInt {
    let twice = s.intersect(d, &(d - &s.canonical()));
    debug_assert!(twice.is_even());
    1 + twice / 2
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

    fn degs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn brute_sum(base: i64, slope: i64, n: i64) -> i64 {
        (0..n.max(0)).map(|k| (base + slope * k).max(0)).sum()
    }

    #[test]
    fn positive_part_sum_matches_brute_force() {
        for base in -12..12 {
            for slope in -5..=5 {
                for n in -1..9 {
                    assert_eq!(
                        positive_part_sum(&base.into(), &slope.into(), &n.into()),
                        BigInt::from(brute_sum(base, slope, n)),
                        "base={base} slope={slope} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(pushforward(&d(2, 6), &s(0)).sorted_degrees(), degs(&[6, 6, 6]));
        assert!(pushforward(&d(-1, 5), &s(3)).is_zero());
        assert_eq!(pushforward(&d(1, 2), &s(1)).sorted_degrees(), degs(&[1, 2]));
    }

    #[test]
    fn higher_pushforward_examples() {
        for e in 0..5 {
            assert_eq!(higher_pushforward(&d(-2, 0), &s(e)).sorted_degrees(), degs(&[e]));
        }
        assert!(higher_pushforward(&d(1, 3), &s(2)).is_zero());
        assert!(higher_pushforward(&d(-1, 3), &s(2)).is_zero());
        assert_eq!(higher_pushforward(&d(-3, -3), &s(0)).sorted_degrees(), degs(&[-3, -3]));
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology(&d(2, 2), &s(0)), CohomologyDims::new(9, 0, 0));
        for e in 0..4 {
            assert_eq!(cohomology(&d(0, 0), &s(e)), CohomologyDims::new(1, 0, 0));
            let k = s(e).canonical();
            assert_eq!(cohomology(&k, &s(e)), CohomologyDims::new(0, 0, 1));
        }
        assert_eq!(cohomology(&d(-2, -2), &s(0)), CohomologyDims::new(0, 0, 1));
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(euler_char(&d(2, 2), &s(0)), BigInt::from(9));
        assert_eq!(euler_char(&d(0, 0), &s(3)), BigInt::one());
        assert_eq!(euler_char(&s(1).canonical(), &s(1)), BigInt::one());
    }

    #[test]
    fn zero_sheaf_is_first_class() {
        let z = SplitBundle::zero();
        assert_eq!(z.h0(), BigInt::zero());
        assert_eq!(z.h1(), BigInt::zero());
        assert_eq!(z.euler(), BigInt::zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn split_bundle_counts() {
        let b = SplitBundle::from_degrees([-3, -1, 0, 2]);
        assert_eq!(b.h0(), BigInt::from(1 + 3));
        assert_eq!(b.h1(), BigInt::from(2));
        assert_eq!(b.euler(), b.h0() - b.h1());
        assert_eq!(b.rank(), BigInt::from(4));
    }

    #[test]
    fn huge_coefficients_do_not_overflow() {
        let big: BigInt = "1000000000000000000000000".parse().unwrap();
        let dc = DivisorClass { a: BigInt::from(2), b: big.clone() };
        let dims = cohomology(&dc, &s(1));
        assert_eq!(dims.euler(), euler_char(&dc, &s(1)));
        assert_eq!(dims.h0, 3 * &big + 3 - 3);
    }
}
