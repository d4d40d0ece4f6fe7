//! Resolution pairs and their arithmetic.
//!
//! A rank-`r` bundle on the plane that is not a direct sum of line bundles
//! is presented by a length-1 free resolution whose twists form the pair
//! `(a, b)`: `k` integers `a_1 <= ... <= a_k` and `r + k` integers
//! `b_1 <= ... <= b_{r+k}`. Everything here is exact integer arithmetic;
//! slope comparisons are done with cleared denominators.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

/// Rank and Chern classes `(r, c1, c2)` identifying a moduli space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChernData {
    pub r: i64,
    pub c1: i64,
    pub c2: i64,
}

impl ChernData {
    /// Requires `r >= 2`; the library targets the plane, where the rank of
    /// interest is at least the dimension.
    pub fn new(r: i64, c1: i64, c2: i64) -> Result<Self, PairError> {
        if r < 2 {
            return Err(PairError::RankTooSmall { r });
        }
        Ok(ChernData { r, c1, c2 })
    }

    /// The slope `c1 / r` as an exact rational.
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.c1, self.r)
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, c1={}, c2={})", self.r, self.c1, self.c2)
    }
}

/// Where a pair sits in the admissibility hierarchy.
///
/// Weak admissibility is `a_i > b_{2+i}` for all `i`, strong admissibility
/// is `a_i > b_{r+i}`. For `r = 2` the two notions coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityClass {
    NotWeaklyAdmissible,
    WeaklyAdmissibleOnly,
    StronglyAdmissible,
}

/// Stability of a rank-2 bundle, decided arithmetically from its pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairError {
    /// `b` must have exactly `r + k` entries.
    LengthMismatch {
        expected: usize,
        got: usize,
    },
    /// A sequence decreases at the given 0-based index.
    NotSorted {
        seq: &'static str,
        index: usize,
    },
    RankTooSmall {
        r: i64,
    },
    /// `k = 0` would describe a direct sum of line bundles, which has no
    /// length-1 resolution data of this form.
    EmptyA,
    /// Parity violation in `2 c2 = c1^2 + sum a^2 - sum b^2`; cannot happen
    /// for integer sequences but is checked rather than assumed.
    NonIntegralC2,
    WrongRank {
        r: i64,
    },
    /// The rank-2 classification is an if-and-only-if statement only for
    /// admissible pairs.
    NotAdmissible,
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::LengthMismatch { expected, got } => {
                write!(
                    f,
                    "length mismatch: b must have {expected} entries, got {got}"
                )
            }
            PairError::NotSorted { seq, index } => {
                write!(f, "sequence {seq} decreases at index {index}")
            }
            PairError::RankTooSmall { r } => write!(f, "rank must be at least 2, got {r}"),
            PairError::EmptyA => write!(f, "a must have at least one entry"),
            PairError::NonIntegralC2 => write!(f, "second Chern class is not an integer"),
            PairError::WrongRank { r } => write!(f, "operation requires rank 2, got {r}"),
            PairError::NotAdmissible => write!(f, "pair is not admissible"),
        }
    }
}

impl core::error::Error for PairError {}

/// The Betti data of a length-1 free resolution: nondecreasing twist
/// sequences `a` (length `k`) and `b` (length `r + k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    r: i64,
    a: Vec<i64>,
    b: Vec<i64>,
}

fn first_descent(xs: &[i64]) -> Option<usize> {
    xs.windows(2).position(|w| w[0] > w[1])
}

impl Pair {
    /// Validates raw sequences. Input must already be sorted: the
    /// index-based dimension formulas depend on the ordering, so unsorted
    /// input is rejected instead of silently re-sorted.
    pub fn new(r: i64, a: Vec<i64>, b: Vec<i64>) -> Result<Self, PairError> {
        if r < 2 {
            return Err(PairError::RankTooSmall { r });
        }
        if a.is_empty() {
            return Err(PairError::EmptyA);
        }
        let expected = a.len() + r as usize;
        if b.len() != expected {
            return Err(PairError::LengthMismatch {
                expected,
                got: b.len(),
            });
        }
        if let Some(index) = first_descent(&a) {
            return Err(PairError::NotSorted { seq: "a", index });
        }
        if let Some(index) = first_descent(&b) {
            return Err(PairError::NotSorted { seq: "b", index });
        }
        Ok(Pair { r, a, b })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// Number of entries of `a`.
    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub(crate) fn c1(&self) -> i64 {
        let sa: i64 = self.a.iter().sum();
        let sb: i64 = self.b.iter().sum();
        sa - sb
    }

    pub fn admissibility(&self) -> AdmissibilityClass {
        let r = self.r as usize;
        let strong = (0..self.k()).all(|i| self.a[i] > self.b[r + i]);
        if strong {
            return AdmissibilityClass::StronglyAdmissible;
        }
        // n = 2 on the plane, so the weak condition compares a_i with b_{2+i}.
        let weak = (0..self.k()).all(|i| self.a[i] > self.b[2 + i]);
        if weak {
            AdmissibilityClass::WeaklyAdmissibleOnly
        } else {
            AdmissibilityClass::NotWeaklyAdmissible
        }
    }

    pub fn is_strongly_admissible(&self) -> bool {
        self.admissibility() == AdmissibilityClass::StronglyAdmissible
    }

    /// True for both `WeaklyAdmissibleOnly` and `StronglyAdmissible`.
    pub fn is_weakly_admissible(&self) -> bool {
        self.admissibility() != AdmissibilityClass::NotWeaklyAdmissible
    }

    /// Chern classes of any bundle presented by this pair:
    /// `c1 = sum a - sum b` and `2 c2 - c1^2 = sum a^2 - sum b^2`.
    pub fn chern_classes(&self) -> Result<ChernData, PairError> {
        let c1 = self.c1();
        let sa2: i64 = self.a.iter().map(|&x| x * x).sum();
        let sb2: i64 = self.b.iter().map(|&x| x * x).sum();
        let twice_c2 = c1 * c1 + sa2 - sb2;
        if twice_c2 % 2 != 0 {
            return Err(PairError::NonIntegralC2);
        }
        Ok(ChernData {
            r: self.r,
            c1,
            c2: twice_c2 / 2,
        })
    }

    /// `max(a_k - 1, b_{r+k})`, the regularity of the resolution.
    pub fn regularity(&self) -> i64 {
        let a_last = *self.a.last().expect("a is nonempty");
        let b_last = *self.b.last().expect("b is nonempty");
        (a_last - 1).max(b_last)
    }

    /// The pair of the twisted bundle `E(t)`: every entry drops by `t`.
    pub fn twist(&self, t: i64) -> Pair {
        Pair {
            r: self.r,
            a: self.a.iter().map(|&x| x - t).collect(),
            b: self.b.iter().map(|&x| x - t).collect(),
        }
    }

    /// Necessary condition for (semi)stability in any rank: the pair must be
    /// strongly admissible and `b_1 > -mu` (`>=` for semistable), checked as
    /// `r b_1 + c1 > 0` in integers.
    pub fn stability_necessary(&self, strict: bool) -> bool {
        if !self.is_strongly_admissible() {
            return false;
        }
        let m = self.r * self.b[0] + self.c1();
        if strict {
            m > 0
        } else {
            m >= 0
        }
    }

    /// Full classification for rank 2, where the slope condition is an
    /// if-and-only-if: stable iff `2 b_1 + c1 > 0`, strictly semistable iff
    /// it is zero, unstable otherwise.
    pub fn rank2_stability(&self) -> Result<Rank2Stability, PairError> {
        if self.r != 2 {
            return Err(PairError::WrongRank { r: self.r });
        }
        if !self.is_strongly_admissible() {
            return Err(PairError::NotAdmissible);
        }
        let m = 2 * self.b[0] + self.c1();
        Ok(if m > 0 {
            Rank2Stability::Stable
        } else if m == 0 {
            Rank2Stability::StrictlySemistable
        } else {
            Rank2Stability::Unstable
        })
    }
}

impl fmt::Display for Pair {
    /// Textual form `r=2 a=[2,3] b=[1,1,1,2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} a=[", self.r)?;
        for (i, x) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "] b=[")?;
        for (i, x) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(r: i64, a: &[i64], b: &[i64]) -> Pair {
        Pair::new(r, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn validation_accepts_sorted_pairs() {
        assert!(Pair::new(2, vec![2], vec![1, 1, 1]).is_ok());
        assert!(Pair::new(2, vec![2, 3], vec![1, 1, 1, 2]).is_ok());
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert_eq!(
            Pair::new(2, vec![3, 2], vec![1, 1, 1, 2]).unwrap_err(),
            PairError::NotSorted { seq: "a", index: 0 }
        );
        assert_eq!(
            Pair::new(2, vec![2], vec![1, 1]).unwrap_err(),
            PairError::LengthMismatch {
                expected: 3,
                got: 2
            }
        );
        assert_eq!(
            Pair::new(1, vec![2], vec![1, 1, 1]).unwrap_err(),
            PairError::RankTooSmall { r: 1 }
        );
        assert_eq!(
            Pair::new(2, vec![], vec![1, 1]).unwrap_err(),
            PairError::EmptyA
        );
        assert_eq!(
            Pair::new(2, vec![2], vec![1, 0, 1]).unwrap_err(),
            PairError::NotSorted { seq: "b", index: 0 }
        );
    }

    #[test]
    fn admissibility_classification() {
        assert_eq!(
            pair(2, &[2], &[1, 1, 1]).admissibility(),
            AdmissibilityClass::StronglyAdmissible
        );
        // 2 > b_3 = 1 but 2 > b_4 = 2 fails, so only weakly admissible.
        assert_eq!(
            pair(3, &[2], &[1, 1, 1, 2]).admissibility(),
            AdmissibilityClass::WeaklyAdmissibleOnly
        );
        assert_eq!(
            pair(2, &[1], &[1, 1, 1]).admissibility(),
            AdmissibilityClass::NotWeaklyAdmissible
        );
    }

    #[test]
    fn chern_classes_examples() {
        let c = pair(2, &[2], &[1, 1, 1]).chern_classes().unwrap();
        assert_eq!((c.c1, c.c2), (-1, 1));
        let c = pair(2, &[2, 2], &[1, 1, 1, 1]).chern_classes().unwrap();
        assert_eq!((c.c1, c.c2), (0, 2));
        let c = pair(2, &[3], &[1, 1, 1]).chern_classes().unwrap();
        assert_eq!((c.c1, c.c2), (0, 3));
    }

    #[test]
    fn slope_is_exact() {
        assert_eq!(ChernData::new(2, -1, 1).unwrap().slope(), Ratio::new(-1, 2));
        assert_eq!(ChernData::new(3, 0, 2).unwrap().slope(), Ratio::new(0, 1));
        assert_eq!(ChernData::new(4, 2, 0).unwrap().slope(), Ratio::new(1, 2));
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(pair(2, &[2], &[1, 1, 1]).regularity(), 1);
        assert_eq!(pair(2, &[3], &[1, 1, 1]).regularity(), 2);
        assert_eq!(pair(2, &[2, 3], &[1, 1, 1, 2]).regularity(), 2);
    }

    #[test]
    fn stability_necessary_examples() {
        assert!(pair(2, &[2], &[1, 1, 1]).stability_necessary(true));
        assert!(!pair(2, &[1], &[1, 1, 1]).stability_necessary(true));
        // b_1 = 0, c1 = 0: the strict inequality fails.
        assert!(!pair(2, &[2, 2], &[0, 1, 1, 2]).stability_necessary(true));
    }

    #[test]
    fn rank2_classification() {
        assert_eq!(
            pair(2, &[2], &[1, 1, 1]).rank2_stability().unwrap(),
            Rank2Stability::Stable
        );
        assert_eq!(
            pair(2, &[2], &[0, 1, 1]).rank2_stability().unwrap(),
            Rank2Stability::StrictlySemistable
        );
        // Strongly admissible with 2 b_1 + c1 = -2: c1 = 2, b_1 = -2.
        assert_eq!(
            pair(2, &[2], &[-2, 1, 1]).rank2_stability().unwrap(),
            Rank2Stability::Unstable
        );
        assert_eq!(
            pair(3, &[2], &[1, 1, 1, 1]).rank2_stability().unwrap_err(),
            PairError::WrongRank { r: 3 }
        );
        // a_1 = b_3 breaks admissibility, and without it the slope test is
        // not a characterization: the same data also presents bundles whose
        // reduced resolution is stable.
        assert_eq!(
            pair(2, &[2], &[-1, 1, 2]).rank2_stability().unwrap_err(),
            PairError::NotAdmissible
        );
    }

    #[test]
    fn display_matches_textual_form() {
        let p = pair(2, &[2, 3], &[1, 1, 1, 2]);
        assert_eq!(alloc::format!("{p}"), "r=2 a=[2,3] b=[1,1,1,2]");
    }
}
