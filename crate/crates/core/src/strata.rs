//! Strata of the moduli space by resolution pair: dimension and codimension,
//! the natural-pair solver, bounded enumeration of admissible pairs, and the
//! uniqueness-of-codimension-zero certificate.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cohom::{diff2, h0_line};
use crate::pairs::{ChernData, Pair, PairError};

/// The triple `(s, k, alpha)` parametrizing natural pairs: `s` is the
/// regularity, `k >= 1`, and `-k + 1 <= alpha <= k + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaturalPairParams {
    pub s: i64,
    pub k: i64,
    pub alpha: i64,
}

/// One admissible pair together with its stratum data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    pub pair: Pair,
    pub chern: ChernData,
    pub dim: i64,
    pub codim: i64,
    /// `#{(i, j) : a_i = b_j}`.
    pub coincidences: i64,
    /// Nonnegative double-difference term of the codimension lower bound.
    pub dd_sum: i64,
    pub is_natural: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoNaturalPairReason {
    /// No integer fits the regularity characterization: `2 c2 - c1^2` lies
    /// in none of the (disjoint, adjacent) per-regularity intervals.
    NoRegularityParameter,
    KTooSmall {
        k: i64,
    },
    KNotIntegral,
    AlphaOutOfRange {
        alpha: i64,
        k: i64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum StrataError {
    /// The Chern data admits no natural pair; the moduli space is empty or
    /// not realized by these invariants.
    NoNaturalPair {
        chern: ChernData,
        reason: NoNaturalPairReason,
    },
    /// The natural pair exists but fails the stability inequality
    /// `r b_1 + c1 >= 1`, so no stable bundle realizes it and the
    /// uniqueness statement has nothing to certify.
    NaturalPairUnstable {
        chern: ChernData,
    },
    /// The natural pair exists but falls outside the searched box, so the
    /// enumeration would be incomplete exactly where it matters most.
    BoundsTooSmall {
        k_nat: i64,
        k_max: i64,
        s_nat: i64,
        reg_max: i64,
    },
    NotStronglyAdmissible,
    /// The double-difference sum came out negative, contradicting convexity;
    /// indicates an implementation bug, never expected to fire.
    IndexModelViolation {
        dd_sum: i64,
    },
    VerificationFailed(Box<UniquenessReport>),
    Pair(PairError),
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::NoNaturalPair { chern, reason } => {
                write!(f, "no natural pair for {chern}: ")?;
                match reason {
                    NoNaturalPairReason::NoRegularityParameter => {
                        write!(f, "no integer regularity parameter")
                    }
                    NoNaturalPairReason::KTooSmall { k } => write!(f, "k = {k} < 1"),
                    NoNaturalPairReason::KNotIntegral => write!(f, "k is not an integer"),
                    NoNaturalPairReason::AlphaOutOfRange { alpha, k } => {
                        write!(f, "alpha = {alpha} outside (-{k}, {k} + r]")
                    }
                }
            }
            StrataError::NaturalPairUnstable { chern } => {
                write!(
                    f,
                    "natural pair of {chern} fails r*b1 + c1 >= 1; moduli space is empty"
                )
            }
            StrataError::BoundsTooSmall {
                k_nat,
                k_max,
                s_nat,
                reg_max,
            } => write!(
                f,
                "bounds too small: natural pair has k = {k_nat} and regularity {s_nat}, \
                 searched only k_max = {k_max}, reg_max = {reg_max}"
            ),
            StrataError::NotStronglyAdmissible => {
                write!(f, "operation requires a strongly admissible pair")
            }
            StrataError::IndexModelViolation { dd_sum } => {
                write!(
                    f,
                    "double-difference sum {dd_sum} < 0 contradicts convexity"
                )
            }
            StrataError::VerificationFailed(report) => {
                write!(f, "verification failed for {}:", report.chern)?;
                for line in &report.failures {
                    write!(f, " {line};")?;
                }
                Ok(())
            }
            StrataError::Pair(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StrataError {}

impl From<PairError> for StrataError {
    fn from(e: PairError) -> Self {
        StrataError::Pair(e)
    }
}

/// Outcome of the codimension-zero uniqueness check over a searched box.
#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessReport {
    pub chern: ChernData,
    pub k_max: i64,
    pub reg_max: i64,
    pub records: Vec<StratumRecord>,
    pub codim_zero_count: usize,
    pub natural_matches: bool,
    pub failures: Vec<String>,
}

impl UniquenessReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `2 r c2 - (r - 1) c1^2 - r^2 + 1`, the dimension of the (smooth) moduli
/// space of stable bundles with the given invariants.
pub fn moduli_dimension(c: ChernData) -> i64 {
    2 * c.r * c.c2 - (c.r - 1) * c.c1 * c.c1 - c.r * c.r + 1
}

fn coincidence_count(p: &Pair) -> i64 {
    let mut n = 0;
    for &ai in p.a() {
        for &bj in p.b() {
            if ai == bj {
                n += 1;
            }
        }
    }
    n
}

/// Dimension of the stratum of bundles with pair `p`:
/// `hom(F1,F0) + hom(F0,F1) - end(F1) - end(F0) + 1 - #{a_i = b_j}`,
/// with `hom(O(-x), O(-y)) = h0(O(x - y))`.
pub fn stratum_dimension(p: &Pair) -> i64 {
    let a = p.a();
    let b = p.b();
    let hom_f1_f0: i64 = a
        .iter()
        .map(|&ai| b.iter().map(|&bj| h0_line(ai - bj)).sum::<i64>())
        .sum();
    let hom_f0_f1: i64 = b
        .iter()
        .map(|&bj| a.iter().map(|&ai| h0_line(bj - ai)).sum::<i64>())
        .sum();
    let end_f1: i64 = a
        .iter()
        .map(|&x| a.iter().map(|&y| h0_line(x - y)).sum::<i64>())
        .sum();
    let end_f0: i64 = b
        .iter()
        .map(|&x| b.iter().map(|&y| h0_line(x - y)).sum::<i64>())
        .sum();
    hom_f1_f0 + hom_f0_f1 - end_f1 - end_f0 + 1 - coincidence_count(p)
}

/// Codimension of the stratum inside its moduli space, as the difference of
/// the two closed-form dimensions.
pub fn stratum_codimension(p: &Pair) -> Result<i64, StrataError> {
    let chern = p.chern_classes()?;
    Ok(moduli_dimension(chern) - stratum_dimension(p))
}

/// The pair-computable part of the codimension: the coincidence count and
/// the double-difference sum over the trailing `k` entries of `b`. Both are
/// nonnegative and their sum is a certified lower bound for the codimension.
pub fn codim_lower_bound(p: &Pair) -> Result<(i64, i64), StrataError> {
    if !p.is_strongly_admissible() {
        return Err(StrataError::NotStronglyAdmissible);
    }
    let r = p.r() as usize;
    let k = p.k();
    let a = p.a();
    let b = p.b();
    let mut dd_sum = 0;
    for i in 0..k {
        for j in 0..k {
            dd_sum += diff2(b[r + i] - a[i], b[r + j] - a[j], a[i] - b[r + j]);
        }
    }
    if dd_sum < 0 {
        return Err(StrataError::IndexModelViolation { dd_sum });
    }
    Ok((coincidence_count(p), dd_sum))
}

/// True iff the pair is strongly admissible with `b_{r+k} < a_1` and
/// `a_k <= b_1 + 2`. Natural pairs are exactly the pairs of
/// codimension-zero strata.
pub fn is_natural(p: &Pair) -> bool {
    let a = p.a();
    let b = p.b();
    p.is_strongly_admissible() && b[b.len() - 1] < a[0] && a[a.len() - 1] <= b[0] + 2
}

// The regularity parameter s of Chern data (r, c1, c2) is characterized by
// membership of x = 2 c2 - c1^2 in the interval
//     I_s = [q(s) - c1 - r s + 1, q(s) + c1 + r s],   q(s) = r s^2 + 2 c1 s.
// Consecutive intervals are adjacent, lower(I_{s+1}) = upper(I_s) + 1, so at
// most one of them contains x. Equivalently s is the largest rho with
// lower(I_rho) <= x and the smallest rho with upper(I_rho) >= x.
fn interval_lower(c: ChernData, s: i64) -> i64 {
    c.r * s * s + 2 * c.c1 * s - c.c1 - c.r * s + 1
}

fn interval_upper(c: ChernData, s: i64) -> i64 {
    c.r * s * s + 2 * c.c1 * s + c.c1 + c.r * s
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// The unique natural pair for the given Chern data: the parameters
/// `(s, k, alpha)` and their expansion into a pair.
pub fn natural_pair(c: ChernData) -> Result<(NaturalPairParams, Pair), StrataError> {
    let x = 2 * c.c2 - c.c1 * c.c1;
    // lower(I_rho) is an upward parabola in rho, so its integer minimum sits
    // at floor or ceil of the real vertex (r - 2 c1) / (2 r); the solution
    // set {lower <= x} is an integer interval and s is its right endpoint.
    let v0 = (c.r - 2 * c.c1).div_euclid(2 * c.r);
    let mut s = if interval_lower(c, v0) <= x {
        v0
    } else if interval_lower(c, v0 + 1) <= x {
        v0 + 1
    } else {
        return Err(StrataError::NoNaturalPair {
            chern: c,
            reason: NoNaturalPairReason::NoRegularityParameter,
        });
    };
    while interval_lower(c, s + 1) <= x {
        s += 1;
    }
    // Cross-check against the dual characterization: s is where the upper
    // endpoints first reach x on the rising branch.
    assert!(
        interval_upper(c, s) >= x && interval_upper(c, s - 1) < x,
        "regularity characterizations disagree"
    );

    let alpha = x + c.r - c.r * s * s - 2 * c.c1 * s;
    let twice_k = c.r * s + c.c1 - c.r + alpha.abs();
    if twice_k % 2 != 0 {
        return Err(StrataError::NoNaturalPair {
            chern: c,
            reason: NoNaturalPairReason::KNotIntegral,
        });
    }
    let k = twice_k / 2;
    if k < 1 {
        return Err(StrataError::NoNaturalPair {
            chern: c,
            reason: NoNaturalPairReason::KTooSmall { k },
        });
    }
    if alpha <= -k || alpha > k + c.r {
        return Err(StrataError::NoNaturalPair {
            chern: c,
            reason: NoNaturalPairReason::AlphaOutOfRange { alpha, k },
        });
    }

    let (a, b) = expand_natural(c.r, s, k, alpha);
    let pair = Pair::new(c.r, a, b).expect("natural pair expansion is sorted and sized");
    let back = pair.chern_classes()?;
    assert_eq!(back, c, "natural pair fails the Chern round-trip");
    Ok((NaturalPairParams { s, k, alpha }, pair))
}

/// `alpha >= 0`: `a = (s+1)^k`, `b = (s-1)^{r+k-alpha} (s)^alpha`;
/// `alpha < 0`: `a = (s)^{-alpha} (s+1)^{k+alpha}`, `b = (s-1)^{r+k}`.
fn expand_natural(r: i64, s: i64, k: i64, alpha: i64) -> (Vec<i64>, Vec<i64>) {
    if alpha >= 0 {
        let a = vec![s + 1; k as usize];
        let mut b = vec![s - 1; (r + k - alpha) as usize];
        b.extend(core::iter::repeat_n(s, alpha as usize));
        (a, b)
    } else {
        let mut a = vec![s; (-alpha) as usize];
        a.extend(core::iter::repeat_n(s + 1, (k + alpha) as usize));
        let b = vec![s - 1; (r + k) as usize];
        (a, b)
    }
}

/// Smallest twist `t` with `h0(E(t)) > 0` for the general bundle: `s` when
/// `alpha = k + r`, else `s - 1`. Both the parameter test and the arithmetic
/// identity `r s^2 + 2 c1 s + r s = 2 c2 - c1^2 - c1` are evaluated and must
/// agree.
pub fn h0_threshold(c: ChernData) -> Result<i64, StrataError> {
    let (params, _) = natural_pair(c)?;
    let NaturalPairParams { s, k, alpha } = params;
    let by_alpha = alpha == k + c.r;
    let by_identity = c.r * s * s + 2 * c.c1 * s + c.r * s == 2 * c.c2 - c.c1 * c.c1 - c.c1;
    assert_eq!(
        by_alpha, by_identity,
        "h0 threshold routes disagree for {c}"
    );
    Ok(if by_alpha { s } else { s - 1 })
}

/// Enumerates every strongly admissible pair with the given Chern data,
/// `r b_1 + c1 >= 1`, `k <= k_max`, and regularity at most `reg_max`
/// (`b_{r+k} <= reg_max`, `a_i <= reg_max + 1`). Records are sorted by
/// `(codim, k, a, b)` and the output is deterministic.
///
/// Completeness holds only inside the searched box; the box must at least
/// contain the natural pair when one exists.
pub fn enumerate_strata(
    c: ChernData,
    k_max: i64,
    reg_max: i64,
) -> Result<Vec<StratumRecord>, StrataError> {
    match natural_pair(c) {
        Ok((params, _)) => {
            if params.k > k_max || params.s > reg_max {
                return Err(StrataError::BoundsTooSmall {
                    k_nat: params.k,
                    k_max,
                    s_nat: params.s,
                    reg_max,
                });
            }
        }
        Err(StrataError::NoNaturalPair { .. }) => {}
        Err(e) => return Err(e),
    }

    let x = 2 * c.c2 - c.c1 * c.c1;
    let b1_min = ceil_div(1 - c.c1, c.r);
    let mut records = Vec::new();
    for k in 1..=k_max {
        let mut b = Vec::with_capacity((c.r + k) as usize);
        extend_b(c, k, reg_max, b1_min, x, &mut b, &mut records)?;
    }
    records.sort_by(|u, v| {
        (u.codim, u.pair.k(), u.pair.a(), u.pair.b()).cmp(&(
            v.codim,
            v.pair.k(),
            v.pair.a(),
            v.pair.b(),
        ))
    });
    Ok(records)
}

fn extend_b(
    c: ChernData,
    k: i64,
    reg_max: i64,
    b1_min: i64,
    x: i64,
    b: &mut Vec<i64>,
    out: &mut Vec<StratumRecord>,
) -> Result<(), StrataError> {
    let len_b = (c.r + k) as usize;
    if b.len() == len_b {
        return collect_a(c, k, reg_max, x, b, out);
    }
    let lo = b.last().copied().unwrap_or(b1_min);
    let remaining = (len_b - b.len()) as i64;
    let partial: i64 = b.iter().sum();
    for v in lo..=reg_max {
        // sum(a) = c1 + sum(b) cannot exceed k (reg_max + 1); entries still
        // to come are at least v.
        if c.c1 + partial + remaining * v > k * (reg_max + 1) {
            break;
        }
        b.push(v);
        extend_b(c, k, reg_max, b1_min, x, b, out)?;
        b.pop();
    }
    Ok(())
}

struct ASearch<'b> {
    r: i64,
    k: usize,
    a_hi: i64,
    target_sum: i64,
    target_sq: i64,
    b: &'b [i64],
}

fn collect_a(
    c: ChernData,
    k: i64,
    reg_max: i64,
    x: i64,
    b: &[i64],
    out: &mut Vec<StratumRecord>,
) -> Result<(), StrataError> {
    let sb: i64 = b.iter().sum();
    let sb2: i64 = b.iter().map(|&v| v * v).sum();
    let search = ASearch {
        r: c.r,
        k: k as usize,
        a_hi: reg_max + 1,
        target_sum: c.c1 + sb,
        target_sq: x + sb2,
        b,
    };
    let mut a: Vec<i64> = Vec::with_capacity(search.k);
    descend_a(&search, &mut a, out)
}

fn descend_a(
    search: &ASearch<'_>,
    a: &mut Vec<i64>,
    out: &mut Vec<StratumRecord>,
) -> Result<(), StrataError> {
    let i = a.len();
    if i == search.k {
        let sum: i64 = a.iter().sum();
        let sq: i64 = a.iter().map(|&v| v * v).sum();
        if sum == search.target_sum && sq == search.target_sq {
            let pair = Pair::new(search.r, a.clone(), search.b.to_vec())
                .expect("enumerated sequences are sorted and sized");
            out.push(record_for(pair)?);
        }
        return Ok(());
    }
    let partial: i64 = a.iter().sum();
    let left = (search.k - i) as i64;
    // Strong admissibility a_i > b_{r+i} plus monotonicity.
    let lo = a
        .last()
        .copied()
        .unwrap_or(i64::MIN)
        .max(search.b[search.r as usize + i] + 1);
    for v in lo..=search.a_hi {
        if partial + left * v > search.target_sum {
            break; // entries are nondecreasing, larger v only overshoots
        }
        if partial + v + (left - 1) * search.a_hi < search.target_sum {
            continue; // cannot reach the target even with maximal entries
        }
        a.push(v);
        descend_a(search, a, out)?;
        a.pop();
    }
    Ok(())
}

fn record_for(pair: Pair) -> Result<StratumRecord, StrataError> {
    let chern = pair.chern_classes()?;
    let dim = stratum_dimension(&pair);
    let codim = moduli_dimension(chern) - dim;
    let (coincidences, dd_sum) = codim_lower_bound(&pair)?;
    let natural = is_natural(&pair);
    Ok(StratumRecord {
        pair,
        chern,
        dim,
        codim,
        coincidences,
        dd_sum,
        is_natural: natural,
    })
}

/// Certifies, within the searched box, that exactly one stratum has
/// codimension zero, that it is the natural pair, and that every record
/// respects the nonnegativity and lower-bound constraints.
pub fn verify_uniqueness(
    c: ChernData,
    k_max: i64,
    reg_max: i64,
) -> Result<UniquenessReport, StrataError> {
    let (_, nat) = natural_pair(c)?;
    if !nat.stability_necessary(true) {
        return Err(StrataError::NaturalPairUnstable { chern: c });
    }
    let records = enumerate_strata(c, k_max, reg_max)?;
    let mut failures: Vec<String> = Vec::new();
    if records.is_empty() {
        failures.push(String::from(
            "no admissible pairs found in the searched box",
        ));
    }
    let codim_zero_count = records.iter().filter(|r| r.codim == 0).count();
    if codim_zero_count != 1 {
        failures.push(format!(
            "expected exactly one codimension-0 stratum, found {codim_zero_count}"
        ));
    }
    let natural_matches = records
        .iter()
        .filter(|r| r.codim == 0)
        .all(|r| r.pair == nat)
        && codim_zero_count == 1;
    if codim_zero_count == 1 && !natural_matches {
        failures.push(format!(
            "codimension-0 pair differs from the natural pair {nat}"
        ));
    }
    for rec in &records {
        if rec.codim < 0 {
            failures.push(format!(
                "negative codimension {} for {}",
                rec.codim, rec.pair
            ));
        }
        if rec.codim < rec.coincidences + rec.dd_sum {
            failures.push(format!(
                "codimension {} below certified lower bound {} for {}",
                rec.codim,
                rec.coincidences + rec.dd_sum,
                rec.pair
            ));
        }
    }
    let report = UniquenessReport {
        chern: c,
        k_max,
        reg_max,
        records,
        codim_zero_count,
        natural_matches,
        failures,
    };
    if report.pass() {
        Ok(report)
    } else {
        Err(StrataError::VerificationFailed(Box::new(report)))
    }
}
