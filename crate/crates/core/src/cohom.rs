//! Cohomology of line bundles on the plane and of bundles presented by a
//! pair: the function `A(t) = h2(O(t))`, its finite differences, Euler
//! characteristics, and the cohomology table of the general element.

use alloc::vec::Vec;
use core::fmt;

use crate::pairs::Pair;

/// `h0(O(d)) = (d+1)(d+2)/2` for `d >= 0`, zero otherwise.
pub fn h0_line(d: i64) -> i64 {
    if d >= 0 {
        (d + 1) * (d + 2) / 2
    } else {
        0
    }
}

/// `A(t) = h2(O(t)) = h0(O(-t-3))` by Serre duality.
pub fn h2_line(t: i64) -> i64 {
    h0_line(-t - 3)
}

/// `chi(O(d)) = (d+1)(d+2)/2` as a signed integer, valid for every `d`.
pub fn chi_line(d: i64) -> i64 {
    (d + 1) * (d + 2) / 2
}

/// First finite difference `(D_u A)(t) = A(t+u) - A(t)`.
pub fn diff1(u: i64, t: i64) -> i64 {
    h2_line(t + u) - h2_line(t)
}

/// Second finite difference `(D_v D_u A)(t) = (D_u A)(t+v) - (D_u A)(t)`.
pub fn diff2(v: i64, u: i64, t: i64) -> i64 {
    diff1(u, t + v) - diff1(u, t)
}

/// `chi(E(t))` by additivity over the resolution.
pub fn euler_char(pair: &Pair, t: i64) -> i64 {
    let from_b: i64 = pair.b().iter().map(|&b| chi_line(t - b)).sum();
    let from_a: i64 = pair.a().iter().map(|&a| chi_line(t - a)).sum();
    from_b - from_a
}

/// One twist of a cohomology table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub t: i64,
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
    pub chi: i64,
}

/// Cohomology of the general element over a twist window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub rows: Vec<CohomologyRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomError {
    /// The section count came out negative: no actual bundle has this pair
    /// under the model, so the value is surfaced instead of clamped.
    NegativeH0 { t: i64, h0: i64 },
}

impl fmt::Display for CohomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomError::NegativeH0 { t, h0 } => {
                write!(
                    f,
                    "computed h0 = {h0} < 0 at twist {t}: pair presents no bundle"
                )
            }
        }
    }
}

impl core::error::Error for CohomError {}

/// Cohomology table of the general bundle with the given pair, one row per
/// twist in `[t_min, t_max]`.
///
/// `h0` is exact for every bundle with this pair: sections are left exact
/// and line bundles on the plane have no `h1`. `h1` and `h2` assume the
/// connecting map `H2(F_1(t)) -> H2(F_0(t))` has maximal rank, which holds
/// for the general element; `chi` is the Euler characteristic and satisfies
/// `chi = h0 - h1 + h2` on every row regardless of that assumption.
pub fn general_cohomology_table(
    pair: &Pair,
    t_min: i64,
    t_max: i64,
) -> Result<CohomologyTable, CohomError> {
    let mut rows = Vec::new();
    for t in t_min..=t_max {
        let h0: i64 = pair.b().iter().map(|&b| h0_line(t - b)).sum::<i64>()
            - pair.a().iter().map(|&a| h0_line(t - a)).sum::<i64>();
        if h0 < 0 {
            return Err(CohomError::NegativeH0 { t, h0 });
        }
        let h2_f1: i64 = pair.a().iter().map(|&a| h2_line(t - a)).sum();
        let h2_f0: i64 = pair.b().iter().map(|&b| h2_line(t - b)).sum();
        let h1 = (h2_f1 - h2_f0).max(0);
        let h2 = (h2_f0 - h2_f1).max(0);
        rows.push(CohomologyRow {
            t,
            h0,
            h1,
            h2,
            chi: euler_char(pair, t),
        });
    }
    Ok(CohomologyTable { rows })
}
