//! Explicit banded presentation matrices over a prime field.
//!
//! A strongly admissible pair `(a, b)` yields an `(r+k) x k` matrix whose
//! column `j` carries powers of the linear forms `w_0 .. w_r` in rows
//! `j .. j+r`: entry `(i, j) = w_{i-j}^{a_j - b_i}`. Its cokernel is locally
//! free exactly when the matrix has rank `k` at every point of the plane,
//! which is checked deterministically at the pairwise intersections of the
//! forms (the only candidates for a rank drop of this shape) plus seeded
//! random points. Entries are never expanded symbolically, only evaluated.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::pairs::Pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    /// Full band of `r + 1` general-position forms.
    Strong,
    /// Coordinate forms padded with zeros; only the first three diagonals
    /// carry entries. Works for any weakly admissible pair.
    Weak,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResolutionError {
    NotAdmissibleForMode {
        mode: BuildMode,
    },
    DegenerateForms {
        reason: &'static str,
    },
    FormCountMismatch {
        expected: usize,
        got: usize,
    },
    InvalidModulus {
        p: u64,
    },
    InvalidEntry {
        reason: &'static str,
    },
    /// Some evaluated point had rank below `k`; the report carries the
    /// offending points.
    RankDeficient(Box<RankReport>),
}

impl fmt::Display for ResolutionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionError::NotAdmissibleForMode { mode } => {
                write!(f, "pair is not admissible for {mode:?} mode")
            }
            ResolutionError::DegenerateForms { reason } => write!(f, "degenerate forms: {reason}"),
            ResolutionError::FormCountMismatch { expected, got } => {
                write!(f, "form system has {got} forms, pair needs {expected}")
            }
            ResolutionError::InvalidModulus { p } => {
                write!(f, "modulus {p} is not a prime below 2^32")
            }
            ResolutionError::InvalidEntry { reason } => write!(f, "invalid entry: {reason}"),
            ResolutionError::RankDeficient(report) => write!(
                f,
                "rank dropped to {} (expected {}) at {} of {} points",
                report.min_rank,
                report.expected_rank,
                report.deficient.len(),
                report.points
            ),
        }
    }
}

impl core::error::Error for ResolutionError {}

// ---------------------------------------------------------------------------
// Arithmetic mod p.

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    // Trial division is fine for the supported range.
    if p >= (1 << 32) {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Row-reduction rank of a dense matrix over F_p.
#[allow(clippy::needless_range_loop)] // two rows of `m` are indexed at once
fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p);
        for r in rank + 1..rows {
            if m[r][col] == 0 {
                continue;
            }
            let factor = mul_mod(m[r][col], inv, p);
            for c in col..cols {
                let sub = mul_mod(factor, m[rank][c], p);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// splitmix64; fixed so that reports are bit-identical for a given seed.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

// ---------------------------------------------------------------------------
// Form systems.

/// `r + 1` linear forms on the plane with coefficients in F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSystem {
    p: u64,
    coeffs: Vec<[u64; 3]>,
}

impl FormSystem {
    /// Moment-curve forms `(1, t, t^2)` for `t = 0 .. r`: every 3x3 minor is
    /// a Vandermonde determinant, hence nonzero whenever `p > r`.
    pub fn general_position(r: i64, p: u64) -> Result<Self, ResolutionError> {
        if !is_prime(p) {
            return Err(ResolutionError::InvalidModulus { p });
        }
        if r < 2 || (r as u64) >= p {
            return Err(ResolutionError::DegenerateForms {
                reason: "need r >= 2 and p > r for distinct moment-curve parameters",
            });
        }
        let coeffs = (0..=r as u64)
            .map(|t| [1, t % p, mul_mod(t, t, p)])
            .collect();
        let fs = FormSystem { p, coeffs };
        debug_assert!(fs.in_general_position());
        Ok(fs)
    }

    /// Arbitrary coefficient rows, validated to be in general position
    /// (every three forms linearly independent).
    pub fn from_coeffs(coeffs: Vec<[u64; 3]>, p: u64) -> Result<Self, ResolutionError> {
        if !is_prime(p) {
            return Err(ResolutionError::InvalidModulus { p });
        }
        if coeffs.len() < 3 {
            return Err(ResolutionError::DegenerateForms {
                reason: "need at least 3 forms",
            });
        }
        let coeffs: Vec<[u64; 3]> = coeffs
            .into_iter()
            .map(|c| [c[0] % p, c[1] % p, c[2] % p])
            .collect();
        let fs = FormSystem { p, coeffs };
        if !fs.in_general_position() {
            return Err(ResolutionError::DegenerateForms {
                reason: "some 3x3 coefficient minor vanishes",
            });
        }
        Ok(fs)
    }

    /// The coordinate forms `x0, x1, x2` padded with `r - 2` zero forms.
    pub fn weak(r: i64, p: u64) -> Result<Self, ResolutionError> {
        if !is_prime(p) {
            return Err(ResolutionError::InvalidModulus { p });
        }
        if r < 2 {
            return Err(ResolutionError::DegenerateForms {
                reason: "need r >= 2",
            });
        }
        let mut coeffs = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        coeffs.resize(r as usize + 1, [0, 0, 0]);
        Ok(FormSystem { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of forms minus one (matches the rank of the pairs it serves).
    pub fn r(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[[u64; 3]] {
        &self.coeffs
    }

    pub fn eval(&self, form: usize, pt: [u64; 3]) -> u64 {
        let c = self.coeffs[form];
        (mul_mod(c[0], pt[0], self.p) + mul_mod(c[1], pt[1], self.p) + mul_mod(c[2], pt[2], self.p))
            % self.p
    }

    fn minor(&self, i: usize, j: usize, k: usize) -> u64 {
        let p = self.p;
        let (a, b, c) = (self.coeffs[i], self.coeffs[j], self.coeffs[k]);
        let m0 = mul_mod(
            a[0],
            (mul_mod(b[1], c[2], p) + p - mul_mod(b[2], c[1], p)) % p,
            p,
        );
        let m1 = mul_mod(
            a[1],
            (mul_mod(b[0], c[2], p) + p - mul_mod(b[2], c[0], p)) % p,
            p,
        );
        let m2 = mul_mod(
            a[2],
            (mul_mod(b[0], c[1], p) + p - mul_mod(b[1], c[0], p)) % p,
            p,
        );
        ((m0 + p - m1) % p + m2) % p
    }

    pub fn in_general_position(&self) -> bool {
        let n = self.coeffs.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if self.minor(i, j, k) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn is_weak_shape(&self) -> bool {
        self.coeffs.len() >= 3
            && self.coeffs[0] == [1, 0, 0]
            && self.coeffs[1] == [0, 1, 0]
            && self.coeffs[2] == [0, 0, 1]
            && self.coeffs[3..].iter().all(|c| *c == [0, 0, 0])
    }

    /// Indices of forms with a nonzero coefficient vector.
    fn active(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&l| self.coeffs[l] != [0, 0, 0])
            .collect()
    }

    /// The unique intersection point of two independent forms, as the
    /// cross product of their coefficient rows.
    fn intersection(&self, l: usize, m: usize) -> Option<[u64; 3]> {
        let p = self.p;
        let (a, b) = (self.coeffs[l], self.coeffs[m]);
        let pt = [
            (mul_mod(a[1], b[2], p) + p - mul_mod(a[2], b[1], p)) % p,
            (mul_mod(a[2], b[0], p) + p - mul_mod(a[0], b[2], p)) % p,
            (mul_mod(a[0], b[1], p) + p - mul_mod(a[1], b[0], p)) % p,
        ];
        if pt == [0, 0, 0] {
            None
        } else {
            Some(normalize_point(pt, p))
        }
    }
}

/// Scale so the first nonzero coordinate is 1: a canonical projective
/// representative, which keeps reports deterministic.
fn normalize_point(pt: [u64; 3], p: u64) -> [u64; 3] {
    let lead = pt.iter().copied().find(|&x| x != 0).expect("nonzero point");
    let inv = inv_mod(lead, p);
    [
        mul_mod(pt[0], inv, p),
        mul_mod(pt[1], inv, p),
        mul_mod(pt[2], inv, p),
    ]
}

fn random_point(rng: &mut SplitMix64, p: u64) -> [u64; 3] {
    loop {
        let pt = [rng.next_u64() % p, rng.next_u64() % p, rng.next_u64() % p];
        if pt != [0, 0, 0] {
            return normalize_point(pt, p);
        }
    }
}

// ---------------------------------------------------------------------------
// Banded matrices.

/// One stored entry `w_form^exp` at `(row, col)`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandEntry {
    pub row: usize,
    pub col: usize,
    pub form: usize,
    pub exp: i64,
}

/// An `(r+k) x k` matrix of form powers presenting the cokernel bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedMatrix {
    pair: Pair,
    forms: FormSystem,
    entries: Vec<BandEntry>,
}

/// Builds the banded matrix of a pair. Strong mode needs a strongly
/// admissible pair and general-position forms; weak mode accepts any weakly
/// admissible pair but requires the zero-padded coordinate system.
pub fn build_banded(
    pair: &Pair,
    forms: &FormSystem,
    mode: BuildMode,
) -> Result<BandedMatrix, ResolutionError> {
    let r = pair.r();
    if forms.r() != r {
        return Err(ResolutionError::FormCountMismatch {
            expected: r as usize + 1,
            got: forms.coeffs.len(),
        });
    }
    let band = match mode {
        BuildMode::Strong => {
            if !pair.is_strongly_admissible() {
                return Err(ResolutionError::NotAdmissibleForMode { mode });
            }
            if !forms.in_general_position() {
                return Err(ResolutionError::DegenerateForms {
                    reason: "strong mode requires general-position forms",
                });
            }
            r as usize
        }
        BuildMode::Weak => {
            if !pair.is_weakly_admissible() {
                return Err(ResolutionError::NotAdmissibleForMode { mode });
            }
            if !forms.is_weak_shape() {
                return Err(ResolutionError::DegenerateForms {
                    reason: "weak mode requires coordinate forms padded with zeros",
                });
            }
            2
        }
    };

    let k = pair.k();
    let rows = r as usize + k;
    let mut entries = Vec::new();
    for row in 0..rows {
        for col in 0..k {
            if row < col || row > col + band {
                continue;
            }
            let exp = pair.a()[col] - pair.b()[row];
            debug_assert!(exp >= 1, "admissibility makes every band degree positive");
            entries.push(BandEntry {
                row,
                col,
                form: row - col,
                exp,
            });
        }
    }
    Ok(BandedMatrix {
        pair: pair.clone(),
        forms: forms.clone(),
        entries,
    })
}

impl BandedMatrix {
    /// Assembles a matrix from explicit entries; intended for probing
    /// alternative layouts (the tests use it to show that keeping only the
    /// two corner diagonals drops rank).
    pub fn from_entries(
        pair: &Pair,
        forms: &FormSystem,
        mut entries: Vec<BandEntry>,
    ) -> Result<Self, ResolutionError> {
        let rows = pair.r() as usize + pair.k();
        for e in &entries {
            if e.row >= rows || e.col >= pair.k() {
                return Err(ResolutionError::InvalidEntry {
                    reason: "position out of range",
                });
            }
            if e.form >= forms.coeffs.len() {
                return Err(ResolutionError::InvalidEntry {
                    reason: "form index out of range",
                });
            }
            if e.exp < 0 {
                return Err(ResolutionError::InvalidEntry {
                    reason: "negative exponent",
                });
            }
        }
        entries.sort_by_key(|e| (e.row, e.col));
        if entries
            .windows(2)
            .any(|w| (w[0].row, w[0].col) == (w[1].row, w[1].col))
        {
            return Err(ResolutionError::InvalidEntry {
                reason: "duplicate position",
            });
        }
        Ok(BandedMatrix {
            pair: pair.clone(),
            forms: forms.clone(),
            entries,
        })
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn forms(&self) -> &FormSystem {
        &self.forms
    }

    /// Entries sorted by `(row, col)`.
    pub fn entries(&self) -> &[BandEntry] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.pair.r() as usize + self.pair.k()
    }

    pub fn cols(&self) -> usize {
        self.pair.k()
    }

    /// Minimality of the presented resolution: the pair is weakly
    /// admissible and no stored entry is a constant (exponent zero).
    pub fn check_minimality(&self) -> bool {
        self.pair.is_weakly_admissible() && self.entries.iter().all(|e| e.exp >= 1)
    }

    /// On-band degrees `a_j - b_i`, with `None` off the band.
    pub fn degree_table(&self) -> DegreeTable {
        let rows = self.rows();
        let cols = self.cols();
        let band = self.pair.r() as usize;
        let mut degrees = vec![None; rows * cols];
        for row in 0..rows {
            for col in 0..cols {
                if row >= col && row <= col + band {
                    degrees[row * cols + col] = Some(self.pair.a()[col] - self.pair.b()[row]);
                }
            }
        }
        DegreeTable {
            rows,
            cols,
            degrees,
        }
    }

    /// Dense evaluation at a point of the plane over F_p.
    pub fn evaluate_at(&self, pt: [u64; 3]) -> Vec<Vec<u64>> {
        let p = self.forms.p;
        let mut m = vec![vec![0u64; self.cols()]; self.rows()];
        for e in &self.entries {
            m[e.row][e.col] = pow_mod(self.forms.eval(e.form, pt), e.exp as u64, p);
        }
        m
    }

    pub fn rank_at(&self, pt: [u64; 3]) -> usize {
        rank_mod_p(self.evaluate_at(pt), self.forms.p)
    }
}

/// Degree layout of a banded matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    rows: usize,
    cols: usize,
    degrees: Vec<Option<i64>>,
}

impl DegreeTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Option<i64> {
        self.degrees[row * self.cols + col]
    }

    /// On-band positions whose degree is not positive; any hit means the
    /// matrix cannot be part of a minimal resolution.
    pub fn nonpositive(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for row in 0..self.rows {
            for col in 0..self.cols {
                if let Some(d) = self.get(row, col) {
                    if d <= 0 {
                        out.push((row, col, d));
                    }
                }
            }
        }
        out
    }
}

/// Pointwise rank certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub p: u64,
    pub seed: u64,
    /// Total points evaluated: random samples plus the rank-critical locus.
    pub points: usize,
    pub expected_rank: usize,
    pub min_rank: usize,
    pub pass: bool,
    /// Points where the rank dropped, in evaluation order.
    pub deficient: Vec<([u64; 3], usize)>,
}

/// Evaluates the matrix at `n_samples` seeded random points of the plane
/// plus every pairwise intersection of the active forms, and checks that the
/// rank equals `k` everywhere. Identical inputs produce identical reports.
pub fn verify_pointwise_rank(
    matrix: &BandedMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<RankReport, ResolutionError> {
    let p = matrix.forms.p;
    let k = matrix.cols();
    let mut points = Vec::with_capacity(n_samples + 8);
    let mut rng = SplitMix64::new(seed);
    for _ in 0..n_samples {
        points.push(random_point(&mut rng, p));
    }
    // The critical locus: where two forms vanish simultaneously.
    let active = matrix.forms.active();
    for (idx, &l) in active.iter().enumerate() {
        for &m in &active[idx + 1..] {
            let pt = matrix
                .forms
                .intersection(l, m)
                .ok_or(ResolutionError::DegenerateForms {
                    reason: "parallel active forms",
                })?;
            points.push(pt);
        }
    }

    let mut min_rank = k;
    let mut deficient = Vec::new();
    for &pt in &points {
        let rank = matrix.rank_at(pt);
        if rank < k {
            deficient.push((pt, rank));
            min_rank = min_rank.min(rank);
        }
    }
    let report = RankReport {
        p,
        seed,
        points: points.len(),
        expected_rank: k,
        min_rank,
        pass: deficient.is_empty(),
        deficient,
    };
    if report.pass {
        Ok(report)
    } else {
        Err(ResolutionError::RankDeficient(Box::new(report)))
    }
}
