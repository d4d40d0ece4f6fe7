//! Wire formats: JSON records and CSV rows for every stream the CLI emits.
//! JSON field order is the struct field order; output bytes are stable for
//! identical inputs.

use p2res_core::cohom::CohomologyRow;
use p2res_core::pairs::{Pair, PairError};
use p2res_core::resolution::RankReport;
use p2res_core::strata::StratumRecord;
use serde::{Deserialize, Serialize};

/// `{"r":2,"a":[2,3],"b":[1,1,1,2]}`
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PairJson {
    pub r: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl From<&Pair> for PairJson {
    fn from(p: &Pair) -> Self {
        PairJson {
            r: p.r(),
            a: p.a().to_vec(),
            b: p.b().to_vec(),
        }
    }
}

impl TryFrom<PairJson> for Pair {
    type Error = PairError;

    fn try_from(raw: PairJson) -> Result<Self, Self::Error> {
        Pair::new(raw.r, raw.a, raw.b)
    }
}

/// Scalar result of the natural-pair solver.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct NaturalPairJson {
    pub s: i64,
    pub k: i64,
    pub alpha: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub dim: i64,
}

/// One stratum record, one line per record in JSON-lines streams.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct StratumJson {
    pub pair: PairJson,
    pub c1: i64,
    pub c2: i64,
    pub r: i64,
    pub dim: i64,
    pub codim: i64,
    pub coincidences: i64,
    pub dd_sum: i64,
    pub natural: bool,
}

impl From<&StratumRecord> for StratumJson {
    fn from(rec: &StratumRecord) -> Self {
        StratumJson {
            pair: PairJson::from(&rec.pair),
            c1: rec.chern.c1,
            c2: rec.chern.c2,
            r: rec.chern.r,
            dim: rec.dim,
            codim: rec.codim,
            coincidences: rec.coincidences,
            dd_sum: rec.dd_sum,
            natural: rec.is_natural,
        }
    }
}

pub const STRATUM_CSV_HEADER: &str = "pair,c1,c2,r,dim,codim,coincidences,dd_sum,natural";

/// CSV row with the pair in its textual form, quoted because it contains
/// commas.
pub fn stratum_csv_row(rec: &StratumRecord) -> String {
    format!(
        "\"{}\",{},{},{},{},{},{},{},{}",
        rec.pair,
        rec.chern.c1,
        rec.chern.c2,
        rec.chern.r,
        rec.dim,
        rec.codim,
        rec.coincidences,
        rec.dd_sum,
        rec.is_natural
    )
}

/// One twist row. `generic` marks h1/h2 as generic-model values: exact for
/// the general element of the full moduli space (always the case for
/// natural pairs), a model value otherwise.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CohomRowJson {
    pub t: i64,
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
    pub chi: i64,
    pub generic: bool,
}

impl CohomRowJson {
    pub fn new(row: &CohomologyRow, generic: bool) -> Self {
        CohomRowJson {
            t: row.t,
            h0: row.h0,
            h1: row.h1,
            h2: row.h2,
            chi: row.chi,
            generic,
        }
    }
}

pub const COHOM_CSV_HEADER: &str = "t,h0,h1,h2,chi";

pub fn cohom_csv_row(row: &CohomologyRow) -> String {
    format!("{},{},{},{},{}", row.t, row.h0, row.h1, row.h2, row.chi)
}

/// `{"p":65537,"seed":0,"points":203,"min_rank":1,"pass":true}`
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RankReportJson {
    pub p: u64,
    pub seed: u64,
    pub points: usize,
    pub min_rank: usize,
    pub pass: bool,
}

impl From<&RankReport> for RankReportJson {
    fn from(r: &RankReport) -> Self {
        RankReportJson {
            p: r.p,
            seed: r.seed,
            points: r.points,
            min_rank: r.min_rank,
            pass: r.pass,
        }
    }
}

/// Per-datum verification outcome. Count fields are absent when the datum
/// was skipped before enumeration (no natural pair, or none realized by
/// stable bundles).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct VerifyJson {
    pub r: i64,
    pub c1: i64,
    pub c2: i64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codim_zero: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub natural_matches: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
}
