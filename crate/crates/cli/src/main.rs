//! Command-line front end: natural pairs, stratum enumeration, cohomology
//! tables, banded-matrix certificates, and grid verification.
//!
//! Exit codes: 0 success, 1 usage error, 2 no natural pair, 3 bounds too
//! small, 4 verification failure. Data goes to stdout (JSON lines or CSV,
//! UTF-8, LF); diagnostics go to stderr. Identical invocations produce
//! byte-identical output.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use p2res_core::cohom::{general_cohomology_table, CohomError};
use p2res_core::pairs::{ChernData, Pair, PairError};
use p2res_core::resolution::{
    build_banded, verify_pointwise_rank, BuildMode, FormSystem, ResolutionError,
};
use p2res_core::strata::{
    enumerate_strata, is_natural, moduli_dimension, natural_pair, verify_uniqueness, StrataError,
};

use p2res_cli::format::{
    cohom_csv_row, stratum_csv_row, CohomRowJson, NaturalPairJson, PairJson, RankReportJson,
    StratumJson, VerifyJson, COHOM_CSV_HEADER, STRATUM_CSV_HEADER,
};

#[derive(Parser)]
#[command(
    name = "p2res",
    version,
    about = "Stratification of moduli of stable bundles on the projective plane by resolution data"
)]
struct Cli {
    /// Print run metadata to stderr (stdout stays byte-stable)
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the unique natural pair of the given Chern data
    NaturalPair {
        #[command(flatten)]
        chern: ChernArgs,
    },
    /// Enumerate admissible pairs with their stratum dimensions
    Strata {
        #[command(flatten)]
        chern: ChernArgs,
        /// Largest k searched (default: k of the natural pair + 3)
        #[arg(long = "k-max")]
        k_max: Option<i64>,
        /// Largest regularity searched (default: s of the natural pair + 2)
        #[arg(long = "reg-max")]
        reg_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cohomology table of the general bundle
    Cohomology {
        #[command(flatten)]
        target: TargetArgs,
        /// First twist (default: regularity - 6)
        #[arg(long = "t-min", allow_negative_numbers = true)]
        t_min: Option<i64>,
        /// Last twist (default: regularity + 4)
        #[arg(long = "t-max", allow_negative_numbers = true)]
        t_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the banded presentation matrix and certify its rank pointwise
    Resolve {
        #[command(flatten)]
        target: TargetArgs,
        /// Seed for the random sample points
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random sample points
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Prime modulus of the evaluation field
        #[arg(long, default_value_t = 65537)]
        prime: u64,
    },
    /// Check codimension-zero uniqueness over a grid of Chern data
    Verify {
        /// Ranks: '2', '2,3' or '2..4'
        #[arg(short = 'r', long = "rank", allow_hyphen_values = true)]
        rank: String,
        /// c1 values: '-1,0' or '-3..0'
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        /// c2 values: '1..4'
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
        /// Override the per-datum default k bound (natural k + 3)
        #[arg(long = "k-max")]
        k_max: Option<i64>,
        /// Override the per-datum default regularity bound (natural s + 2)
        #[arg(long = "reg-max")]
        reg_max: Option<i64>,
    },
}

#[derive(Args, Clone, Copy, Debug)]
struct ChernArgs {
    /// Rank (at least 2)
    #[arg(short = 'r', long = "rank", allow_negative_numbers = true)]
    rank: i64,
    /// First Chern class
    #[arg(long, allow_negative_numbers = true)]
    c1: i64,
    /// Second Chern class
    #[arg(long, allow_negative_numbers = true)]
    c2: i64,
}

impl ChernArgs {
    fn chern(&self) -> Result<ChernData, CliError> {
        ChernData::new(self.rank, self.c1, self.c2).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Either explicit Chern data (the natural pair is used) or a literal pair.
#[derive(Args, Clone, Debug)]
struct TargetArgs {
    /// Rank (at least 2)
    #[arg(short = 'r', long = "rank", allow_negative_numbers = true)]
    rank: Option<i64>,
    /// First Chern class
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<i64>,
    /// Second Chern class
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<i64>,
    /// Pair as JSON with keys r, a, b
    #[arg(
        long,
        conflicts_with_all = ["rank", "c1", "c2"],
        long_help = "Pair as JSON, e.g. '{\"r\":2,\"a\":[2,3],\"b\":[1,1,1,2]}'"
    )]
    pair: Option<String>,
}

impl TargetArgs {
    fn resolve_pair(&self) -> Result<Pair, CliError> {
        if let Some(raw) = &self.pair {
            let parsed: PairJson = serde_json::from_str(raw)
                .map_err(|e| CliError::Usage(format!("invalid pair JSON: {e}")))?;
            return Pair::try_from(parsed)
                .map_err(|e| CliError::Usage(format!("invalid pair: {e}")));
        }
        match (self.rank, self.c1, self.c2) {
            (Some(r), Some(c1), Some(c2)) => {
                let c = ChernData::new(r, c1, c2).map_err(|e| CliError::Usage(e.to_string()))?;
                let (_, pair) = natural_pair(c)?;
                Ok(pair)
            }
            _ => Err(CliError::Usage(String::from(
                "provide either --pair or all of --rank, --c1, --c2",
            ))),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    NoNaturalPair(String),
    Bounds(String),
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::NoNaturalPair(_) => 2,
            CliError::Bounds(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::NoNaturalPair(m)
            | CliError::Bounds(m)
            | CliError::Verification(m) => m,
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match &e {
            StrataError::NoNaturalPair { .. } => CliError::NoNaturalPair(e.to_string()),
            StrataError::BoundsTooSmall { .. } => CliError::Bounds(e.to_string()),
            StrataError::VerificationFailed(_) | StrataError::NaturalPairUnstable { .. } => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        match &e {
            ResolutionError::RankDeficient(_) => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PairError> for CliError {
    fn from(e: PairError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CohomError> for CliError {
    fn from(e: CohomError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serialization of plain records cannot fail")
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let verbose = cli.verbose;
    match cli.cmd {
        Cmd::NaturalPair { chern } => cmd_natural_pair(chern.chern()?),
        Cmd::Strata {
            chern,
            k_max,
            reg_max,
            format,
        } => cmd_strata(chern.chern()?, k_max, reg_max, format, verbose),
        Cmd::Cohomology {
            target,
            t_min,
            t_max,
            format,
        } => cmd_cohomology(&target, t_min, t_max, format),
        Cmd::Resolve {
            target,
            seed,
            samples,
            prime,
        } => cmd_resolve(&target, seed, samples, prime, verbose),
        Cmd::Verify {
            rank,
            c1,
            c2,
            k_max,
            reg_max,
        } => cmd_verify(&rank, &c1, &c2, k_max, reg_max, verbose),
    }
}

fn cmd_natural_pair(c: ChernData) -> Result<(), CliError> {
    let (params, pair) = natural_pair(c)?;
    let out = NaturalPairJson {
        s: params.s,
        k: params.k,
        alpha: params.alpha,
        a: pair.a().to_vec(),
        b: pair.b().to_vec(),
        dim: moduli_dimension(c),
    };
    println!("{}", json(&out));
    Ok(())
}

/// Fills in the documented defaults (natural k + 3, natural s + 2) for any
/// bound the user left out.
fn bounds_for(
    c: ChernData,
    k_max: Option<i64>,
    reg_max: Option<i64>,
) -> Result<(i64, i64), CliError> {
    if let (Some(k), Some(reg)) = (k_max, reg_max) {
        return Ok((k, reg));
    }
    let (params, _) = natural_pair(c)?;
    Ok((
        k_max.unwrap_or(params.k + 3),
        reg_max.unwrap_or(params.s + 2),
    ))
}

fn cmd_strata(
    c: ChernData,
    k_max: Option<i64>,
    reg_max: Option<i64>,
    format: Format,
    verbose: bool,
) -> Result<(), CliError> {
    let (k_max, reg_max) = bounds_for(c, k_max, reg_max)?;
    if verbose {
        eprintln!("searching {c} with k_max={k_max} reg_max={reg_max}");
    }
    let records = enumerate_strata(c, k_max, reg_max)?;
    match format {
        Format::Json => {
            for rec in &records {
                println!("{}", json(&StratumJson::from(rec)));
            }
        }
        Format::Csv => {
            println!("{STRATUM_CSV_HEADER}");
            for rec in &records {
                println!("{}", stratum_csv_row(rec));
            }
        }
    }
    Ok(())
}

fn cmd_cohomology(
    target: &TargetArgs,
    t_min: Option<i64>,
    t_max: Option<i64>,
    format: Format,
) -> Result<(), CliError> {
    let pair = target.resolve_pair()?;
    let reg = pair.regularity();
    let t_min = t_min.unwrap_or(reg - 6);
    let t_max = t_max.unwrap_or(reg + 4);
    if t_min > t_max {
        return Err(CliError::Usage(format!(
            "empty twist window [{t_min}, {t_max}]"
        )));
    }
    let generic = !is_natural(&pair);
    let table = general_cohomology_table(&pair, t_min, t_max)?;
    match format {
        Format::Json => {
            for row in &table.rows {
                println!("{}", json(&CohomRowJson::new(row, generic)));
            }
        }
        Format::Csv => {
            println!("{COHOM_CSV_HEADER}");
            for row in &table.rows {
                println!("{}", cohom_csv_row(row));
            }
        }
    }
    Ok(())
}

fn cmd_resolve(
    target: &TargetArgs,
    seed: u64,
    samples: usize,
    prime: u64,
    verbose: bool,
) -> Result<(), CliError> {
    let pair = target.resolve_pair()?;
    let (forms, mode) = if pair.is_strongly_admissible() {
        (
            FormSystem::general_position(pair.r(), prime)?,
            BuildMode::Strong,
        )
    } else if pair.is_weakly_admissible() {
        (FormSystem::weak(pair.r(), prime)?, BuildMode::Weak)
    } else {
        return Err(CliError::Usage(format!(
            "pair {pair} is not weakly admissible; no banded matrix exists"
        )));
    };
    if verbose {
        eprintln!("building {mode:?}-mode matrix for {pair} over F_{prime}");
    }
    let matrix = build_banded(&pair, &forms, mode)?;
    // Matrix dump: `i j form_index exponent`, 1-based row and column, rows
    // sorted by (i, j); the form index is the subscript of the form.
    for e in matrix.entries() {
        println!("{} {} {} {}", e.row + 1, e.col + 1, e.form, e.exp);
    }
    match verify_pointwise_rank(&matrix, samples, seed) {
        Ok(report) => {
            println!("{}", json(&RankReportJson::from(&report)));
            Ok(())
        }
        Err(ResolutionError::RankDeficient(report)) => {
            println!("{}", json(&RankReportJson::from(&*report)));
            Err(CliError::Verification(format!(
                "rank dropped to {} (expected {})",
                report.min_rank, report.expected_rank
            )))
        }
        Err(e) => Err(e.into()),
    }
}

/// Comma-separated integers with inclusive `lo..hi` ranges.
fn parse_grid_list(s: &str) -> Result<Vec<i64>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| bad_grid(part))?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad_grid(part))?;
            if lo > hi {
                return Err(bad_grid(part));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad_grid(part))?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(String::from("empty grid list")));
    }
    Ok(out)
}

fn bad_grid(part: &str) -> CliError {
    CliError::Usage(format!(
        "malformed grid item '{part}' (expected an integer or lo..hi)"
    ))
}

fn cmd_verify(
    rank: &str,
    c1: &str,
    c2: &str,
    k_max: Option<i64>,
    reg_max: Option<i64>,
    verbose: bool,
) -> Result<(), CliError> {
    let ranks = parse_grid_list(rank)?;
    let c1s = parse_grid_list(c1)?;
    let c2s = parse_grid_list(c2)?;
    if let Some(&r) = ranks.iter().find(|&&r| r < 2) {
        return Err(CliError::Usage(format!("rank must be at least 2, got {r}")));
    }
    let mut failures = 0usize;
    for &r in &ranks {
        for &v1 in &c1s {
            for &v2 in &c2s {
                let c = ChernData::new(r, v1, v2).expect("ranks validated above");
                let out = verify_datum(c, k_max, reg_max)?;
                if verbose {
                    eprintln!("{c}: {}", out.status);
                }
                if out.status == "fail" {
                    failures += 1;
                }
                println!("{}", json(&out));
            }
        }
    }
    if failures > 0 {
        Err(CliError::Verification(format!(
            "{failures} Chern data failed verification"
        )))
    } else {
        Ok(())
    }
}

fn verify_datum(
    c: ChernData,
    k_over: Option<i64>,
    reg_over: Option<i64>,
) -> Result<VerifyJson, CliError> {
    let skipped = |status: &str| VerifyJson {
        r: c.r,
        c1: c.c1,
        c2: c.c2,
        status: String::from(status),
        k_max: None,
        reg_max: None,
        records: None,
        codim_zero: None,
        natural_matches: None,
        failures: Vec::new(),
    };
    let (params, nat) = match natural_pair(c) {
        Ok(v) => v,
        Err(StrataError::NoNaturalPair { .. }) => return Ok(skipped("no-natural-pair")),
        Err(e) => return Err(e.into()),
    };
    // A natural pair outside the stable range certifies emptiness of the
    // moduli space rather than a uniqueness failure.
    if !nat.stability_necessary(true) {
        return Ok(skipped("natural-pair-unstable"));
    }
    let k_max = k_over.unwrap_or(params.k + 3);
    let reg_max = reg_over.unwrap_or(params.s + 2);
    let finish =
        |status: &str, records: usize, codim_zero: usize, matches: bool, failures: Vec<String>| {
            VerifyJson {
                r: c.r,
                c1: c.c1,
                c2: c.c2,
                status: String::from(status),
                k_max: Some(k_max),
                reg_max: Some(reg_max),
                records: Some(records),
                codim_zero: Some(codim_zero),
                natural_matches: Some(matches),
                failures,
            }
        };
    match verify_uniqueness(c, k_max, reg_max) {
        Ok(rep) => Ok(finish(
            "pass",
            rep.records.len(),
            rep.codim_zero_count,
            rep.natural_matches,
            Vec::new(),
        )),
        Err(StrataError::VerificationFailed(rep)) => Ok(finish(
            "fail",
            rep.records.len(),
            rep.codim_zero_count,
            rep.natural_matches,
            rep.failures.clone(),
        )),
        Err(e) => Err(e.into()),
    }
}
