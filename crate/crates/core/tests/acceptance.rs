//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). Every check is exact integer
//! equality; there are no tolerances to tune.

use p2res_core::cohom::{diff2, general_cohomology_table};
use p2res_core::pairs::{ChernData, Pair};
use p2res_core::resolution::{build_banded, verify_pointwise_rank, BuildMode, FormSystem};
use p2res_core::strata::{
    enumerate_strata, h0_threshold, moduli_dimension, natural_pair, stratum_codimension,
    stratum_dimension, NaturalPairParams,
};

const DIM_CAP: i64 = 60;

/// The verification grid: r in {2,3,4}, c1 in {-r+1, .., 0}, and every c2
/// whose Chern data has a natural pair realized by stable bundles
/// (r b1 + c1 >= 1) and moduli dimension at most `DIM_CAP`.
fn grid() -> Vec<(ChernData, NaturalPairParams, Pair)> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for c1 in (1 - r)..=0 {
            for c2 in -10..=60 {
                let c = ChernData::new(r, c1, c2).unwrap();
                if moduli_dimension(c) > DIM_CAP {
                    continue;
                }
                if let Ok((params, pair)) = natural_pair(c) {
                    if pair.stability_necessary(true) {
                        out.push((c, params, pair));
                    }
                }
            }
        }
    }
    assert!(out.len() > 50, "grid unexpectedly small: {}", out.len());
    out
}

fn rc_pairs() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for c1 in (1 - r)..=0 {
            out.push((r, c1));
        }
    }
    out
}

#[test]
fn criterion_1_point_moduli() {
    let c = ChernData::new(2, -1, 1).unwrap();
    assert_eq!(moduli_dimension(c), 0);
    let (params, pair) = natural_pair(c).unwrap();
    assert_eq!(
        params,
        NaturalPairParams {
            s: 1,
            k: 1,
            alpha: 3
        }
    );
    assert_eq!(pair, Pair::new(2, vec![2], vec![1, 1, 1]).unwrap());
    assert_eq!(stratum_dimension(&pair), 0);
    assert_eq!(stratum_codimension(&pair).unwrap(), 0);
    println!("criterion 1 (point moduli (2,-1,1)): PASS");
}

#[test]
fn criterion_2_two_stratum_fixture() {
    let c = ChernData::new(2, 0, 3).unwrap();
    let (_, nat) = natural_pair(c).unwrap();
    assert_eq!(nat, Pair::new(2, vec![3], vec![1, 1, 1]).unwrap());
    assert_eq!(stratum_dimension(&nat), 9);
    assert_eq!(moduli_dimension(c), 9);

    let records = enumerate_strata(c, 3, 3).unwrap();
    let sub = records
        .iter()
        .find(|r| r.pair.a() == [2, 3] && r.pair.b() == [1, 1, 1, 2])
        .expect("codimension-1 stratum enumerated");
    assert_eq!(sub.dim, 8);
    assert_eq!(sub.codim, 1);
    assert_eq!(sub.coincidences, 1);
    assert_eq!(sub.dd_sum, 0);
    println!("criterion 2 (two strata of (2,0,3)): PASS");
}

#[test]
fn criterion_3_uniqueness_grid() {
    let grid = grid();
    let mut checked = 0;
    for (c, params, nat) in &grid {
        let records = enumerate_strata(*c, params.k + 3, params.s + 2)
            .unwrap_or_else(|e| panic!("enumeration failed for {c}: {e}"));
        assert!(!records.is_empty(), "no pairs found for {c}");
        let zero: Vec<_> = records.iter().filter(|r| r.codim == 0).collect();
        assert_eq!(zero.len(), 1, "codimension-0 strata of {c}: {}", zero.len());
        assert_eq!(
            &zero[0].pair, nat,
            "codimension-0 pair of {c} is not the natural pair"
        );
        for rec in &records {
            assert_eq!(
                rec.is_natural,
                rec.codim == 0,
                "naturality/codim mismatch for {}",
                rec.pair
            );
        }
        checked += 1;
    }
    println!("criterion 3 (uniqueness of codim 0 over {checked} Chern data): PASS");
}

#[test]
fn criterion_4_lower_bound() {
    let grid = grid();
    let mut records_seen = 0usize;
    for (c, params, _) in &grid {
        for rec in enumerate_strata(*c, params.k + 3, params.s + 2).unwrap() {
            assert!(rec.coincidences >= 0);
            assert!(rec.dd_sum >= 0, "negative dd_sum for {}", rec.pair);
            assert!(
                rec.codim >= rec.coincidences + rec.dd_sum,
                "codim {} below bound {} for {}",
                rec.codim,
                rec.coincidences + rec.dd_sum,
                rec.pair
            );
            records_seen += 1;
        }
    }
    println!("criterion 4 (codim lower bound on {records_seen} records): PASS");
}

#[test]
fn criterion_5_convexity_suite() {
    let mut checked = 0;
    for u in 0..=6 {
        for v in 0..=6 {
            for t in -15..=5 {
                assert!(diff2(v, u, t) >= 0, "diff2({v},{u},{t}) < 0");
                assert_eq!(
                    diff2(-v, -u, t),
                    diff2(v, u, t - u - v),
                    "sign-flip identity fails at ({v},{u},{t})"
                );
                checked += 1;
            }
        }
    }
    println!("criterion 5 (convexity and sign-flip on {checked} grid points): PASS");
}

#[test]
fn criterion_6_cohomology_identities() {
    let grid = grid();
    let mut rows_checked = 0usize;
    for (c, params, nat) in &grid {
        // chi = h0 - h1 + h2 on every row of every enumerated stratum.
        for rec in enumerate_strata(*c, params.k + 3, params.s + 2).unwrap() {
            let table = general_cohomology_table(&rec.pair, params.s - 6, params.s + 4).unwrap();
            for row in &table.rows {
                assert_eq!(
                    row.chi,
                    row.h0 - row.h1 + row.h2,
                    "chi identity for {}",
                    rec.pair
                );
                rows_checked += 1;
            }
        }
        // Natural cohomology: at most one of h0, h1, h2 nonzero per row.
        let table = general_cohomology_table(nat, params.s - 6, params.s + 4).unwrap();
        for row in &table.rows {
            let nonzero = [row.h0, row.h1, row.h2].iter().filter(|&&h| h > 0).count();
            assert!(
                nonzero <= 1,
                "natural cohomology fails for {nat} at t={}",
                row.t
            );
        }
    }
    println!("criterion 6 (cohomology identities on {rows_checked} rows): PASS");
}

#[test]
fn criterion_7_regularity_and_threshold() {
    let grid = grid();
    for (c, params, nat) in &grid {
        assert_eq!(nat.regularity(), params.s, "regularity of {nat}");
        // h0_threshold itself cross-checks the parameter route against the
        // arithmetic identity; here it must also match the first positive
        // section count of the table.
        let threshold = h0_threshold(*c).unwrap();
        let table = general_cohomology_table(nat, params.s - 6, params.s + 4).unwrap();
        let first = table
            .rows
            .iter()
            .find(|row| row.h0 > 0)
            .unwrap_or_else(|| panic!("no sections in window for {c}"));
        assert_eq!(first.t, threshold, "threshold of {c}");
    }
    println!(
        "criterion 7 (regularity and section threshold on {} data): PASS",
        grid.len()
    );
}

#[test]
fn criterion_8_matrix_certificate() {
    let grid = grid();
    let mut certified = 0;
    for (c, _, nat) in &grid {
        if c.r > 3 {
            continue;
        }
        let forms = FormSystem::general_position(c.r, 65537).unwrap();
        let matrix = build_banded(nat, &forms, BuildMode::Strong)
            .unwrap_or_else(|e| panic!("build failed for {c}: {e}"));
        assert!(matrix.check_minimality(), "matrix of {nat} not minimal");
        let report = verify_pointwise_rank(&matrix, 200, 0)
            .unwrap_or_else(|e| panic!("rank verification failed for {c}: {e}"));
        assert!(report.pass);
        assert_eq!(report.min_rank, nat.k());
        certified += 1;
    }
    println!("criterion 8 (full-rank certificates for {certified} matrices): PASS");
}

#[test]
fn criterion_9_interval_disjointness() {
    for (r, c1) in rc_pairs() {
        let lower = |s: i64| r * s * s + 2 * c1 * s - c1 - r * s + 1;
        let upper = |s: i64| r * s * s + 2 * c1 * s + c1 + r * s;
        let spans: Vec<(i64, i64)> = (-10..=10)
            .map(|s| (lower(s), upper(s)))
            .filter(|(lo, hi)| lo <= hi)
            .collect();
        for (i, &(lo1, hi1)) in spans.iter().enumerate() {
            for &(lo2, hi2) in &spans[i + 1..] {
                assert!(
                    hi1 < lo2 || hi2 < lo1,
                    "intervals overlap for (r, c1) = ({r}, {c1})"
                );
            }
        }
    }
    println!("criterion 9 (regularity interval disjointness): PASS");
}
