//! Property tests for the algebraic identities the library relies on.

use p2res_core::cohom::{diff2, general_cohomology_table, h0_line, h2_line};
use p2res_core::pairs::{ChernData, Pair, Rank2Stability};
use p2res_core::strata::{
    codim_lower_bound, is_natural, natural_pair, verify_uniqueness, NaturalPairParams,
};
use p2res_core::Ratio;
use proptest::prelude::*;

fn arb_pair_with_rank(r: i64) -> impl Strategy<Value = Pair> {
    (1usize..=4)
        .prop_flat_map(move |k| {
            (
                proptest::collection::vec(-4i64..=8, k),
                proptest::collection::vec(-4i64..=6, r as usize + k),
            )
        })
        .prop_map(move |(mut a, mut b)| {
            a.sort_unstable();
            b.sort_unstable();
            Pair::new(r, a, b).expect("sorted input is valid")
        })
}

fn arb_pair() -> impl Strategy<Value = Pair> {
    (2i64..=5).prop_flat_map(arb_pair_with_rank)
}

/// Strongly admissible pairs: a_i = b_{r+i} + d_i with d_i >= 1, then
/// sorted. Sorting preserves the termwise inequality against the (already
/// sorted) tail of b.
fn arb_admissible_pair() -> impl Strategy<Value = Pair> {
    (2i64..=5, 1usize..=4)
        .prop_flat_map(|(r, k)| {
            (
                Just(r),
                proptest::collection::vec(1i64..=6, k),
                proptest::collection::vec(-4i64..=6, r as usize + k),
            )
        })
        .prop_map(|(r, deltas, mut b)| {
            b.sort_unstable();
            let mut a: Vec<i64> = deltas
                .iter()
                .enumerate()
                .map(|(i, d)| b[r as usize + i] + d)
                .collect();
            a.sort_unstable();
            Pair::new(r, a, b).expect("construction is strongly admissible")
        })
}

/// Test-side expansion of (s, k, alpha), kept independent of the library's.
fn natural_expansion_oracle(r: i64, s: i64, k: i64, alpha: i64) -> Pair {
    let (a, b) = if alpha >= 0 {
        let a = vec![s + 1; k as usize];
        let mut b = vec![s - 1; (r + k - alpha) as usize];
        b.extend(std::iter::repeat_n(s, alpha as usize));
        (a, b)
    } else {
        let mut a = vec![s; (-alpha) as usize];
        a.extend(std::iter::repeat_n(s + 1, (k + alpha) as usize));
        (a, vec![s - 1; (r + k) as usize])
    };
    Pair::new(r, a, b).unwrap()
}

proptest! {
    #[test]
    fn strong_implies_weak(p in arb_pair()) {
        if p.is_strongly_admissible() {
            prop_assert!(p.is_weakly_admissible());
        }
    }

    #[test]
    fn chern_classes_are_always_integral(p in arb_pair()) {
        prop_assert!(p.chern_classes().is_ok());
    }

    #[test]
    fn twist_shifts_c1_and_regularity(p in arb_pair(), t in -5i64..=5) {
        let c = p.chern_classes().unwrap();
        let q = p.twist(t);
        let ct = q.chern_classes().unwrap();
        prop_assert_eq!(ct.c1, c.c1 + p.r() * t);
        // The discriminant 2 r c2 - (r-1) c1^2 does not move under twists.
        prop_assert_eq!(
            2 * ct.r * ct.c2 - (ct.r - 1) * ct.c1 * ct.c1,
            2 * c.r * c.c2 - (c.r - 1) * c.c1 * c.c1
        );
        prop_assert_eq!(q.regularity(), p.regularity() - t);
    }

    #[test]
    fn strict_stability_implies_semistability(p in arb_pair()) {
        if p.stability_necessary(true) {
            prop_assert!(p.stability_necessary(false));
        }
    }

    #[test]
    fn rank2_stable_passes_necessary_condition(p in arb_pair_with_rank(2)) {
        if let Ok(Rank2Stability::Stable) = p.rank2_stability() {
            prop_assert!(p.stability_necessary(true));
        }
    }

    #[test]
    fn cleared_denominators_match_exact_slope(p in arb_admissible_pair()) {
        let c = p.chern_classes().unwrap();
        let strict_rational = Ratio::from_integer(p.b()[0]) > -c.slope();
        prop_assert_eq!(p.stability_necessary(true), strict_rational);
        let weak_rational = Ratio::from_integer(p.b()[0]) >= -c.slope();
        prop_assert_eq!(p.stability_necessary(false), weak_rational);
    }

    #[test]
    fn serre_duality(t in -60i64..=60) {
        prop_assert_eq!(h2_line(t), h0_line(-t - 3));
    }

    #[test]
    fn second_differences_are_nonnegative(u in 0i64..=8, v in 0i64..=8, t in -25i64..=10) {
        prop_assert!(diff2(v, u, t) >= 0);
    }

    #[test]
    fn second_difference_sign_flip(u in 0i64..=8, v in 0i64..=8, t in -25i64..=10) {
        prop_assert_eq!(diff2(-v, -u, t), diff2(v, u, t - u - v));
    }

    #[test]
    fn tables_of_admissible_pairs(p in arb_admissible_pair()) {
        // h0 stays nonnegative for strongly admissible pairs, so the table
        // always materializes.
        let reg = p.regularity();
        let table = general_cohomology_table(&p, reg - 8, reg + 4).unwrap();
        let mut positive_seen = false;
        let mut prev_h0 = 0;
        for row in &table.rows {
            prop_assert_eq!(row.chi, row.h0 - row.h1 + row.h2);
            if row.t >= reg {
                prop_assert_eq!(row.h1, 0);
                prop_assert_eq!(row.h2, 0);
            }
            if positive_seen {
                prop_assert!(row.h0 >= prev_h0);
            }
            positive_seen = positive_seen || row.h0 > 0;
            prev_h0 = row.h0;
        }
    }

    #[test]
    fn natural_expansion_round_trips(
        (r, s, k) in (2i64..=5, -4i64..=5, 1i64..=5),
    ) {
        // Walk the admissible alpha range for the drawn (r, s, k).
        for alpha in (-k + 1)..=(k + r) {
            let p = natural_expansion_oracle(r, s, k, alpha);
            prop_assert!(is_natural(&p));
            prop_assert_eq!(p.regularity(), s);
            prop_assert!(p.b()[0] == s - 1 || p.b()[0] == s);
            let ak = *p.a().last().unwrap();
            prop_assert!(ak == s || ak == s + 1);

            let c = p.chern_classes().unwrap();
            let (params, q) = natural_pair(c).unwrap();
            prop_assert_eq!(params, NaturalPairParams { s, k, alpha });
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn dd_sum_matches_direct_h2_combination(p in arb_admissible_pair()) {
        // The implementation assembles the double-difference sum through
        // diff2; recompute it from the four-term h2 combination directly.
        let (_, dd_sum) = codim_lower_bound(&p).unwrap();
        let r = p.r() as usize;
        let k = p.k();
        let (a, b) = (p.a(), p.b());
        let mut direct = 0;
        for i in 0..k {
            for j in 0..k {
                direct += h2_line(b[r + i] - a[j]) - h2_line(b[r + i] - b[r + j])
                    - h2_line(a[i] - a[j])
                    + h2_line(a[i] - b[r + j]);
            }
        }
        prop_assert_eq!(dd_sum, direct);
        prop_assert!(dd_sum >= 0);
    }

    #[test]
    fn non_natural_pairs_are_not_the_solver_output(p in arb_admissible_pair()) {
        if !is_natural(&p) {
            let c = p.chern_classes().unwrap();
            if let Ok((_, q)) = natural_pair(c) {
                prop_assert_ne!(q, p);
            }
        }
    }

    #[test]
    fn regularity_intervals_tile_the_line(r in 2i64..=6, c1 in -6i64..=6) {
        // Nonempty intervals are pairwise disjoint and chained:
        // lower(I_{s+1}) = upper(I_s) + 1.
        let lower = |s: i64| r * s * s + 2 * c1 * s - c1 - r * s + 1;
        let upper = |s: i64| r * s * s + 2 * c1 * s + c1 + r * s;
        let spans: Vec<(i64, i64)> =
            (-10..=10).map(|s| (lower(s), upper(s))).filter(|(lo, hi)| lo <= hi).collect();
        for s in -10..=10 {
            prop_assert_eq!(lower(s + 1), upper(s) + 1);
        }
        for (i, &(lo1, hi1)) in spans.iter().enumerate() {
            for &(lo2, hi2) in &spans[i + 1..] {
                prop_assert!(hi1 < lo2 || hi2 < lo1, "intervals overlap");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uniqueness_holds_on_random_chern_data(
        r in 2i64..=3,
        c1 in -2i64..=0,
        c2 in 1i64..=6,
    ) {
        let c = ChernData::new(r, c1, c2).unwrap();
        if let Ok((params, nat)) = natural_pair(c) {
            if nat.stability_necessary(true) {
                let report = verify_uniqueness(c, params.k + 3, params.s + 2).unwrap();
                prop_assert!(report.pass());
            }
        }
    }
}

/// All domain values are plain owned data, so computations on disjoint
/// inputs can run from any number of workers.
#[test]
fn values_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<Pair>();
    check::<ChernData>();
    check::<p2res_core::StratumRecord>();
    check::<p2res_core::CohomologyTable>();
    check::<p2res_core::BandedMatrix>();
    check::<p2res_core::RankReport>();

    let pairs: Vec<Pair> = (1..=6)
        .map(|c2| natural_pair(ChernData::new(2, 0, c2).unwrap()).map(|(_, p)| p))
        .filter_map(Result::ok)
        .collect();
    let handles: Vec<_> = pairs
        .into_iter()
        .map(|p| {
            std::thread::spawn(move || {
                let reg = p.regularity();
                general_cohomology_table(&p, reg - 6, reg + 4).unwrap().rows.len()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), 11);
    }
}
