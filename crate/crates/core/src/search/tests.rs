use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::constructions::{paley_biplane, projective_plane, star_family, verify_design};
use crate::family::{intersection_spectrum, validate_family, Allowed};

fn uniform(lmin: usize, lmax: usize, s: usize) -> IntersectionConstraint {
    IntersectionConstraint::interval(lmin, lmax, s, s).unwrap()
}

fn run(n: usize, c: &IntersectionConstraint) -> SearchResult {
    let r = max_family(n, c, &SearchOptions::default()).unwrap();
    assert_eq!(r.status, SearchStatus::Exact);
    assert!(validate_family(&r.witness, c).unwrap().valid);
    assert_eq!(r.witness.len(), r.max_size);
    r
}

/// Every subset of the candidate list, checked pairwise.
fn naive_max(n: usize, c: &IntersectionConstraint) -> usize {
    let cands = build_candidates(n, c, 20).unwrap();
    let mut best = 0;
    for pick in 0u32..(1 << cands.len()) {
        let chosen: Vec<u64> = (0..cands.len())
            .filter(|i| pick >> i & 1 == 1)
            .map(|i| cands[i])
            .collect();
        let ok = chosen.iter().enumerate().all(|(i, a)| {
            chosen[i + 1..]
                .iter()
                .all(|b| c.admits_intersection((a & b).count_ones() as usize))
        });
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

#[test]
fn candidate_lists() {
    assert_eq!(
        build_candidates(5, &uniform(0, 3, 3), 1 << 22)
            .unwrap()
            .len(),
        10
    );
    let all = IntersectionConstraint::interval(0, 5, 1, 5).unwrap();
    let c = build_candidates(5, &all, 1 << 22).unwrap();
    assert_eq!(c.len(), 31);
    assert!(c.windows(2).all(|w| w[0] < w[1]));
    assert!(build_candidates(4, &uniform(0, 5, 5), 1 << 22)
        .unwrap()
        .is_empty());
    assert_eq!(
        build_candidates(30, &uniform(0, 15, 15), 1 << 22),
        Err(Error::InstanceTooLarge {
            count: 155_117_520,
            cap: 1 << 22
        })
    );
    assert_eq!(
        build_candidates(64, &uniform(0, 1, 1), 1 << 22)
            .unwrap()
            .len(),
        64
    );
    assert_eq!(
        build_candidates(64, &uniform(0, 64, 64), 1 << 22).unwrap(),
        vec![u64::MAX]
    );
    assert!(build_candidates(65, &uniform(0, 1, 1), 1 << 22).is_err());
}

#[test]
fn ekr_is_tight_at_six() {
    assert_eq!(run(6, &uniform(1, 3, 3)).max_size, 10);
}

#[test]
fn fano_is_optimal_for_singleton_intersections() {
    let c = IntersectionConstraint::explicit([1], 3, 3).unwrap();
    let r = run(7, &c);
    assert_eq!(r.max_size, 7);
    assert_eq!(
        intersection_spectrum(&r.witness).counts,
        BTreeMap::from([(1, 21)])
    );
    assert!(verify_design(&r.witness, 2, 1).unwrap().holds);
}

#[test]
fn complete_family_at_two_k_minus_one() {
    let c = IntersectionConstraint::interval(1, 2, 3, 3).unwrap();
    assert_eq!(run(5, &c).max_size, 10);
}

#[test]
fn singleton_intersections_over_all_sizes() {
    let c = IntersectionConstraint::explicit([1], 1, 5).unwrap();
    assert_eq!(run(5, &c).max_size, 5);
    assert_eq!(brute_force_oracle(5, &c).unwrap().max_size, 5);
}

#[test]
fn oracle_examples() {
    let r = brute_force_oracle(4, &uniform(1, 1, 2)).unwrap();
    assert_eq!(r.max_size, 3);
    assert_eq!(
        brute_force_oracle(3, &uniform(0, 3, 3)).unwrap().max_size,
        1
    );
    let c = IntersectionConstraint::explicit([1], 3, 3).unwrap();
    let r = brute_force_oracle(6, &c).unwrap();
    assert_eq!(r.max_size, 4);
    assert!(validate_family(&r.witness, &c).unwrap().valid);
    let c = IntersectionConstraint::interval(0, 4, 1, 4).unwrap();
    assert!(matches!(
        brute_force_oracle(7, &c),
        Err(Error::InstanceTooLarge { count: 98, cap: 64 })
    ));
}

#[test]
fn oracle_agrees_with_naive_enumeration() {
    for n in 1..=4 {
        for smin in 1..=n {
            for smax in smin..=n {
                for lmin in 0..=smax {
                    for lmax in lmin..=smax {
                        let c = IntersectionConstraint::interval(lmin, lmax, smin, smax).unwrap();
                        if candidate_count(n, &c) > 15 {
                            continue;
                        }
                        assert_eq!(
                            brute_force_oracle(n, &c).unwrap().max_size,
                            naive_max(n, &c),
                            "n={n} c={c:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn budgets_return_incumbent() {
    let c = uniform(1, 2, 4);
    let opts = SearchOptions {
        node_budget: Some(3),
        ..SearchOptions::default()
    };
    let r = max_family(9, &c, &opts).unwrap();
    assert_eq!(r.status, SearchStatus::BudgetExhausted);
    assert!(validate_family(&r.witness, &c).unwrap().valid);
    assert_eq!(r.witness.len(), r.max_size);

    let opts = SearchOptions {
        time_budget: Some(std::time::Duration::ZERO),
        ..SearchOptions::default()
    };
    let r = max_family(12, &c, &opts).unwrap();
    assert_eq!(r.status, SearchStatus::BudgetExhausted);
    assert!(validate_family(&r.witness, &c).unwrap().valid);
}

#[test]
fn seeds() {
    let c = uniform(1, 2, 4);
    let seed = crate::constructions::fano_complement();
    let opts = SearchOptions {
        lower_bound_seed: Some(seed.clone()),
        node_budget: Some(1),
        ..SearchOptions::default()
    };
    let r = max_family(7, &c, &opts).unwrap();
    assert_eq!(r.status, SearchStatus::BudgetExhausted);
    assert!(r.max_size >= 7);

    let exact = max_family(
        7,
        &c,
        &SearchOptions {
            lower_bound_seed: Some(seed.clone()),
            ..SearchOptions::default()
        },
    )
    .unwrap();
    assert_eq!(exact.max_size, run(7, &c).max_size);

    let bad = star_family(7, 3).unwrap();
    let opts = SearchOptions {
        lower_bound_seed: Some(bad),
        ..SearchOptions::default()
    };
    assert!(matches!(max_family(7, &c, &opts), Err(Error::BadSeed(_))));
    let opts = SearchOptions {
        lower_bound_seed: Some(seed),
        ..SearchOptions::default()
    };
    assert!(matches!(max_family(8, &c, &opts), Err(Error::BadSeed(_))));
}

#[test]
fn graph_size_cap() {
    let c = IntersectionConstraint::interval(1, 2, 3, 3).unwrap();
    let opts = SearchOptions {
        candidate_cap: 10,
        ..SearchOptions::default()
    };
    assert!(matches!(
        max_family(6, &c, &opts),
        Err(Error::InstanceTooLarge { count: 20, cap: 10 })
    ));
}

#[test]
fn anchored_non_uniform_window_is_sound() {
    // a maximum family with no singleton: anchoring to {1} alone would lose it
    let c = IntersectionConstraint::interval(1, 1, 1, 3).unwrap();
    let plain = run(6, &c).max_size;
    let anchored = max_family(
        6,
        &c,
        &SearchOptions {
            symmetry_breaking: true,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    assert_eq!(anchored.max_size, plain);
    assert_eq!(plain, brute_force_oracle(6, &c).unwrap().max_size);
}

#[test]
fn triple_cover_fano_and_biplane() {
    for (fam, s) in [(projective_plane(2).unwrap(), 3usize), (paley_biplane(), 5)] {
        let cover = triple_cover(&fam).unwrap();
        assert!(cover.triples.len() <= s.pow(3));
        assert_eq!(cover.s, s);
        for m in fam.members() {
            assert!(cover.triples.members().iter().any(|t| t.is_subset_of(m)));
        }
        assert!(cover.covers(&fam));
        assert!(!cover.trace.is_empty());
    }
}

#[test]
fn triple_cover_hypotheses() {
    let err = |f: &SetFamily| match triple_cover(f) {
        Err(Error::Hypothesis(m)) => m,
        other => panic!("{other:?}"),
    };
    assert!(err(&star_family(6, 3).unwrap()).contains("common element 1"));
    let pair = SetFamily::from_lists(6, [vec![1, 2, 3], vec![1, 4, 5], vec![2, 4, 6]]).unwrap();
    assert!(err(&pair).contains("hitting pair {1, 2}"));
    let small = SetFamily::from_lists(4, [vec![1, 2], vec![1, 2, 3]]).unwrap();
    assert!(err(&small).contains("undersized"));
    let disjoint = SetFamily::from_lists(6, [vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
    assert!(err(&disjoint).contains("not intersecting"));
    assert_eq!(
        triple_cover(&SetFamily::new(3, vec![]).unwrap()).unwrap_err(),
        Error::EmptyFamily
    );
}

#[test]
fn scan_small_rows() {
    let opts = SearchOptions {
        symmetry_breaking: true,
        ..SearchOptions::default()
    };
    let rows = threshold_scan(4, 2, 6, 9, &opts).unwrap();
    assert_eq!(rows.len(), 4);
    let r7 = &rows[1];
    assert_eq!((r7.n, r7.bound_floor), (7, 5));
    assert!(r7.max_size >= 7);
    assert_eq!(r7.holds, Some(false));
    let r8 = &rows[2];
    assert_eq!(r8.bound_floor, 7);
    assert!(r8.max_size >= 7);
    for w in rows.windows(2) {
        assert!(w[0].max_size <= w[1].max_size);
    }
    for r in &rows {
        assert_eq!(r.status, SearchStatus::Exact);
        assert_eq!(r.holds, Some(r.max_size as u64 <= r.bound_floor));
    }
    assert!(threshold_scan(3, 2, 6, 8, &SearchOptions::default()).is_err());
    assert!(threshold_scan(4, 2, 9, 8, &SearchOptions::default()).is_err());
}

#[test]
fn mixed_scan_reproduces_small_n_failure() {
    let rows = threshold_scan_with(ScanKind::Mixed, 3, 3, 5, 6, &SearchOptions::default()).unwrap();
    assert_eq!(rows[0].max_size, 10);
    assert_eq!(rows[0].bound_floor, 6);
    assert_eq!(rows[0].holds, Some(false));
}

fn arb_instance() -> impl Strategy<Value = (usize, IntersectionConstraint)> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), 1..=n, 0..=n))
        .prop_flat_map(|(n, smin, w)| {
            let smax = (smin + w).min(n);
            (
                Just(n),
                Just(smin),
                Just(smax),
                prop::collection::btree_set(0..=smax, 0..4),
                any::<bool>(),
                0..=smax,
                0..=smax,
            )
        })
        .prop_filter_map(
            "within oracle cap",
            |(n, smin, smax, set, explicit, a, b)| {
                let allowed = if explicit {
                    Allowed::Explicit(set)
                } else {
                    Allowed::Interval {
                        lmin: a.min(b),
                        lmax: a.max(b),
                    }
                };
                let c = IntersectionConstraint::new(allowed, smin, smax).ok()?;
                (candidate_count(n, &c) <= ORACLE_CAP).then_some((n, c))
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn search_matches_oracle((n, c) in arb_instance(), sym in any::<bool>(), par in any::<bool>()) {
        let opts = SearchOptions { symmetry_breaking: sym, parallel: par, ..SearchOptions::default() };
        let r = max_family(n, &c, &opts).unwrap();
        prop_assert_eq!(r.status, SearchStatus::Exact);
        prop_assert!(validate_family(&r.witness, &c).unwrap().valid);
        prop_assert_eq!(r.max_size, brute_force_oracle(n, &c).unwrap().max_size);
    }

    #[test]
    fn triple_cover_invariants(picks in prop::collection::btree_set(0usize..35, 3..12)) {
        use itertools::Itertools;
        let all: Vec<Vec<usize>> = (1..=7).combinations(3).collect();
        let f = SetFamily::from_lists(7, picks.into_iter().map(|i| all[i].clone())).unwrap();
        if let Ok(cover) = triple_cover(&f) {
            prop_assert!(cover.covers(&f));
            prop_assert!(cover.triples.len() <= 27);
        }
    }
}
