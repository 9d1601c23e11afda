//! Independent-oracle cross-checks for the core decision procedures.

mod support;

use std::collections::BTreeSet;

use knots_core::codes::PairCode;
use knots_core::enumerate::{
    enumerate_knots, reduce_to_preferred, Outcome, ReduceOptions, RunConfig,
};
use knots_core::planarity::{self, Shadow};

/// Every set-of-ordered-pairs name on `{1..=2n}`, visited via the smallest
/// unpaired label.
fn for_each_name(n: usize, f: &mut impl FnMut(&[(u32, u32)])) {
    fn recurse(
        two_n: u32,
        used: &mut Vec<bool>,
        acc: &mut Vec<(u32, u32)>,
        f: &mut impl FnMut(&[(u32, u32)]),
    ) {
        let Some(first) = (1..=two_n).find(|&l| !used[l as usize]) else {
            f(acc);
            return;
        };
        used[first as usize] = true;
        for partner in (first + 1)..=two_n {
            if used[partner as usize] {
                continue;
            }
            used[partner as usize] = true;
            for pair in [(first, partner), (partner, first)] {
                acc.push(pair);
                recurse(two_n, used, acc, f);
                acc.pop();
            }
            used[partner as usize] = false;
        }
        used[first as usize] = false;
    }
    let two_n = 2 * n as u32;
    recurse(
        two_n,
        &mut vec![false; two_n as usize + 1],
        &mut Vec::new(),
        f,
    );
}

#[test]
fn parity_identity_counts_names_exactly() {
    // raw names (2n)!/n!, parity-valid 2^n n!, label-1-left half of that
    let raw_expected = [1u64, 2, 12, 120, 1680];
    for n in 1..=4usize {
        let mut raw = 0u64;
        let mut parity = 0u64;
        let mut normalized = 0u64;
        for_each_name(n, &mut |pairs| {
            raw += 1;
            if pairs.iter().all(|&(o, u)| (o + u) % 2 == 1) {
                parity += 1;
                if !pairs.iter().any(|&(_, u)| u == 1) {
                    normalized += 1;
                }
            }
        });
        let factorial: u64 = (1..=n as u64).product();
        assert_eq!(raw, raw_expected[n], "raw names at n={n}");
        assert_eq!(parity, (1 << n) * factorial, "parity names at n={n}");
        assert_eq!(
            normalized,
            (1 << (n - 1)) * factorial,
            "normalized names at n={n}"
        );
    }
}

#[test]
fn realizability_matches_the_embedding_oracle() {
    let mut checked = 0usize;
    for n in 1..=6usize {
        for shadow in support::all_shadows(n) {
            let loops = planarity::is_realizable(&shadow).unwrap();
            let embed = support::embeddable_oracle(&shadow);
            assert_eq!(
                loops,
                embed,
                "disagreement on n={n} shadow {:?}",
                shadow.permutation()
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 2 + 6 + 24 + 120 + 720);
}

/// Survivors from sweeping every normalized parity name with no shadow-level
/// pruning must equal the pipeline's catalog.
fn brute_survivors(n: usize, opts: &ReduceOptions) -> BTreeSet<PairCode> {
    let mut out = BTreeSet::new();
    for_each_name(n, &mut |pairs| {
        if pairs.iter().any(|&(o, u)| (o + u) % 2 == 0) {
            return;
        }
        if pairs.iter().any(|&(_, u)| u == 1) {
            return;
        }
        let code = PairCode::from_pairs(pairs.to_vec()).unwrap();
        if code.is_composite() {
            return;
        }
        if !planarity::is_realizable(&Shadow::of_code(&code)).unwrap() {
            return;
        }
        if let Outcome::Keep(canonical) = reduce_to_preferred(&code, opts).unwrap() {
            out.insert(canonical);
        }
    });
    out
}

#[test]
fn unpruned_sweep_agrees_with_the_pipeline() {
    let opts = ReduceOptions::default();
    let cfg = RunConfig {
        max_crossings: 5,
        ..RunConfig::default()
    };
    let catalog = enumerate_knots(&cfg).unwrap().catalog;
    for n in 3..=5usize {
        let brute = brute_survivors(n, &opts);
        let pipeline: BTreeSet<PairCode> = catalog
            .records
            .iter()
            .filter(|r| r.n() == n)
            .map(|r| r.code.clone())
            .collect();
        assert_eq!(brute, pipeline, "survivor sets differ at n={n}");
    }
}

#[test]
#[ignore = "minutes-long exhaustive sweep at n=6"]
fn unpruned_sweep_agrees_with_the_pipeline_n6() {
    let opts = ReduceOptions::default();
    let cfg = RunConfig {
        max_crossings: 6,
        ..RunConfig::default()
    };
    let catalog = enumerate_knots(&cfg).unwrap().catalog;
    let brute = brute_survivors(6, &opts);
    let pipeline: BTreeSet<PairCode> = catalog
        .records
        .iter()
        .filter(|r| r.n() == 6)
        .map(|r| r.code.clone())
        .collect();
    assert_eq!(brute, pipeline);
}

/// The staged pipeline must agree with unbounded breadth-first search capped
/// two crossings up: a code is kept exactly when it is the minimum of its
/// move closure.
fn check_reducer_against_closure(n: usize) {
    let opts = ReduceOptions::default();
    for code in support::admissible_codes(n) {
        let canonical = code.canonical_relabel();
        let closure = support::move_closure(&code, n + 2);
        let minimum = support::closure_minimum(&closure).clone();
        match reduce_to_preferred(&code, &opts).unwrap() {
            Outcome::Keep(kept) => {
                assert_eq!(kept, canonical);
                assert_eq!(
                    minimum, canonical,
                    "kept {canonical} but closure reaches {minimum}"
                );
            }
            Outcome::RejectedBy(witness) => {
                assert_ne!(minimum, canonical, "rejected the closure minimum");
                assert!(
                    closure.contains(&witness),
                    "witness {witness} outside the closure of {canonical}"
                );
            }
        }
    }
}

#[test]
fn reducer_matches_move_closure_small() {
    for n in 3..=4 {
        check_reducer_against_closure(n);
    }
}

#[test]
#[ignore = "closure search is heavy at n=5 and up"]
fn reducer_matches_move_closure_n5() {
    check_reducer_against_closure(5);
}

#[test]
fn partition_successor_matches_recursive_counts() {
    use knots_core::groups::partitions_of;
    // reference: p(m) for m = 1..=10
    let reference = [1usize, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    for m in 1..=8u32 {
        assert_eq!(partitions_of(m).len(), reference[m as usize - 1]);
    }
}
