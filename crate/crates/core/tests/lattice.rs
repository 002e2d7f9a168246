mod common;

use std::collections::BTreeSet;

use common::*;
use supermod::{Coalition, Permutation};

#[test]
fn p1_shape() {
    let l = p1();
    let shorthand: Vec<String> = l.elements().iter().map(|a| a.shorthand(4)).collect();
    assert_eq!(shorthand, ["∅", "2", "3", "4", "23", "24", "34", "123", "234", "N"]);
    let joins: BTreeSet<Coalition> = l.join_irreducibles().iter().map(|j| l.element(j.element)).collect();
    let want: BTreeSet<Coalition> = ["2", "3", "4", "123"].iter().map(|s| set(&l, s)).collect();
    assert_eq!(joins, want);
}

#[test]
fn structural_invariants() {
    for (name, l) in zoo() {
        let poset = l.poset();
        assert_eq!(l.join_irreducibles().len(), l.n(), "{name}");
        for j in l.join_irreducibles() {
            assert_eq!(l.element(j.element), poset.principal_down_set(j.player).unwrap());
            assert_eq!(l.lower_covers(j.element).len(), 1, "{name}");
            assert_eq!(l.lower_covers(j.element)[0].1, j.predecessor);
        }
        // i ↦ ↓i is an order isomorphism onto the join-irreducibles
        for i in 0..l.n() {
            for k in 0..l.n() {
                let di = l.element(l.principal(i));
                let dk = l.element(l.principal(k));
                assert_eq!(poset.leq(i, k), di.is_subset(dk), "{name}: {i} {k}");
            }
        }
        for &a in l.elements() {
            for &b in l.elements() {
                assert!(l.contains(a.union(b)) && l.contains(a.intersection(b)), "{name}");
            }
        }
        let mut sorted = l.elements().to_vec();
        sorted.sort_by_key(|c| (c.len(), c.bits()));
        assert_eq!(sorted, l.elements(), "{name}");
        l.verify_birkhoff().unwrap();
    }
}

#[test]
fn chains_are_linear_extensions() {
    for (name, l) in zoo() {
        let chains = l.maximal_chains().unwrap();
        let brute: Vec<Vec<usize>> = all_sequences(l.n())
            .into_iter()
            .filter(|s| Permutation::new(s.clone()).unwrap().is_compatible(l.poset()))
            .collect();
        let mut brute = brute;
        brute.sort();
        let got: Vec<Vec<usize>> = chains.iter().map(|c| c.perm.sequence().to_vec()).collect();
        assert_eq!(got, brute, "{name}: lexicographic linear extensions");
        assert_eq!(l.count_maximal_chains(), chains.len() as u128);
        for c in chains.iter() {
            assert_eq!(c.sets.len(), l.n() + 1);
            for w in c.sets.windows(2) {
                assert!(w[0].is_proper_subset(w[1]) && w[1].len() == w[0].len() + 1);
            }
        }
    }
}

#[test]
fn p1_permutations() {
    let l = p1();
    let perms: Vec<String> = l.maximal_chains().unwrap().iter().map(|c| c.perm.to_string()).collect();
    assert_eq!(perms, ["2314", "2341", "2431", "3214", "3241", "3421", "4231", "4321"]);
}

#[test]
fn boolean_interval_matches_antichain_test() {
    for (name, l) in zoo() {
        for &a in l.elements() {
            for &b in l.elements() {
                if !a.is_subset(b) {
                    assert!(l.is_boolean_interval(a, b).is_err());
                    continue;
                }
                let by_count = l.is_boolean_interval(a, b).unwrap();
                assert_eq!(by_count, l.is_boolean_interval_by_antichain(a, b), "{name}: {a} {b}");
                assert_eq!(by_count, l.poset().is_antichain(b.difference(a)), "{name}: {a} {b}");
            }
        }
    }
}

#[test]
fn mobius_identity_and_recursion() {
    for (name, l) in zoo() {
        if l.len() > 16 {
            continue;
        }
        for &x in l.elements() {
            for &y in l.elements() {
                if !x.is_subset(y) {
                    continue;
                }
                let fast = l.mobius(x, y).unwrap();
                assert_eq!(fast, l.mobius_recursive(x, y).unwrap(), "{name}: {x} {y}");
                if x != y {
                    let total: i64 = l.interval(x, y).iter().map(|&k| l.mobius(x, l.element(k)).unwrap()).sum();
                    assert_eq!(total, 0, "{name}: {x} {y}");
                }
            }
        }
    }
    let l = p1();
    assert_eq!(l.mobius(Coalition::EMPTY, set(&l, "23")).unwrap(), 1);
    assert_eq!(l.mobius(Coalition::EMPTY, set(&l, "123")).unwrap(), 0);
}

#[test]
fn chain_cap_is_a_clean_error() {
    let p = supermod::Poset::antichain(5).unwrap();
    let l = supermod::build_lattice_with(&p, supermod::Limits { max_lattice: 64, max_chains: 10 }).unwrap();
    assert!(matches!(l.maximal_chains(), Err(supermod::Error::Size { .. })));
    let tiny = supermod::build_lattice_with(&p, supermod::Limits { max_lattice: 8, max_chains: 10 });
    assert!(matches!(tiny, Err(supermod::Error::Size { .. })));
}
