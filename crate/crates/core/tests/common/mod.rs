#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use supermod::{build_lattice, Coalition, DownSetLattice, Game, Matrix, PayoffVector, Poset, Rational, Scalar};

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 2 ≺ 1 and 3 ≺ 1 on four players.
pub fn p1() -> Arc<DownSetLattice> {
    lattice(4, &[(2, 1), (3, 1)])
}

pub fn boolean(n: usize) -> Arc<DownSetLattice> {
    build_lattice(&Poset::antichain(n).unwrap()).unwrap()
}

pub fn chain(n: usize) -> Arc<DownSetLattice> {
    build_lattice(&Poset::chain(n).unwrap()).unwrap()
}

pub fn lattice(n: usize, covers: &[(usize, usize)]) -> Arc<DownSetLattice> {
    build_lattice(&Poset::from_covers(n, covers).unwrap()).unwrap()
}

/// A spread of small test lattices, with names.
pub fn zoo() -> Vec<(&'static str, Arc<DownSetLattice>)> {
    vec![
        ("P1", p1()),
        ("B2", boolean(2)),
        ("B3", boolean(3)),
        ("B4", boolean(4)),
        ("chain3", chain(3)),
        ("chain4", chain(4)),
        ("two chains", lattice(4, &[(1, 2), (3, 4)])),
        ("V", lattice(3, &[(1, 2), (1, 3)])),
        ("N", lattice(4, &[(1, 3), (2, 3), (2, 4)])),
    ]
}

pub fn set(l: &DownSetLattice, s: &str) -> Coalition {
    Coalition::parse(s, l.n()).unwrap()
}

pub fn game(l: &Arc<DownSetLattice>, entries: &[(&str, i64)]) -> Game {
    let e: Vec<_> = entries.iter().map(|(s, v)| (set(l, s), q(*v))).collect();
    Game::from_sparse(l, &e).unwrap()
}

/// The six extreme games on P1, in the order v1..v6.
pub fn example_rays(l: &Arc<DownSetLattice>) -> Vec<Game> {
    vec![
        game(l, &[("24", 1), ("234", 1), ("N", 1)]),
        game(l, &[("34", 1), ("234", 1), ("N", 1)]),
        game(l, &[("23", 1), ("123", 1), ("234", 1), ("N", 1)]),
        game(l, &[("234", 1), ("N", 1)]),
        game(l, &[("23", 1), ("24", 1), ("34", 1), ("123", 1), ("234", 2), ("N", 2)]),
        game(l, &[("N", 1)]),
    ]
}

/// Integer values in [−5, 5] on every nonempty element.
pub fn random_game(l: &Arc<DownSetLattice>, rng: &mut ChaCha8Rng) -> Game {
    let values = (0..l.len())
        .map(|k| if k == 0 { q(0) } else { q(rng.gen_range(-5..=5)) })
        .collect();
    Game::from_values(l, values).unwrap()
}

/// Random combination of `gens` with coefficients in 0..=3, plus a random
/// modular part.
pub fn random_supermodular(l: &Arc<DownSetLattice>, gens: &[Game], rng: &mut ChaCha8Rng) -> Game {
    let mut g = Game::zero(l);
    for r in gens {
        g = &g + &r.scale(&q(rng.gen_range(0..=3)));
    }
    let weights: Vec<Rational> = (0..l.n()).map(|_| q(rng.gen_range(-3..=3))).collect();
    &g + &Game::additive(l, &weights).unwrap()
}

/// Vertices of `{x | x(N) = v(N), x(A) ≥ v(A)}` by brute force over
/// subsets of tight constraints.
pub fn brute_core_vertices(v: &Game) -> BTreeSet<PayoffVector> {
    let l = v.lattice();
    let n = l.n();
    let indicator = |a: Coalition| -> Vec<Rational> {
        (0..n).map(|i| if a.contains(i) { q(1) } else { q(0) }).collect()
    };
    let inner: Vec<usize> = (1..l.top()).collect();
    let mut out = BTreeSet::new();
    for subset in subsets(&inner, n - 1) {
        let mut rows = vec![indicator(l.element(l.top()))];
        let mut rhs = vec![v.at(l.top()).clone()];
        for &k in &subset {
            rows.push(indicator(l.element(k)));
            rhs.push(v.at(k).clone());
        }
        let m = Matrix::from_rows(n, rows).unwrap();
        if m.rank() < n {
            continue;
        }
        let Some(x) = m.solve(&rhs) else { continue };
        let x = PayoffVector(x);
        if supermod::marginals::core_contains(v, &x) {
            out.insert(x);
        }
    }
    out
}

pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

/// All permutations of `0..n` as player sequences.
pub fn all_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for s in all_sequences(n - 1) {
        for pos in 0..=s.len() {
            let mut t = s.clone();
            t.insert(pos, n - 1);
            out.push(t);
        }
    }
    out
}
