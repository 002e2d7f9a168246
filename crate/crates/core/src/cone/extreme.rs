//! Extremality of supermodular games, by two equivalent linear systems.
//!
//! The point-configuration system has one unknown payoff vector `y^π` per
//! compatible permutation, glued along common tight sets and pinned to zero
//! on the zero coordinates of the marginal vectors. The games system asks for
//! 0-normalized games that are modular on every pair where `v` is. In both
//! cases `v` is extreme exactly when the solutions form a line.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::marginals::{marginal_vector, tight_mask, zero_players, PayoffVector, PointConfiguration};
use crate::poset::Coalition;
use crate::qlin::RowSpace;
use crate::scalar::Scalar;

/// An incomparable pair `{A, B}` with `v(A∪B) + v(A∩B) = v(A) + v(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EqualityPair {
    pub a: Coalition,
    pub b: Coalition,
}

/// The family `F_v`, with `a` before `b` canonically.
pub fn equality_pairs<T: Scalar>(v: &Game<T>) -> Vec<EqualityPair> {
    let el = v.lattice().elements();
    let mut out = Vec::new();
    for (ka, &a) in el.iter().enumerate() {
        for &b in &el[ka + 1..] {
            if a.incomparable(b) && v.supermodular_gap(a, b).is_zero() {
                out.push(EqualityPair { a, b });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalityMethod {
    System,
    Games,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalityReport {
    pub method: ExtremalityMethod,
    pub extreme: bool,
    /// Dimension of the solution space of the method's linear system.
    pub solution_dim: usize,
    /// The 0-normalization vanished, so the game is modular and by convention
    /// not extreme.
    pub normalized_is_zero: bool,
}

fn require_supermodular<T: Scalar>(v: &Game<T>) -> Result<()> {
    if v.is_supermodular() {
        Ok(())
    } else {
        Err(Error::NotSupermodular)
    }
}

pub fn extremality<T: Scalar>(v: &Game<T>, method: ExtremalityMethod) -> Result<ExtremalityReport> {
    require_supermodular(v)?;
    let w = v.normalized();
    let solution_dim = match method {
        ExtremalityMethod::System => configuration_system(&w, true)?.nullity(),
        ExtremalityMethod::Games => games_system(&w).nullity(),
    };
    let normalized_is_zero = w.is_zero();
    Ok(ExtremalityReport {
        method,
        extreme: !normalized_is_zero && solution_dim == 1,
        solution_dim,
        normalized_is_zero,
    })
}

/// Extremality through the point-configuration system.
pub fn is_extreme<T: Scalar>(v: &Game<T>) -> Result<bool> {
    Ok(extremality(v, ExtremalityMethod::System)?.extreme)
}

/// Extremality through the system of games sharing the equality pairs of `v*`.
pub fn is_extreme_via_games<T: Scalar>(v: &Game<T>) -> Result<bool> {
    Ok(extremality(v, ExtremalityMethod::Games)?.extreme)
}

/// Equations over `y ∈ (Q^n)^Π`, column `p·n + i` for the `p`-th permutation
/// in chain order.
///
/// With `reduced`, each coalition contributes the equalities between its
/// first tight permutation and every other one; otherwise one equality per
/// pair of permutations sharing it. Both span the same row space.
fn configuration_system<T: Scalar>(v: &Game<T>, reduced: bool) -> Result<RowSpace<T>> {
    let l = v.lattice();
    let n = l.n();
    let chains = l.maximal_chains()?;
    let cols = chains.len() * n;
    let mut space = RowSpace::new(cols);

    let mut tight_by_element: Vec<Vec<usize>> = vec![Vec::new(); l.len()];
    for (p, chain) in chains.iter().enumerate() {
        let x = marginal_vector(v, chain)?;
        for i in zero_players(&x).players() {
            let mut row = vec![T::zero(); cols];
            row[p * n + i] = T::one();
            space.insert(row);
        }
        for (k, tight) in tight_mask(v, &x).into_iter().enumerate() {
            if tight && k != 0 {
                tight_by_element[k].push(p);
            }
        }
    }

    let glue = |space: &mut RowSpace<T>, a: Coalition, p: usize, s: usize| {
        let mut row = vec![T::zero(); cols];
        for i in a.players() {
            row[p * n + i] = T::one();
            row[s * n + i] = -T::one();
        }
        space.insert(row);
    };
    for (k, perms) in tight_by_element.iter().enumerate() {
        let a = l.element(k);
        if reduced {
            if let Some((&first, rest)) = perms.split_first() {
                for &s in rest {
                    glue(&mut space, a, first, s);
                }
            }
        } else {
            for (ip, &p) in perms.iter().enumerate() {
                for &s in &perms[ip + 1..] {
                    glue(&mut space, a, p, s);
                }
            }
        }
    }
    Ok(space)
}

/// Equations over `w` on nonempty elements (column `k − 1` for element `k`):
/// `w(A) = w(A⁻)` on join-irreducibles and modularity on every pair of `F_v`.
fn games_system<T: Scalar>(v: &Game<T>) -> RowSpace<T> {
    let l = v.lattice();
    let cols = l.len() - 1;
    let mut space = RowSpace::new(cols);
    let emit = |space: &mut RowSpace<T>, terms: &[(usize, i64)]| {
        let mut row = vec![T::zero(); cols];
        for &(k, c) in terms {
            if k != 0 {
                row[k - 1] = row[k - 1].clone() + T::from_i64(c);
            }
        }
        space.insert(row);
    };
    for j in l.join_irreducibles() {
        emit(&mut space, &[(j.element, 1), (j.predecessor, -1)]);
    }
    for pair in equality_pairs(v) {
        let idx = |c: Coalition| l.index_of(c).expect("lattice is closed under ∪ and ∩");
        emit(
            &mut space,
            &[
                (idx(pair.a.union(pair.b)), 1),
                (idx(pair.a.intersection(pair.b)), 1),
                (idx(pair.a), -1),
                (idx(pair.b), -1),
            ],
        );
    }
    space
}

/// Basis of the solutions of the point-configuration system of `v*`, one
/// configuration per basis vector.
pub fn configuration_solution_space<T: Scalar>(
    v: &Game<T>,
    reduced: bool,
) -> Result<Vec<PointConfiguration<T>>> {
    require_supermodular(v)?;
    let w = v.normalized();
    let l = w.lattice();
    let n = l.n();
    let chains = l.maximal_chains()?;
    let basis = configuration_system(&w, reduced)?.nullspace();
    Ok(basis
        .into_iter()
        .map(|y| {
            let entries: BTreeMap<_, _> = chains
                .iter()
                .enumerate()
                .map(|(p, c)| (c.perm.clone(), PayoffVector(y[p * n..(p + 1) * n].to_vec())))
                .collect();
            PointConfiguration { entries }
        })
        .collect())
}

/// Dimension of the solutions of the games system of `v*`.
pub fn games_solution_dim<T: Scalar>(v: &Game<T>) -> Result<usize> {
    require_supermodular(v)?;
    Ok(games_system(&v.normalized()).nullity())
}

/// Rank of the point-configuration system, reduced or with all pairs.
pub fn configuration_system_rank<T: Scalar>(v: &Game<T>, reduced: bool) -> Result<usize> {
    Ok(configuration_system(v, reduced)?.rank())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::{build_lattice, DownSetLattice};
    use crate::marginals::payoff_array;
    use crate::poset::Poset;
    use crate::Rational;

    fn p1() -> Arc<DownSetLattice> {
        build_lattice(&Poset::from_covers(4, &[(2, 1), (3, 1)]).unwrap()).unwrap()
    }

    fn game(l: &Arc<DownSetLattice>, entries: &[(&str, i64)]) -> Game<Rational> {
        let e: Vec<_> = entries
            .iter()
            .map(|(s, v)| (Coalition::parse(s, l.n()).unwrap(), Rational::from_i64(*v)))
            .collect();
        Game::from_sparse(l, &e).unwrap()
    }

    fn v1(l: &Arc<DownSetLattice>) -> Game<Rational> {
        game(l, &[("24", 1), ("234", 1), ("N", 1)])
    }

    fn v2(l: &Arc<DownSetLattice>) -> Game<Rational> {
        game(l, &[("34", 1), ("234", 1), ("N", 1)])
    }

    #[test]
    fn v1_is_extreme_with_its_own_payoff_array() {
        let l = p1();
        let v = v1(&l);
        assert!(is_extreme(&v).unwrap());
        assert!(is_extreme_via_games(&v).unwrap());
        let basis = configuration_solution_space(&v, true).unwrap();
        assert_eq!(basis.len(), 1);
        let x = payoff_array(&v).unwrap();
        // basis vector is a multiple of the payoff array; both have a 1 in the
        // first nonzero slot
        assert_eq!(basis[0], x);
    }

    #[test]
    fn sum_of_two_rays_is_not_extreme() {
        let l = p1();
        let s = &v1(&l) + &v2(&l);
        let r = extremality(&s, ExtremalityMethod::System).unwrap();
        assert!(!r.extreme && r.solution_dim >= 2);
        assert!(!is_extreme_via_games(&s).unwrap());
    }

    #[test]
    fn modular_and_zero_games_are_not_extreme() {
        let l = p1();
        let m = Game::additive(&l, &[1, 2, 3, 4].map(Rational::from_i64)).unwrap();
        for g in [m, Game::zero(&l)] {
            let r = extremality(&g, ExtremalityMethod::System).unwrap();
            assert!(r.normalized_is_zero && !r.extreme);
            assert!(!is_extreme_via_games(&g).unwrap());
        }
    }

    #[test]
    fn non_supermodular_is_rejected() {
        let l = p1();
        assert_eq!(is_extreme(&-&v1(&l)), Err(Error::NotSupermodular));
        assert_eq!(is_extreme_via_games(&-&v1(&l)), Err(Error::NotSupermodular));
    }

    #[test]
    fn reduced_system_has_full_rank() {
        let l = p1();
        let s = &v1(&l) + &v2(&l);
        for g in [v1(&l), s] {
            assert_eq!(
                configuration_system_rank(&g, true).unwrap(),
                configuration_system_rank(&g, false).unwrap()
            );
        }
    }

    #[test]
    fn modular_game_has_every_incomparable_pair() {
        let l = p1();
        let m = Game::additive(&l, &[1, -2, 3, 0].map(Rational::from_i64)).unwrap();
        let all = l
            .elements()
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| l.elements()[k + 1..].iter().filter(move |&&b| a.incomparable(b)))
            .count();
        assert_eq!(equality_pairs(&m).len(), all);
    }

    #[test]
    fn strictly_supermodular_game_has_no_pairs() {
        let l = p1();
        let g = Game::from_fn(&l, |a| Rational::from_i64((a.len() * a.len()) as i64)).unwrap();
        assert!(equality_pairs(&g).is_empty());
    }
}
