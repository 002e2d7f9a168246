use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::game::Game;
use crate::lattice::DownSetLattice;
use crate::poset::Coalition;
use crate::qlin::{dot, Matrix};
use crate::scalar::Scalar;

use super::rays::Coordinates;

/// A local supermodular inequality
/// `v(A∪{i,j}) − v(A∪{i}) − v(A∪{j}) + v(A) ≥ 0`
/// with `i < j` outside `A` and `⇓i, ⇓j ⊆ A` (0-based players).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetTriple {
    pub a: Coalition,
    pub i: usize,
    pub j: usize,
}

impl FacetTriple {
    /// `A∪{i,j}`, `A∪{i}`, `A∪{j}`, `A` with coefficients `+1, −1, −1, +1`.
    pub fn terms(&self) -> [(Coalition, i64); 4] {
        let a = self.a;
        [
            (a.with(self.i).with(self.j), 1),
            (a.with(self.i), -1),
            (a.with(self.j), -1),
            (a, 1),
        ]
    }

    /// Left-hand side at `v`; negative means violated.
    pub fn slack<T: Scalar>(&self, v: &Game<T>) -> T {
        self.terms()
            .iter()
            .fold(T::zero(), |s, &(c, k)| s + v.v(c).clone() * T::from_i64(k))
    }

    /// Coefficient vector over lattice elements (canonical order).
    pub fn row<T: Scalar>(&self, lattice: &DownSetLattice) -> Vec<T> {
        let mut row = vec![T::zero(); lattice.len()];
        for (c, k) in self.terms() {
            let idx = lattice.index_of(c).expect("facet triple outside the lattice");
            row[idx] = row[idx].clone() + T::from_i64(k);
        }
        row
    }

    /// `v(A∪{i,j}) + v(A) >= v(A∪{i}) + v(A∪{j})` in shorthand, with the
    /// `v(∅)` term dropped.
    pub fn render(&self, n: usize) -> String {
        let [top, left, right, bottom] = self.terms();
        let term = |c: Coalition| format!("v({})", c.shorthand(n));
        let mut lhs = term(top.0);
        if !bottom.0.is_empty() {
            lhs = format!("{lhs} + {}", term(bottom.0));
        }
        format!("{lhs} >= {} + {}", term(left.0), term(right.0))
    }
}

impl Serialize for FacetTriple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FacetTriple", 3)?;
        s.serialize_field("A", &self.a)?;
        s.serialize_field("i", &(self.i + 1))?;
        s.serialize_field("j", &(self.j + 1))?;
        s.end()
    }
}

/// All facet triples: `A ∈ L`, `i < j` not in `A`, `⇓i ⊆ A`, `⇓j ⊆ A`.
/// Sorted by `A` canonically, then `(i, j)`.
pub fn facet_triples(lattice: &DownSetLattice) -> Vec<FacetTriple> {
    let mut out = Vec::new();
    for &a in lattice.elements() {
        let addable: Vec<usize> = lattice.addable(a).collect();
        for (k, &i) in addable.iter().enumerate() {
            for &j in &addable[k + 1..] {
                out.push(FacetTriple { a, i, j });
            }
        }
    }
    out
}

/// The perturbation game of the classical non-redundancy argument:
/// `ε` at `A∪{i}`; `0` on proper subsets and proper supersets of `A∪{i}` and
/// at `A∪{j}`; `−ε` elsewhere.
pub fn perturbation_witness<T: Scalar>(
    lattice: &Arc<DownSetLattice>,
    triple: &FacetTriple,
    epsilon: &T,
) -> Game<T> {
    let ai = triple.a.with(triple.i);
    let aj = triple.a.with(triple.j);
    Game::from_fn(lattice, |b| {
        if b == ai {
            epsilon.clone()
        } else if b.is_proper_subset(ai) || ai.is_proper_subset(b) || b == aj {
            T::zero()
        } else {
            -epsilon.clone()
        }
    })
    .expect("∅ is a proper subset of A∪{i}")
}

/// Triples whose inequality `v` violates.
pub fn violated_triples<T: Scalar>(v: &Game<T>, triples: &[FacetTriple]) -> Vec<FacetTriple> {
    triples
        .iter()
        .filter(|t| t.slack(v).is_negative())
        .copied()
        .collect()
}

/// Whether the rays tight at `triple` span a hyperplane of the cone, i.e. the
/// inequality defines a facet of the cone generated by `rays`.
pub fn facet_is_irredundant<T: Scalar>(
    coords: &Coordinates,
    rays: &[Game<T>],
    triple: &FacetTriple,
) -> bool {
    let tight: Vec<Vec<T>> = rays
        .iter()
        .filter(|r| triple.slack(*r).is_zero())
        .map(|r| coords.project(r))
        .collect();
    let dim = coords.dim();
    if dim == 0 {
        return false;
    }
    if tight.is_empty() {
        return dim == 1;
    }
    Matrix::from_rows(dim, tight).unwrap().rank() == dim - 1
}

/// A game violating `triple` and satisfying every other inequality in
/// `triples`: the sum of the rays on the facet, pushed off it along a ray
/// outside the facet by the largest step that keeps the other inequalities.
pub fn separating_game<T: Scalar>(
    rays: &[Game<T>],
    triples: &[FacetTriple],
    triple: &FacetTriple,
) -> Option<Game<T>> {
    let lattice = rays.first()?.lattice().clone();
    let rows: Vec<Vec<T>> = triples.iter().map(|t| t.row(&lattice)).collect();
    let own = triples.iter().position(|t| t == triple)?;
    let on_facet = rays.iter().filter(|r| triple.slack(*r).is_zero());
    let base = on_facet.fold(Game::zero(&lattice), |s, r| &s + r);
    for off in rays.iter().filter(|r| !triple.slack(*r).is_zero()) {
        let mut step: Option<T> = None;
        let mut blocked = false;
        for (k, row) in rows.iter().enumerate() {
            if k == own {
                continue;
            }
            let push = dot(row, off.values());
            if !push.is_positive() {
                continue;
            }
            let room = dot(row, base.values());
            if !room.is_positive() {
                blocked = true;
                break;
            }
            let t = room / push;
            step = Some(match step {
                Some(s) if s <= t => s,
                _ => t,
            });
        }
        if blocked {
            continue;
        }
        let t = step.unwrap_or_else(T::one);
        let candidate = &base - &off.scale(&t);
        if violated_triples(&candidate, triples) == [*triple] {
            return Some(candidate);
        }
    }
    None
}
