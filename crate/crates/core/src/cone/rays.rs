use std::sync::Arc;


use crate::error::{Error, Result};
use crate::game::Game;
use crate::lattice::DownSetLattice;
use crate::qlin::{Matrix, RowSpace};
use crate::scalar::Scalar;

use super::dd::double_description;
use super::facets::facet_triples;

/// Coordinates on the space of 0-normalized games: one free coordinate per
/// lattice element that is neither `∅` nor join-irreducible. A
/// join-irreducible `A` takes the value of `A⁻`, so every element resolves to
/// a free coordinate or to zero.
#[derive(Clone, Debug)]
pub struct Coordinates {
    lattice: Arc<DownSetLattice>,
    /// `resolve[k]`: the free coordinate element `k` reads, if any.
    resolve: Vec<Option<usize>>,
    /// Lattice index of each free coordinate.
    free: Vec<usize>,
}

impl Coordinates {
    pub fn new(lattice: &Arc<DownSetLattice>) -> Self {
        let len = lattice.len();
        let mut predecessor: Vec<Option<usize>> = vec![None; len];
        for j in lattice.join_irreducibles() {
            predecessor[j.element] = Some(j.predecessor);
        }
        let mut resolve = vec![None; len];
        let mut free = Vec::new();
        // canonical order puts A⁻ before A
        for k in 1..len {
            resolve[k] = match predecessor[k] {
                Some(p) => resolve[p],
                None => {
                    free.push(k);
                    Some(free.len() - 1)
                }
            };
        }
        Coordinates { lattice: lattice.clone(), resolve, free }
    }

    /// `|L| − 1 − n`.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn lattice(&self) -> &Arc<DownSetLattice> {
        &self.lattice
    }

    /// Lattice indices of the free coordinates.
    pub fn free_elements(&self) -> &[usize] {
        &self.free
    }

    /// Coordinates of the 0-normalization of `v`.
    pub fn project<T: Scalar>(&self, v: &Game<T>) -> Vec<T> {
        let w = v.normalized();
        self.free.iter().map(|&k| w.at(k).clone()).collect()
    }

    /// The 0-normalized game with the given coordinates.
    pub fn lift<T: Scalar>(&self, x: &[T]) -> Result<Game<T>> {
        if x.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: x.len() });
        }
        let values = self
            .resolve
            .iter()
            .map(|r| r.map_or_else(T::zero, |c| x[c].clone()))
            .collect();
        Game::from_values(&self.lattice, values)
    }

    /// Rewrites a linear form over lattice elements as a form over the free
    /// coordinates (valid on 0-normalized games).
    pub fn reduce_row<T: Scalar>(&self, row: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        for (coef, r) in row.iter().zip(&self.resolve) {
            if let (Some(c), false) = (r, coef.is_zero()) {
                out[*c] = out[*c].clone() + coef.clone();
            }
        }
        out
    }
}

/// Minimal integer generators of the extreme rays of the cone of
/// 0-normalized supermodular games, sorted by value vector.
pub fn extreme_rays<T: Scalar>(lattice: &Arc<DownSetLattice>) -> Result<Vec<Game<T>>> {
    let cap = lattice.limits().max_lattice;
    if lattice.len() > cap {
        return Err(Error::Size { what: "lattice", count: lattice.len(), cap });
    }
    let coords = Coordinates::new(lattice);
    let rows: Vec<Vec<T>> = facet_triples(lattice)
        .iter()
        .map(|t| coords.reduce_row(&t.row::<T>(lattice)))
        .collect();
    let generators = double_description(coords.dim(), &rows);
    if !generators.lineality.is_empty() {
        return Err(Error::Consistency(format!(
            "cone of 0-normalized supermodular games has a {}-dimensional lineality space",
            generators.lineality.len()
        )));
    }
    let mut games = generators
        .rays
        .iter()
        .map(|x| coords.lift(x))
        .collect::<Result<Vec<_>>>()?;
    games.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(games)
}

/// Rank of the extreme-ray generators.
pub fn cone_dimension(lattice: &Arc<DownSetLattice>) -> Result<usize> {
    let rays = extreme_rays::<crate::Rational>(lattice)?;
    let coords = Coordinates::new(lattice);
    let mut span = RowSpace::new(coords.dim());
    for r in &rays {
        span.insert(coords.project(r));
    }
    Ok(span.rank())
}

/// Rank of a list of games as vectors over lattice elements.
pub fn game_rank<T: Scalar>(games: &[Game<T>]) -> usize {
    let Some(first) = games.first() else {
        return 0;
    };
    let cols = first.values().len();
    Matrix::from_rows(cols, games.iter().map(|g| g.values().to_vec()).collect())
        .map(|m| m.rank())
        .unwrap_or(0)
}
