//! Marginal vectors, tight sets and the core.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Index;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::lattice::{DownSetLattice, MaximalChain, Permutation};
use crate::poset::Coalition;
use crate::scalar::Scalar;
use crate::Rational;

/// A payoff vector `x ∈ Qⁿ`, indexed by 0-based player.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PayoffVector<T = Rational>(pub Vec<T>);

impl<T: Scalar> PayoffVector<T> {
    pub fn zeros(n: usize) -> Self {
        PayoffVector(vec![T::zero(); n])
    }

    /// `x(A) = Σ_{i∈A} xᵢ`.
    pub fn total(&self, a: Coalition) -> T {
        a.players().fold(T::zero(), |s, i| s + self.0[i].clone())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

impl<T> Index<usize> for PayoffVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: fmt::Display> fmt::Display for PayoffVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl<T: fmt::Display> fmt::Debug for PayoffVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: fmt::Display> Serialize for PayoffVector<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|v| v.to_string()))
    }
}

/// A payoff vector for every compatible permutation.
#[derive(Clone, PartialEq, Eq)]
pub struct PointConfiguration<T = Rational> {
    pub entries: BTreeMap<Permutation, PayoffVector<T>>,
}

impl<T: fmt::Display> fmt::Debug for PointConfiguration<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl<T: Scalar> PointConfiguration<T> {
    pub fn get(&self, perm: &Permutation) -> Option<&PayoffVector<T>> {
        self.entries.get(perm)
    }

    /// Pointwise `self + other` (same domain assumed).
    pub fn add(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(p, x)| {
                let y = &other.entries[p];
                let sum = x.0.iter().zip(&y.0).map(|(a, b)| a.clone() + b.clone()).collect();
                (p.clone(), PayoffVector(sum))
            })
            .collect();
        PointConfiguration { entries }
    }

    pub fn scale(&self, factor: &T) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(p, x)| {
                (p.clone(), PayoffVector(x.0.iter().map(|v| v.clone() * factor.clone()).collect()))
            })
            .collect();
        PointConfiguration { entries }
    }
}

/// Tight sets `T^π(v)` and zero coordinates `N^π(v)` of one permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TightFamily {
    pub perm: Permutation,
    pub tight: BTreeSet<Coalition>,
    pub zero_players: Coalition,
}

fn check_chain<T: Scalar>(v: &Game<T>, chain: &MaximalChain) -> Result<()> {
    if chain.sets.len() != v.lattice().n() + 1 || chain.sets.iter().any(|&s| !v.lattice().contains(s)) {
        return Err(Error::Consistency(format!(
            "chain of {} does not belong to the game's lattice",
            chain.perm
        )));
    }
    Ok(())
}

/// `x^{v,π}_{π(i)} = v(A_i) − v(A_{i−1})`.
pub fn marginal_vector<T: Scalar>(v: &Game<T>, chain: &MaximalChain) -> Result<PayoffVector<T>> {
    check_chain(v, chain)?;
    let mut x = PayoffVector::zeros(v.lattice().n());
    for rank in 0..chain.perm.len() {
        let player = chain.perm.player_at(rank);
        x.0[player] = v.at(chain.elements[rank + 1]).clone() - v.at(chain.elements[rank]).clone();
    }
    Ok(x)
}

/// The payoff array `π ↦ x^{v,π}`.
pub fn payoff_array<T: Scalar>(v: &Game<T>) -> Result<PointConfiguration<T>> {
    let chains = v.lattice().maximal_chains()?;
    let entries = chains
        .iter()
        .map(|c| Ok((c.perm.clone(), marginal_vector(v, c)?)))
        .collect::<Result<_>>()?;
    Ok(PointConfiguration { entries })
}

/// Membership of each lattice element in `T^π(v)` given `x = x^{v,π}`.
pub(crate) fn tight_mask<T: Scalar>(v: &Game<T>, x: &PayoffVector<T>) -> Vec<bool> {
    v.lattice()
        .elements()
        .iter()
        .zip(v.values())
        .map(|(&a, val)| x.total(a) == *val)
        .collect()
}

/// `T^π(v) = {A ∈ L | v(A) = x^{v,π}(A)}`.
pub fn tight_sets<T: Scalar>(v: &Game<T>, chain: &MaximalChain) -> Result<BTreeSet<Coalition>> {
    let x = marginal_vector(v, chain)?;
    Ok(v.lattice()
        .elements()
        .iter()
        .zip(tight_mask(v, &x))
        .filter(|(_, t)| *t)
        .map(|(&a, _)| a)
        .collect())
}

/// `N^π(v) = {i | x^{v,π}_i = 0}`.
pub fn zero_coords<T: Scalar>(v: &Game<T>, chain: &MaximalChain) -> Result<Coalition> {
    let x = marginal_vector(v, chain)?;
    Ok(zero_players(&x))
}

pub(crate) fn zero_players<T: Scalar>(x: &PayoffVector<T>) -> Coalition {
    x.0.iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .fold(Coalition::EMPTY, |s, (i, _)| s.with(i))
}

/// Tight families for every compatible permutation, in chain order.
pub fn tight_families<T: Scalar>(v: &Game<T>) -> Result<Vec<TightFamily>> {
    let chains = v.lattice().maximal_chains()?;
    chains
        .iter()
        .map(|c| {
            Ok(TightFamily {
                perm: c.perm.clone(),
                tight: tight_sets(v, c)?,
                zero_players: zero_coords(v, c)?,
            })
        })
        .collect()
}

/// `x(N) = v(N)` and `x(A) ≥ v(A)` for every `A ∈ L`.
pub fn core_contains<T: Scalar>(v: &Game<T>, x: &PayoffVector<T>) -> bool {
    let l = v.lattice();
    if x.len() != l.n() || x.total(l.element(l.top())) != *v.at(l.top()) {
        return false;
    }
    l.elements()
        .iter()
        .zip(v.values())
        .all(|(&a, val)| x.total(a) >= *val)
}

/// Constraint `x(A) ≥ value` of the core, or `x(N) = value` when `equality`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreConstraint<T: fmt::Display = Rational> {
    pub coalition: Coalition,
    #[serde(serialize_with = "display_string")]
    pub value: T,
    pub equality: bool,
}

fn display_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// H-representation of the core: the efficiency equation followed by one
/// inequality per nonempty proper coalition.
pub fn core_constraints<T: Scalar>(v: &Game<T>) -> Vec<CoreConstraint<T>> {
    let l = v.lattice();
    let mut out = vec![CoreConstraint {
        coalition: l.element(l.top()),
        value: v.at(l.top()).clone(),
        equality: true,
    }];
    for k in 1..l.top() {
        out.push(CoreConstraint { coalition: l.element(k), value: v.at(k).clone(), equality: false });
    }
    out
}

/// Vertices of the core of a supermodular game: the distinct marginal
/// vectors, lexicographically sorted.
pub fn core_vertices<T: Scalar>(v: &Game<T>) -> Result<Vec<PayoffVector<T>>> {
    if !v.is_supermodular() {
        return Err(Error::NotSupermodular);
    }
    Ok(marginal_set(v)?.into_iter().collect())
}

/// Distinct marginal vectors of any game.
pub fn marginal_set<T: Scalar>(v: &Game<T>) -> Result<BTreeSet<PayoffVector<T>>> {
    let chains = v.lattice().maximal_chains()?;
    chains.iter().map(|c| marginal_vector(v, c)).collect()
}

/// `min_π x^{v,π}(A)`.
pub fn lower_envelope<T: Scalar>(v: &Game<T>, a: Coalition) -> Result<T> {
    v.lattice().require(a)?;
    let chains = v.lattice().maximal_chains()?;
    let mut best: Option<T> = None;
    for c in chains.iter() {
        let t = marginal_vector(v, c)?.total(a);
        best = Some(match best {
            Some(b) if b <= t => b,
            _ => t,
        });
    }
    Ok(best.expect("a lattice has at least one maximal chain"))
}

/// Reconstructs the 0-normalized game whose payoff array is `y`.
///
/// Requires agreement `y^π(A) = y^σ(A)` whenever `A` lies on both chains, and
/// `y^π_i = 0` whenever `↓i` lies on the chain of `π`.
pub fn game_from_configuration<T: Scalar>(
    lattice: &Arc<DownSetLattice>,
    y: &PointConfiguration<T>,
) -> Result<Game<T>> {
    let chains = lattice.maximal_chains()?;
    if y.entries.len() != chains.len() {
        return Err(Error::Consistency(format!(
            "configuration has {} permutations, the lattice has {}",
            y.entries.len(),
            chains.len()
        )));
    }
    let n = lattice.n();
    let mut values: Vec<Option<(T, &Permutation)>> = vec![None; lattice.len()];
    for c in chains.iter() {
        let Some(yp) = y.get(&c.perm) else {
            return Err(Error::Consistency(format!("permutation {} is missing", c.perm)));
        };
        if yp.len() != n {
            return Err(Error::Dimension { expected: n, got: yp.len() });
        }
        for (&k, &a) in c.elements.iter().zip(&c.sets) {
            let t = yp.total(a);
            match &values[k] {
                Some((prev, sigma)) if *prev != t => {
                    return Err(Error::Consistency(format!(
                        "agreement fails: y^{}({}) = {} but y^{}({}) = {}",
                        sigma,
                        a,
                        prev,
                        c.perm,
                        a,
                        t
                    )));
                }
                Some(_) => {}
                None => values[k] = Some((t, &c.perm)),
            }
        }
        for i in 0..n {
            if c.elements.contains(&lattice.principal(i)) && !yp[i].is_zero() {
                return Err(Error::Consistency(format!(
                    "zero condition fails: y^{}_{} = {} although ↓{} is on the chain",
                    c.perm,
                    i + 1,
                    yp[i],
                    i + 1
                )));
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("every element lies on a maximal chain").0)
        .collect();
    Game::from_values(lattice, values)
}

/// A nonzero recession direction of every nonempty core, `e_i − e_j` for the
/// first strict relation `i ≺ j`; `None` iff the lattice is Boolean.
pub fn unboundedness_witness<T: Scalar>(lattice: &DownSetLattice) -> Option<PayoffVector<T>> {
    let poset = lattice.poset();
    let n = poset.n();
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| poset.lt(i, j))?;
    let mut x = PayoffVector::zeros(n);
    x.0[i] = T::one();
    x.0[j] = -T::one();
    Some(x)
}
