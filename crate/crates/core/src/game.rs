//! Coalitional games on a down-set lattice.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::cone::facet_triples;
use crate::error::{Error, Result};
use crate::lattice::DownSetLattice;
use crate::poset::Coalition;
use crate::scalar::Scalar;
use crate::Rational;

/// A function on the lattice vanishing at `∅`. Values are stored in the
/// lattice's canonical element order.
#[derive(Clone)]
pub struct Game<T = Rational> {
    lattice: Arc<DownSetLattice>,
    values: Vec<T>,
}

impl<T: Scalar> Game<T> {
    pub fn zero(lattice: &Arc<DownSetLattice>) -> Self {
        Game { lattice: lattice.clone(), values: vec![T::zero(); lattice.len()] }
    }

    /// Values in canonical element order.
    pub fn from_values(lattice: &Arc<DownSetLattice>, values: Vec<T>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::Dimension { expected: lattice.len(), got: values.len() });
        }
        if !values[0].is_zero() {
            return Err(Error::NonzeroAtEmpty);
        }
        Ok(Game { lattice: lattice.clone(), values })
    }

    pub fn from_fn(lattice: &Arc<DownSetLattice>, f: impl Fn(Coalition) -> T) -> Result<Self> {
        let values = lattice.elements().iter().map(|&a| f(a)).collect();
        Self::from_values(lattice, values)
    }

    /// Unlisted coalitions get value 0.
    pub fn from_sparse(lattice: &Arc<DownSetLattice>, entries: &[(Coalition, T)]) -> Result<Self> {
        let mut g = Self::zero(lattice);
        for (a, v) in entries {
            let k = lattice.require(*a)?;
            if k == 0 && !v.is_zero() {
                return Err(Error::NonzeroAtEmpty);
            }
            g.values[k] = v.clone();
        }
        Ok(g)
    }

    /// `u_A(B) = 1` iff `A ⊆ B`.
    pub fn unanimity(lattice: &Arc<DownSetLattice>, a: Coalition) -> Result<Self> {
        lattice.require(a)?;
        if a.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        Self::from_fn(lattice, |b| if a.is_subset(b) { T::one() } else { T::zero() })
    }

    /// The additive game `m(A) = Σ_{i∈A} weights[i]`. Every modular game on
    /// a down-set lattice has this form.
    pub fn additive(lattice: &Arc<DownSetLattice>, weights: &[T]) -> Result<Self> {
        if weights.len() != lattice.n() {
            return Err(Error::Dimension { expected: lattice.n(), got: weights.len() });
        }
        Self::from_fn(lattice, |a| {
            a.players().fold(T::zero(), |s, i| s + weights[i].clone())
        })
    }

    /// The unique modular game taking `values[i]` at `↓i`.
    pub fn modular_from_join_irreducibles(lattice: &Arc<DownSetLattice>, values: &[T]) -> Result<Self> {
        let n = lattice.n();
        if values.len() != n {
            return Err(Error::Dimension { expected: n, got: values.len() });
        }
        // weights in order of |↓i| so that every strict predecessor is known
        let poset = lattice.poset();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| poset.principal_down_set(i).unwrap().len());
        let mut weights = vec![T::zero(); n];
        for i in order {
            let below = poset.strict_down_set(i)?;
            let s = below.players().fold(T::zero(), |s, j| s + weights[j].clone());
            weights[i] = values[i].clone() - s;
        }
        Self::additive(lattice, &weights)
    }

    pub fn lattice(&self) -> &Arc<DownSetLattice> {
        &self.lattice
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at element index `k`.
    pub fn at(&self, k: usize) -> &T {
        &self.values[k]
    }

    pub fn value(&self, a: Coalition) -> Result<&T> {
        Ok(&self.values[self.lattice.require(a)?])
    }

    /// Value at a coalition that must belong to the lattice.
    pub(crate) fn v(&self, a: Coalition) -> &T {
        &self.values[self.lattice.index_of(a).expect("coalition outside the lattice")]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn same_lattice(&self, other: &Game<T>) -> bool {
        self.lattice.same_as(&other.lattice)
    }

    pub fn checked_add(&self, other: &Game<T>) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn checked_sub(&self, other: &Game<T>) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Game<T>, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if !self.same_lattice(other) {
            return Err(Error::LatticeMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(Game { lattice: self.lattice.clone(), values })
    }

    pub fn scale(&self, factor: &T) -> Self {
        Game {
            lattice: self.lattice.clone(),
            values: self.values.iter().map(|v| v.clone() * factor.clone()).collect(),
        }
    }

    /// `v(A∪B) + v(A∩B) − v(A) − v(B)`.
    pub fn supermodular_gap(&self, a: Coalition, b: Coalition) -> T {
        self.v(a.union(b)).clone() + self.v(a.intersection(b)).clone()
            - self.v(a).clone()
            - self.v(b).clone()
    }

    /// First incomparable pair (canonical order) where supermodularity fails.
    pub fn supermodular_violation(&self) -> Option<(Coalition, Coalition)> {
        let el = self.lattice.elements();
        for (ka, &a) in el.iter().enumerate() {
            for &b in &el[ka + 1..] {
                if a.incomparable(b) && self.supermodular_gap(a, b).is_negative() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// All-pairs check. Comparable pairs hold trivially and are skipped.
    pub fn is_supermodular(&self) -> bool {
        self.supermodular_violation().is_none()
    }

    /// Checks only the local inequalities on facet triples `(A, i, j)`.
    pub fn is_supermodular_reduced(&self) -> bool {
        facet_triples(&self.lattice)
            .iter()
            .all(|t| !t.slack(self).is_negative())
    }

    pub fn is_modular(&self) -> bool {
        let el = self.lattice.elements();
        el.iter().enumerate().all(|(ka, &a)| {
            el[ka + 1..]
                .iter()
                .all(|&b| !a.incomparable(b) || self.supermodular_gap(a, b).is_zero())
        })
    }

    pub fn is_monotone(&self) -> bool {
        let el = self.lattice.elements();
        el.iter().enumerate().all(|(ka, &a)| {
            el.iter()
                .enumerate()
                .all(|(kb, &b)| !a.is_proper_subset(b) || self.values[ka] <= self.values[kb])
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// Möbius transform via the Boolean-interval formula:
    /// `v̂(B) = Σ_{S ⊆ max(B)} (−1)^{|S|} v(B∖S)`.
    pub fn mobius_transform(&self) -> Self {
        let poset = self.lattice.poset();
        let values = self
            .lattice
            .elements()
            .iter()
            .map(|&b| {
                let top: Vec<usize> = poset.maximal_in(b).players().collect();
                let mut s = T::zero();
                for mask in 0u64..1 << top.len() {
                    let mut c = b;
                    for (k, &p) in top.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            c = c.without(p);
                        }
                    }
                    if mask.count_ones() % 2 == 0 {
                        s = s + self.v(c).clone();
                    } else {
                        s = s - self.v(c).clone();
                    }
                }
                s
            })
            .collect();
        Game { lattice: self.lattice.clone(), values }
    }

    /// Möbius transform using the recursively defined Möbius function.
    pub fn mobius_transform_recursive(&self) -> Self {
        let l = &self.lattice;
        let values = l
            .elements()
            .iter()
            .map(|&b| {
                l.elements()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c.is_subset(b))
                    .fold(T::zero(), |s, (kc, &c)| {
                        let mu = l.mobius_recursive(c, b).unwrap();
                        if mu == 0 || self.values[kc].is_zero() {
                            s
                        } else {
                            s + self.values[kc].clone() * T::from_i64(mu)
                        }
                    })
            })
            .collect();
        Game { lattice: self.lattice.clone(), values }
    }

    /// Inverse transform: `v(A) = Σ_{B⊆A} v̂(B)`.
    pub fn from_mobius(coefficients: &Game<T>) -> Self {
        let l = &coefficients.lattice;
        let values = l
            .elements()
            .iter()
            .map(|&a| {
                l.elements()
                    .iter()
                    .zip(&coefficients.values)
                    .filter(|(&b, _)| b.is_subset(a))
                    .fold(T::zero(), |s, (_, c)| s + c.clone())
            })
            .collect();
        Game { lattice: l.clone(), values }
    }

    /// `v̂(A) = 0` for every join-irreducible `A`.
    pub fn is_zero_normalized(&self) -> bool {
        let hat = self.mobius_transform();
        self.lattice
            .join_irreducibles()
            .iter()
            .all(|j| hat.values[j.element].is_zero())
    }

    /// `v(A) = v(A⁻)` for every join-irreducible `A`.
    pub fn is_zero_normalized_by_predecessor(&self) -> bool {
        self.lattice
            .join_irreducibles()
            .iter()
            .all(|j| self.values[j.element] == self.values[j.predecessor])
    }

    /// Splits `v = w + m` with `w` 0-normalized and `m` modular, where
    /// `m = Σ_{B∈J} v̂(B)·u_B`.
    pub fn zero_normalize(&self) -> (Self, Self) {
        // v̂(↓i) = v(↓i) − v(⇓i), and u_{↓i}(A) = [i ∈ A] on down-sets
        let weights: Vec<T> = self
            .lattice
            .join_irreducibles()
            .iter()
            .fold(vec![T::zero(); self.lattice.n()], |mut w, j| {
                w[j.player] = self.values[j.element].clone() - self.values[j.predecessor].clone();
                w
            });
        let m = Self::additive(&self.lattice, &weights).expect("weights sized to n");
        let w = self.checked_sub(&m).expect("same lattice");
        (w, m)
    }

    /// The 0-normalized part `v*`.
    pub fn normalized(&self) -> Self {
        self.zero_normalize().0
    }

    /// Nonzero values as `(coalition, value)` in canonical order.
    pub fn support(&self) -> Vec<(Coalition, T)> {
        self.lattice
            .elements()
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&a, v)| (a, v.clone()))
            .collect()
    }

    /// Values as integers if they all are.
    pub fn integer_values(&self) -> Option<Vec<T::Int>> {
        self.values
            .iter()
            .map(|v| v.denom_int().is_one().then(|| v.numer_int().clone()))
            .collect()
    }
}

impl<T: Scalar> PartialEq for Game<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_lattice(other) && self.values == other.values
    }
}

impl<T: Scalar> Eq for Game<T> {}

impl<T: Scalar> fmt::Display for Game<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.lattice.n();
        let parts: Vec<String> = self
            .support()
            .iter()
            .map(|(a, v)| format!("v({})={}", a.shorthand(n), v))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

impl<T: Scalar> fmt::Debug for Game<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Game[{self}]")
    }
}

impl<T: Scalar> Add for &Game<T> {
    type Output = Game<T>;
    fn add(self, rhs: &Game<T>) -> Game<T> {
        self.checked_add(rhs).expect("games on different lattices")
    }
}

impl<T: Scalar> Sub for &Game<T> {
    type Output = Game<T>;
    fn sub(self, rhs: &Game<T>) -> Game<T> {
        self.checked_sub(rhs).expect("games on different lattices")
    }
}

impl<T: Scalar> Neg for &Game<T> {
    type Output = Game<T>;
    fn neg(self) -> Game<T> {
        Game {
            lattice: self.lattice.clone(),
            values: self.values.iter().map(|v| -v.clone()).collect(),
        }
    }
}
