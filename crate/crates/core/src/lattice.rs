//! The distributive lattice of down-sets of a poset.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::{Coalition, Poset};

/// Caps on the size of materialized structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_lattice: usize,
    pub max_chains: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_lattice: 1 << 20,
            max_chains: 10_000_000,
        }
    }
}

/// Lattices up to this size have the Birkhoff correspondence re-verified
/// during construction.
const VERIFY_AT_BUILD: usize = 512;

/// A join-irreducible element `↓player` and its unique lower cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JoinIrreducible {
    pub element: usize,
    pub predecessor: usize,
    pub player: usize,
}

/// A compatible permutation, stored as the 0-based player sequence
/// `(π(1), …, π(n))`. Printed 1-based, e.g. `2314`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut seen = vec![false; n];
        for &p in &sequence {
            if p >= n || seen[p] {
                return Err(Error::Parse(format!("{sequence:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Permutation(sequence))
    }

    /// The player of rank `rank` (0-based rank).
    pub fn player_at(&self, rank: usize) -> usize {
        self.0[rank]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rank of each player, `rank[p]` is the 0-based position of `p`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.0.len()];
        for (pos, &p) in self.0.iter().enumerate() {
            r[p] = pos;
        }
        r
    }

    /// Whether `π⁻¹` is order preserving from the poset to the ranks.
    pub fn is_compatible(&self, poset: &Poset) -> bool {
        if self.0.len() != poset.n() {
            return false;
        }
        let ranks = self.ranks();
        (0..poset.n()).all(|i| (0..poset.n()).all(|j| !poset.lt(i, j) || ranks[i] < ranks[j]))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() >= 10 { "," } else { "" };
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{}", p + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2314`, `2,3,1,4`, `(2 3 1 4)` or `[2,3,1,4]`, 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let bad = || Error::Parse(format!("cannot parse permutation {s:?}"));
        let players: Vec<usize> = if t.contains(',') || t.contains(' ') {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if players.contains(&0) {
            return Err(bad());
        }
        Permutation::new(players.into_iter().map(|p| p - 1).collect())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A maximal chain `∅ = A₀ ⊂ A₁ ⊂ … ⊂ Aₙ = N` with its compatible permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalChain {
    /// Lattice indices of `A₀, …, Aₙ`.
    pub elements: Vec<usize>,
    pub sets: Vec<Coalition>,
    pub perm: Permutation,
}

impl MaximalChain {
    pub fn contains(&self, set: Coalition) -> bool {
        self.sets.get(set.len()) == Some(&set)
    }
}

/// All down-sets of a poset, canonically sorted (cardinality, then bits).
pub struct DownSetLattice {
    poset: Poset,
    limits: Limits,
    elements: Vec<Coalition>,
    index: HashMap<Coalition, usize>,
    join_irreducibles: Vec<JoinIrreducible>,
    /// `principal[i]` is the index of ↓i.
    principal: Vec<usize>,
    chains: OnceLock<Arc<[MaximalChain]>>,
    mobius_rows: RwLock<HashMap<usize, Arc<[i64]>>>,
}

impl fmt::Debug for DownSetLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DownSetLattice")
            .field("poset", &self.poset)
            .field("elements", &self.elements)
            .finish()
    }
}

/// Materializes `D(N, ⪯)` with the default [`Limits`].
pub fn build_lattice(poset: &Poset) -> Result<Arc<DownSetLattice>> {
    build_lattice_with(poset, Limits::default())
}

pub fn build_lattice_with(poset: &Poset, limits: Limits) -> Result<Arc<DownSetLattice>> {
    let n = poset.n();
    let strict: Vec<Coalition> = (0..n)
        .map(|i| poset.strict_down_set(i))
        .collect::<Result<_>>()?;

    // Breadth-first closure: a down-set grows by any player whose strict
    // down-set it already contains.
    let mut seen: HashSet<Coalition> = HashSet::new();
    let mut frontier = vec![Coalition::EMPTY];
    seen.insert(Coalition::EMPTY);
    let mut elements = vec![Coalition::EMPTY];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in frontier {
            for i in 0..n {
                if a.contains(i) || !strict[i].is_subset(a) {
                    continue;
                }
                let b = a.with(i);
                if seen.insert(b) {
                    if seen.len() > limits.max_lattice {
                        return Err(Error::Size {
                            what: "lattice",
                            count: seen.len(),
                            cap: limits.max_lattice,
                        });
                    }
                    elements.push(b);
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    elements.sort_unstable();
    let index: HashMap<Coalition, usize> =
        elements.iter().enumerate().map(|(k, &a)| (a, k)).collect();

    let mut join_irreducibles = Vec::new();
    for (k, &a) in elements.iter().enumerate().skip(1) {
        let top = poset.maximal_in(a);
        if top.len() == 1 {
            let player = top.players().next().unwrap();
            join_irreducibles.push(JoinIrreducible {
                element: k,
                predecessor: index[&a.without(player)],
                player,
            });
        }
    }
    let principal = (0..n)
        .map(|i| index[&poset.principal_down_set(i).unwrap()])
        .collect();

    let lattice = DownSetLattice {
        poset: poset.clone(),
        limits,
        elements,
        index,
        join_irreducibles,
        principal,
        chains: OnceLock::new(),
        mobius_rows: RwLock::new(HashMap::new()),
    };
    if lattice.len() <= VERIFY_AT_BUILD {
        lattice.verify_birkhoff()?;
    }
    Ok(Arc::new(lattice))
}

impl DownSetLattice {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Coalition] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> Coalition {
        self.elements[k]
    }

    pub fn index_of(&self, a: Coalition) -> Option<usize> {
        self.index.get(&a).copied()
    }

    pub fn require(&self, a: Coalition) -> Result<usize> {
        self.index_of(a).ok_or(Error::NotInLattice(a))
    }

    pub fn contains(&self, a: Coalition) -> bool {
        self.index.contains_key(&a)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn join_irreducibles(&self) -> &[JoinIrreducible] {
        &self.join_irreducibles
    }

    pub fn is_join_irreducible(&self, k: usize) -> bool {
        self.join_irreducibles.iter().any(|j| j.element == k)
    }

    /// Index of ↓i.
    pub fn principal(&self, player: usize) -> usize {
        self.principal[player]
    }

    /// The lattice is `2^N`, i.e. the poset is flat.
    pub fn is_boolean(&self) -> bool {
        self.poset.is_flat()
    }

    /// Players that may be added to `a` while staying a down-set.
    pub fn addable(&self, a: Coalition) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&i| {
            !a.contains(i) && self.poset.strict_down_set(i).unwrap().is_subset(a)
        })
    }

    /// Upper covers of element `k` as `(player, index)`, by player.
    pub fn upper_covers(&self, k: usize) -> Vec<(usize, usize)> {
        let a = self.elements[k];
        self.addable(a).map(|i| (i, self.index[&a.with(i)])).collect()
    }

    /// Lower covers of element `k` as `(player, index)`, by player.
    pub fn lower_covers(&self, k: usize) -> Vec<(usize, usize)> {
        let a = self.elements[k];
        self.poset
            .maximal_in(a)
            .players()
            .map(|i| (i, self.index[&a.without(i)]))
            .collect()
    }

    /// Elements of the order interval `[a, b]`, canonically sorted.
    pub fn interval(&self, a: Coalition, b: Coalition) -> Vec<usize> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, &c)| a.is_subset(c) && c.is_subset(b))
            .map(|(k, _)| k)
            .collect()
    }

    /// `|[a, b]| = 2^{|b∖a|}`, counted by enumeration.
    pub fn is_boolean_interval(&self, a: Coalition, b: Coalition) -> Result<bool> {
        self.require(a)?;
        self.require(b)?;
        if !a.is_subset(b) {
            return Err(Error::NotComparable { a, b });
        }
        let k = b.difference(a).len();
        Ok(k < 64 && self.interval(a, b).len() as u128 == 1u128 << k)
    }

    /// Same question answered from the poset: `b∖a` is an antichain.
    pub fn is_boolean_interval_by_antichain(&self, a: Coalition, b: Coalition) -> bool {
        a.is_subset(b) && self.poset.is_antichain(b.difference(a))
    }

    /// Möbius function `μ(x, y)`, via the Boolean-interval formula.
    pub fn mobius(&self, x: Coalition, y: Coalition) -> Result<i64> {
        self.require(x)?;
        self.require(y)?;
        Ok(self.mobius_fast(x, y))
    }

    pub(crate) fn mobius_fast(&self, x: Coalition, y: Coalition) -> i64 {
        if self.is_boolean_interval_by_antichain(x, y) {
            if y.difference(x).len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    /// Möbius function from its recursive definition. Rows `μ(x, ·)` are
    /// computed once and cached.
    pub fn mobius_recursive(&self, x: Coalition, y: Coalition) -> Result<i64> {
        let xi = self.require(x)?;
        let yi = self.require(y)?;
        Ok(self.mobius_row(xi)[yi])
    }

    fn mobius_row(&self, xi: usize) -> Arc<[i64]> {
        if let Some(row) = self.mobius_rows.read().unwrap().get(&xi) {
            return row.clone();
        }
        let x = self.elements[xi];
        let mut row = vec![0i64; self.len()];
        row[xi] = 1;
        // canonical order refines inclusion, so every proper subset of z is
        // finished before z
        let above: Vec<usize> = (xi + 1..self.len())
            .filter(|&k| x.is_subset(self.elements[k]))
            .collect();
        for (pos, &z) in above.iter().enumerate() {
            let zs = self.elements[z];
            let mut sum = row[xi];
            for &w in &above[..pos] {
                if self.elements[w].is_proper_subset(zs) {
                    sum += row[w];
                }
            }
            row[z] = -sum;
        }
        let row: Arc<[i64]> = row.into();
        self.mobius_rows.write().unwrap().insert(xi, row.clone());
        row
    }

    /// `F(a)`: indices of the join-irreducibles contained in `a`.
    pub fn birkhoff_map(&self, a: Coalition) -> Result<Vec<usize>> {
        self.require(a)?;
        Ok(self
            .join_irreducibles
            .iter()
            .filter(|j| self.elements[j.element].is_subset(a))
            .map(|j| j.element)
            .collect())
    }

    /// Checks the Birkhoff correspondences:
    /// `|J| = n`, `i ↦ ↓i` is an order isomorphism onto `J`, and `F` is
    /// injective and preserves `∪` and `∩`.
    pub fn verify_birkhoff(&self) -> Result<()> {
        let n = self.n();
        let fail = |msg: String| Err(Error::InvalidPoset(msg));
        if self.join_irreducibles.len() != n {
            return fail(format!("{} join-irreducibles for {n} players", self.join_irreducibles.len()));
        }
        for ji in &self.join_irreducibles {
            if self.elements[ji.element] != self.poset.principal_down_set(ji.player)? {
                return fail(format!("join-irreducible {} is not principal", self.elements[ji.element]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let sub = self.elements[self.principal[i]].is_subset(self.elements[self.principal[j]]);
                if sub != self.poset.leq(i, j) {
                    return fail(format!("↓ is not an order isomorphism at ({}, {})", i + 1, j + 1));
                }
            }
        }
        let images: Vec<u64> = self
            .elements
            .iter()
            .map(|&a| {
                self.join_irreducibles
                    .iter()
                    .filter(|j| self.elements[j.element].is_subset(a))
                    .fold(0u64, |m, j| m | 1 << j.player)
            })
            .collect();
        let distinct: HashSet<u64> = images.iter().copied().collect();
        if distinct.len() != images.len() {
            return fail("Birkhoff map is not injective".into());
        }
        for (ka, &a) in self.elements.iter().enumerate() {
            for (kb, &b) in self.elements.iter().enumerate() {
                let (Some(u), Some(m)) = (self.index_of(a.union(b)), self.index_of(a.intersection(b)))
                else {
                    return fail(format!("{a} and {b} not closed under ∪/∩"));
                };
                if images[u] != images[ka] | images[kb] || images[m] != images[ka] & images[kb] {
                    return fail(format!("Birkhoff map does not preserve ∪/∩ at {a}, {b}"));
                }
            }
        }
        Ok(())
    }

    /// Number of maximal chains (linear extensions), saturating.
    pub fn count_maximal_chains(&self) -> u128 {
        let mut paths = vec![0u128; self.len()];
        paths[0] = 1;
        for k in 0..self.len() {
            let p = paths[k];
            for (_, up) in self.upper_covers(k) {
                paths[up] = paths[up].saturating_add(p);
            }
        }
        paths[self.top()]
    }

    /// All maximal chains, lexicographic by permutation. Cached after the
    /// first call.
    pub fn maximal_chains(&self) -> Result<Arc<[MaximalChain]>> {
        if let Some(chains) = self.chains.get() {
            return Ok(chains.clone());
        }
        let count = self.count_maximal_chains();
        if count > self.limits.max_chains as u128 {
            return Err(Error::Size {
                what: "chain set",
                count: usize::try_from(count).unwrap_or(usize::MAX),
                cap: self.limits.max_chains,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut elements = vec![0usize];
        let mut perm = Vec::with_capacity(self.n());
        self.extend_chains(&mut elements, &mut perm, &mut out);
        let chains: Arc<[MaximalChain]> = out.into();
        Ok(self.chains.get_or_init(|| chains).clone())
    }

    fn extend_chains(&self, elements: &mut Vec<usize>, perm: &mut Vec<usize>, out: &mut Vec<MaximalChain>) {
        let last = *elements.last().unwrap();
        if last == self.top() {
            out.push(MaximalChain {
                elements: elements.clone(),
                sets: elements.iter().map(|&k| self.elements[k]).collect(),
                perm: Permutation(perm.clone()),
            });
            return;
        }
        for (player, up) in self.upper_covers(last) {
            elements.push(up);
            perm.push(player);
            self.extend_chains(elements, perm, out);
            elements.pop();
            perm.pop();
        }
    }

    /// The chain belonging to a compatible permutation.
    pub fn chain_of(&self, perm: &Permutation) -> Result<MaximalChain> {
        if !perm.is_compatible(&self.poset) {
            return Err(Error::Parse(format!("{perm} is not compatible with the poset")));
        }
        let mut acc = Coalition::EMPTY;
        let mut sets = vec![acc];
        for &p in perm.sequence() {
            acc = acc.with(p);
            sets.push(acc);
        }
        Ok(MaximalChain {
            elements: sets.iter().map(|s| self.index[s]).collect(),
            sets,
            perm: perm.clone(),
        })
    }

    /// Same poset, hence the same lattice.
    pub fn same_as(&self, other: &DownSetLattice) -> bool {
        std::ptr::eq(self, other) || self.poset == other.poset
    }
}
