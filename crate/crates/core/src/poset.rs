//! Finite posets of players and coalitions as bit sets.
//!
//! Player numbering: the library indexes players from 0 (player `k` is bit
//! `k` of a [`Coalition`]). Everything a user sees is 1-based: cover pairs in
//! poset files, printed coalitions such as `[2,3,4]`, and permutation strings
//! such as `2314`. The conversions live in [`Poset::from_covers`],
//! [`Coalition::from_players`], [`Coalition::players_1based`] and the
//! `Display` impls.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of players.
pub const MAX_PLAYERS: usize = 64;

/// A subset of players, bit `k` set iff player `k` (0-based) belongs.
///
/// Ordered canonically: by cardinality, then by the numeric value of the
/// bit vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1u64 << player)
    }

    /// Builds a coalition from 1-based player numbers.
    pub fn from_players(players: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &p in players {
            if p == 0 || p > n {
                return Err(Error::Index { player: p, n });
            }
            bits |= 1u64 << (p - 1);
        }
        Ok(Coalition(bits))
    }

    pub fn contains(self, player: usize) -> bool {
        player < 64 && self.0 >> player & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1u64 << player)
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1u64 << player))
    }

    pub fn union(self, other: Self) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self != other && self.is_subset(other)
    }

    /// Neither contains the other.
    pub fn incomparable(self, other: Self) -> bool {
        !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// 0-based members in increasing order.
    pub fn players(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(p)
        })
    }

    pub fn players_1based(self) -> Vec<usize> {
        self.players().map(|p| p + 1).collect()
    }

    /// Compact notation: `∅`, `N` for the grand coalition, otherwise the
    /// concatenated player numbers (`234`), comma separated when `n >= 10`.
    pub fn shorthand(self, n: usize) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        if self == Coalition::full(n) {
            return "N".to_string();
        }
        let players = self.players_1based();
        let parts: Vec<String> = players.iter().map(|p| p.to_string()).collect();
        if n >= 10 {
            parts.join(",")
        } else {
            parts.concat()
        }
    }

    /// Parses `[2,3]`, `{2,3}`, `2,3`, `23` (only when `n < 10`), `[]`, `∅`
    /// or `N`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if t == "N" {
            return Ok(Coalition::full(n));
        }
        if t == "∅" {
            return Ok(Coalition::EMPTY);
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| t.strip_prefix('{').and_then(|s| s.strip_suffix('}')))
            .unwrap_or(t)
            .trim();
        if inner.is_empty() {
            return Ok(Coalition::EMPTY);
        }
        let bad = || Error::Parse(format!("cannot parse coalition {text:?}"));
        let players: Vec<usize> = if inner.contains(',') || inner.contains(' ') {
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else if n < 10 {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        } else {
            vec![inner.parse::<usize>().map_err(|_| bad())?]
        };
        Coalition::from_players(&players, n)
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Coalition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.players().map(|p| p + 1))
    }
}

/// A partial order on players `0..n`, stored as its full reflexive-transitive
/// closure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `down[i]` = ↓i, the players below or equal to `i`.
    down: Vec<Coalition>,
    /// `up[i]` = players above or equal to `i`.
    up: Vec<Coalition>,
}

impl Poset {
    /// Builds the poset generated by cover pairs `(i, j)` meaning `i ≺ j`,
    /// with 1-based players.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::check_n(n)?;
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in covers {
            for p in [i, j] {
                if p == 0 || p > n {
                    return Err(Error::Index { player: p, n });
                }
            }
            if i == j {
                return Err(Error::Cycle { a: i, b: j });
            }
            leq[i - 1][j - 1] = true;
        }
        Self::from_relation(leq, true)
    }

    /// Builds a poset from a full relation matrix (`leq[i][j]` ⇔ `i ⪯ j`,
    /// 0-based). The matrix must already be reflexive, antisymmetric and
    /// transitive.
    pub fn from_matrix(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        Self::check_n(n)?;
        if leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPoset("relation matrix is not square".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidPoset(format!("not reflexive at {}", i + 1)));
            }
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: {} ⪯ {} ⪯ {}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Self::from_relation(leq, false)
    }

    /// The flat poset (antichain) on `n` players, whose down-set lattice is
    /// the Boolean lattice.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_covers(n, &[])
    }

    /// The chain `1 ≺ 2 ≺ … ≺ n`.
    pub fn chain(n: usize) -> Result<Self> {
        let covers: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_covers(n, &covers)
    }

    fn check_n(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidPoset("need at least one player".into()));
        }
        if n > MAX_PLAYERS {
            return Err(Error::InvalidPoset(format!(
                "{n} players exceeds the maximum of {MAX_PLAYERS}"
            )));
        }
        Ok(())
    }

    fn from_relation(mut leq: Vec<Vec<bool>>, close: bool) -> Result<Self> {
        let n = leq.len();
        if close {
            for k in 0..n {
                for i in 0..n {
                    if leq[i][k] {
                        for j in 0..n {
                            if leq[k][j] {
                                leq[i][j] = true;
                            }
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle { a: i + 1, b: j + 1 });
                }
            }
        }
        let mut down = vec![Coalition::EMPTY; n];
        let mut up = vec![Coalition::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    down[j] = down[j].with(i);
                    up[i] = up[i].with(j);
                }
            }
        }
        Ok(Poset { n, down, up })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `i ⪯ j` (0-based).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    /// `i ≺ j` (0-based).
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn is_down_set(&self, s: Coalition) -> bool {
        s.is_subset(self.grand_coalition()) && s.players().all(|i| self.down[i].is_subset(s))
    }

    /// ↓i for a 0-based player.
    pub fn principal_down_set(&self, i: usize) -> Result<Coalition> {
        self.down
            .get(i)
            .copied()
            .ok_or(Error::Index { player: i + 1, n: self.n })
    }

    /// ⇓i = ↓i ∖ {i}.
    pub fn strict_down_set(&self, i: usize) -> Result<Coalition> {
        Ok(self.principal_down_set(i)?.without(i))
    }

    /// Players above or equal to `i`.
    pub fn principal_up_set(&self, i: usize) -> Result<Coalition> {
        self.up
            .get(i)
            .copied()
            .ok_or(Error::Index { player: i + 1, n: self.n })
    }

    /// Members of `s` that are pairwise incomparable.
    pub fn is_antichain(&self, s: Coalition) -> bool {
        s.players()
            .all(|i| self.down[i].intersection(s) == Coalition::singleton(i))
    }

    /// Elements of `s` maximal within `s`.
    pub fn maximal_in(&self, s: Coalition) -> Coalition {
        s.players()
            .filter(|&i| self.up[i].intersection(s) == Coalition::singleton(i))
            .fold(Coalition::EMPTY, Coalition::with)
    }

    /// The cover relation (transitive reduction) as 1-based pairs `(i, j)`
    /// with `i ≺ j`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for i in 0..self.n {
                if !self.lt(i, j) {
                    continue;
                }
                let between = (0..self.n).any(|k| k != i && k != j && self.lt(i, k) && self.lt(k, j));
                if !between {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when no two distinct players are comparable.
    pub fn is_flat(&self) -> bool {
        (0..self.n).all(|i| self.down[i] == Coalition::singleton(i))
    }

    /// The closure as a boolean matrix, `m[i][j]` ⇔ `i ⪯ j` (0-based).
    pub fn relation_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.leq(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers())
            .finish()
    }
}
