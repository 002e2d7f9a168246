use thiserror::Error;

use crate::poset::Coalition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player {player} is out of range 1..={n}")]
    Index { player: usize, n: usize },

    #[error("cover relation induces a cycle through players {a} and {b}")]
    Cycle { a: usize, b: usize },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("{what} has {count} elements, exceeding the cap of {cap}")]
    Size { what: &'static str, count: usize, cap: usize },

    #[error("coalition {0} is not an element of the lattice")]
    NotInLattice(Coalition),

    #[error("coalition {a} is not contained in {b}")]
    NotComparable { a: Coalition, b: Coalition },

    #[error("the unanimity game needs a nonempty coalition")]
    EmptyCoalition,

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("game is not supermodular")]
    NotSupermodular,

    #[error("games are defined on different lattices")]
    LatticeMismatch,

    #[error("game must vanish on the empty coalition")]
    NonzeroAtEmpty,

    #[error("inconsistent point configuration: {0}")]
    Consistency(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
