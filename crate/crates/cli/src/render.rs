//! JSON values for library objects. `serde_json::Value` keeps object keys
//! sorted, so everything printed through it is canonical.

use serde::Serialize;
use serde_json::{json, Map, Value};
use supermod::{Coalition, DownSetLattice, PayoffVector, Poset, RatGame};

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

pub fn coalition(c: Coalition) -> Value {
    to_value(&c)
}

pub fn poset(p: &Poset) -> Value {
    json!({ "n": p.n(), "covers": p.covers() })
}

/// Nonzero values keyed like a game file, e.g. `{"[2,4]": "1"}`.
pub fn values(g: &RatGame) -> Value {
    let map: Map<String, Value> = g
        .support()
        .into_iter()
        .map(|(a, v)| (a.to_string(), Value::String(v.to_string())))
        .collect();
    Value::Object(map)
}

/// A complete game file, loadable again.
pub fn game(g: &RatGame) -> Value {
    json!({ "poset": poset(g.lattice().poset()), "values": values(g) })
}

pub fn payoff(x: &PayoffVector) -> Value {
    to_value(x)
}

/// `v(24)=1, v(234)=1, v(N)=1`, or `0` for the zero game.
pub fn game_line(g: &RatGame) -> String {
    g.to_string()
}

pub fn shorthand(l: &DownSetLattice, c: Coalition) -> String {
    c.shorthand(l.n())
}

pub fn set_line(l: &DownSetLattice, sets: impl IntoIterator<Item = Coalition>) -> String {
    let parts: Vec<String> = sets.into_iter().map(|c| shorthand(l, c)).collect();
    format!("{{{}}}", parts.join(", "))
}
