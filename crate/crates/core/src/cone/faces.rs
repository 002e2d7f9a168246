use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::lattice::Permutation;
use crate::marginals::tight_sets;
use crate::poset::Coalition;
use crate::scalar::Scalar;

/// The tight sets `T^π(v)` of every compatible permutation, in chain order.
/// Two supermodular games lie in the relative interior of the same face
/// exactly when their core structures coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreStructure {
    pub tight: Vec<(Permutation, BTreeSet<Coalition>)>,
}

pub fn core_structure<T: Scalar>(v: &Game<T>) -> Result<CoreStructure> {
    if !v.is_supermodular() {
        return Err(Error::NotSupermodular);
    }
    let chains = v.lattice().maximal_chains()?;
    let tight = chains
        .iter()
        .map(|c| Ok((c.perm.clone(), tight_sets(v, c)?)))
        .collect::<Result<_>>()?;
    Ok(CoreStructure { tight })
}

/// Position of the face of `v` relative to the face of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceRelation {
    Equal,
    /// The face of `v` is a proper face of the face of `w`.
    Below,
    Above,
    Incomparable,
}

/// Faces compare in reverse to tight sets: `Below` iff `T^π(w) ⊆ T^π(v)` for
/// every `π`, with at least one inclusion strict.
pub fn face_compare<T: Scalar>(v: &Game<T>, w: &Game<T>) -> Result<FaceRelation> {
    if !v.same_lattice(w) {
        return Err(Error::LatticeMismatch);
    }
    let tv = core_structure(v)?;
    let tw = core_structure(w)?;
    let (mut w_in_v, mut v_in_w) = (true, true);
    for ((_, a), (_, b)) in tv.tight.iter().zip(&tw.tight) {
        w_in_v &= b.is_subset(a);
        v_in_w &= a.is_subset(b);
    }
    Ok(match (w_in_v, v_in_w) {
        (true, true) => FaceRelation::Equal,
        (true, false) => FaceRelation::Below,
        (false, true) => FaceRelation::Above,
        (false, false) => FaceRelation::Incomparable,
    })
}
