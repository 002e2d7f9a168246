//! Double description: generators of `{x ∈ Q^d | a_k·x ≥ 0 for all k}`.
//!
//! Starts from the whole space (lineality basis `e_1..e_d`, no rays) and adds
//! the inequalities one at a time in the given order. While an inequality
//! cuts the lineality space it turns one lineality direction into a ray;
//! otherwise rays are split by sign and each adjacent (+,−) pair yields a new
//! ray on the hyperplane. Adjacency is decided by the algebraic rank test.

use crate::qlin::{dot, primitive_ray, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

#[derive(Clone, Debug)]
struct Ray<T> {
    v: Vec<T>,
    zeros: ZeroSet,
}

/// Result of [`double_description`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators<T> {
    /// Extreme rays in canonical integer form.
    pub rays: Vec<Vec<T>>,
    /// Basis of the lineality space (empty for a pointed cone).
    pub lineality: Vec<Vec<T>>,
}

pub fn double_description<T: Scalar>(dim: usize, constraints: &[Vec<T>]) -> Generators<T> {
    let m = constraints.len();
    let mut lineality: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            let mut e = vec![T::zero(); dim];
            e[i] = T::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray<T>> = Vec::new();
    let mut processed = ZeroSet::new(m);

    for (k, a) in constraints.iter().enumerate() {
        assert_eq!(a.len(), dim, "constraint {k} has the wrong length");
        if a.iter().all(|x| x.is_zero()) {
            for r in rays.iter_mut() {
                r.zeros.insert(k);
            }
            processed.insert(k);
            continue;
        }

        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                project_out(l, a, &l0, &s0);
            }
            for r in rays.iter_mut() {
                project_out(&mut r.v, a, &l0, &s0);
                r.v = primitive_ray(&r.v);
                r.zeros.insert(k);
            }
            rays.push(Ray { v: primitive_ray(&l0), zeros: processed.clone() });
            processed.insert(k);
            continue;
        }

        let values: Vec<T> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let needed = dim.saturating_sub(lineality.len() + 2);
        let mut next: Vec<Ray<T>> = Vec::new();
        for (pi, p) in rays.iter().enumerate() {
            if !values[pi].is_positive() {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if !values[ni].is_negative() {
                    continue;
                }
                let common = p.zeros.intersection(&n.zeros);
                if common.len() < needed || !rank_at_least(constraints, &common, dim, needed) {
                    continue;
                }
                let coef_n = values[pi].clone();
                let coef_p = -values[ni].clone();
                let v: Vec<T> = p
                    .v
                    .iter()
                    .zip(&n.v)
                    .map(|(x, y)| coef_p.clone() * x.clone() + coef_n.clone() * y.clone())
                    .collect();
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray { v: primitive_ray(&v), zeros });
            }
        }
        for (r, val) in rays.into_iter().zip(&values) {
            if val.is_negative() {
                continue;
            }
            let mut r = r;
            if val.is_zero() {
                r.zeros.insert(k);
            }
            next.push(r);
        }
        rays = next;
        processed.insert(k);
    }

    let mut out: Vec<Vec<T>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Generators { rays: out, lineality }
}

fn project_out<T: Scalar>(x: &mut [T], a: &[T], l0: &[T], s0: &T) {
    let f = dot(a, x) / s0.clone();
    if f.is_zero() {
        return;
    }
    for (xi, li) in x.iter_mut().zip(l0) {
        *xi = xi.clone() - f.clone() * li.clone();
    }
}

fn rank_at_least<T: Scalar>(constraints: &[Vec<T>], rows: &ZeroSet, dim: usize, needed: usize) -> bool {
    if needed == 0 {
        return true;
    }
    let m = Matrix::from_rows(dim, rows.iter().map(|k| constraints[k].clone()).collect())
        .expect("constraint length checked");
    m.rank() >= needed
}
