//! Exact linear algebra over a [`Scalar`] field.
//!
//! [`Matrix::rank`] and [`Matrix::nullspace`] clear denominators row by row
//! and run fraction-free (Bareiss) elimination over the integers. For long
//! streams of sparse equations [`RowSpace`] keeps a reduced echelon basis and
//! absorbs one row at a time.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension { expected: cols, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<T>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, got: row.len() });
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), x)).collect()
    }

    /// Rank over the field.
    pub fn rank(&self) -> usize {
        integer_echelon(self).pivots.len()
    }

    /// A basis of `{x : M x = 0}`, each vector in canonical integer form.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let ech = integer_echelon(self);
        let mut is_pivot = vec![false; self.cols];
        for &(_, c) in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![T::zero(); self.cols];
            x[free] = T::one();
            for &(r, p) in ech.pivots.iter().rev() {
                let row = &ech.rows[r];
                let mut s = T::zero();
                for j in p + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s = s + T::from_int(row[j].clone()) * x[j].clone();
                    }
                }
                x[p] = -s / T::from_int(row[p].clone());
            }
            basis.push(ray_to_scalars(&x));
        }
        basis
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(0, self.cols + 1);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.push(b[r].clone());
            aug.push_row(row).unwrap();
        }
        let ech = integer_echelon(&aug);
        if ech.pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for &(r, p) in ech.pivots.iter().rev() {
            let row = &ech.rows[r];
            let mut s = T::from_int(row[self.cols].clone());
            for j in p + 1..self.cols {
                if !row[j].is_zero() {
                    s = s - T::from_int(row[j].clone()) * x[j].clone();
                }
            }
            x[p] = s / T::from_int(row[p].clone());
        }
        Some(x)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> =
                self.data[r * self.cols..(r + 1) * self.cols].iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

struct Echelon<I> {
    rows: Vec<Vec<I>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

/// Scales a rational row to integers (multiplying by the lcm of the
/// denominators).
fn integer_row<T: Scalar>(row: &[T]) -> Vec<T::Int> {
    let lcm = row
        .iter()
        .fold(T::Int::one(), |l, v| num_integer::Integer::lcm(&l, v.denom_int()));
    row.iter()
        .map(|v| v.numer_int().clone() * (lcm.clone() / v.denom_int().clone()))
        .collect()
}

/// Fraction-free Gaussian elimination to row echelon form.
fn integer_echelon<T: Scalar>(m: &Matrix<T>) -> Echelon<T::Int> {
    let mut rows: Vec<Vec<T::Int>> = (0..m.rows).map(|r| integer_row(m.row(r))).collect();
    let mut pivots = Vec::new();
    let mut prev = T::Int::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let (upper, lower) = rows.split_at_mut(r + 1);
        let prow = &upper[r];
        for row in lower.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..m.cols {
                // exact division: every entry is a minor of the original
                let v = row[j].clone() * pivot.clone() - factor.clone() * prow[j].clone();
                row[j] = v / prev.clone();
            }
            row[c] = T::Int::zero();
        }
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { rows, pivots }
}

/// Canonical integer form of a nonzero vector: denominators cleared, content
/// divided out, first nonzero entry positive.
pub fn normalize_ray<T: Scalar>(x: &[T]) -> Result<Vec<T::Int>> {
    if x.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let ints = integer_row(x);
    let g = ints
        .iter()
        .fold(T::Int::zero(), |g, v| num_integer::Integer::gcd(&g, v));
    let first_negative = ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    Ok(ints
        .into_iter()
        .map(|v| {
            let q = v / g.clone();
            if first_negative {
                -q
            } else {
                q
            }
        })
        .collect())
}

/// [`normalize_ray`] with the entries mapped back into the field; the zero
/// vector is returned unchanged.
pub fn ray_to_scalars<T: Scalar>(x: &[T]) -> Vec<T> {
    match normalize_ray(x) {
        Ok(ints) => ints.into_iter().map(T::from_int).collect(),
        Err(_) => x.to_vec(),
    }
}

/// The primitive integer vector on the same ray as `x`: denominators
/// cleared and content divided out, direction kept. The zero vector is
/// returned unchanged.
pub fn primitive_ray<T: Scalar>(x: &[T]) -> Vec<T> {
    if x.iter().all(|v| v.is_zero()) {
        return x.to_vec();
    }
    let ints = integer_row(x);
    let g = ints
        .iter()
        .fold(T::Int::zero(), |g, v| num_integer::Integer::gcd(&g, v));
    ints.into_iter().map(|v| T::from_int(v / g.clone())).collect()
}

/// An incrementally built row space, kept in reduced row echelon form with
/// unit pivots.
#[derive(Clone, Debug)]
pub struct RowSpace<T> {
    cols: usize,
    basis: Vec<Vec<T>>,
    pivot_cols: Vec<usize>,
}

impl<T: Scalar> RowSpace<T> {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, basis: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.basis.len()
    }

    fn reduce(&self, row: &mut [T]) {
        for (b, &p) in self.basis.iter().zip(&self.pivot_cols) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
    }

    /// Whether `row` already lies in the span.
    pub fn contains(&self, row: &[T]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|v| v.is_zero())
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn insert(&mut self, mut row: Vec<T>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = T::one() / row[p].clone();
        for v in row.iter_mut().filter(|v| !v.is_zero()) {
            *v = v.clone() * inv.clone();
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        self.basis.push(row);
        self.pivot_cols.push(p);
        true
    }

    /// A basis of the orthogonal complement, i.e. the solutions of the
    /// homogeneous system whose equations are the rows. Canonical integer
    /// form.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivot_cols {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![T::zero(); self.cols];
                x[free] = T::one();
                for (b, &p) in self.basis.iter().zip(&self.pivot_cols) {
                    x[p] = -b[free].clone();
                }
                ray_to_scalars(&x)
            })
            .collect()
    }
}
