//! Sparse vectors and column-compressed matrices over a [`Field`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Field;

/// A sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    dim: usize,
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim, "unit vector index {i} out of range {dim}");
        SparseVec { dim, entries: vec![(i, F::one())] }
    }

    /// Builds a vector from unsorted entries, summing repeated indices.
    pub fn from_entries<I: IntoIterator<Item = (usize, F)>>(dim: usize, it: I) -> Self {
        let mut acc = Accumulator::new(dim);
        for (i, x) in it {
            acc.add(i, &x);
        }
        acc.finish()
    }

    /// Builds a vector from entries that are already sorted, distinct and nonzero.
    pub(crate) fn from_sorted_unchecked(dim: usize, entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, x)| *i < dim && !x.is_zero()));
        SparseVec { dim, entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { dim: v.len(), entries }
    }

    pub fn to_dense(&self) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> + '_ {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn value(&self, i: usize) -> F {
        self.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero(self.dim);
        }
        let entries = self.entries.iter().map(|(i, x)| (*i, x.mul_ref(a))).collect();
        SparseVec { dim: self.dim, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|(i, x)| (*i, -x.clone())).collect();
        SparseVec { dim: self.dim, entries }
    }

    /// `self + a * other`, by a sorted merge.
    pub fn add_scaled(&self, a: &F, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add_scaled");
        if a.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() || q < other.entries.len() {
            let ip = self.entries.get(p).map(|e| e.0).unwrap_or(usize::MAX);
            let iq = other.entries.get(q).map(|e| e.0).unwrap_or(usize::MAX);
            if ip < iq {
                out.push(self.entries[p].clone());
                p += 1;
            } else if iq < ip {
                out.push((iq, other.entries[q].1.mul_ref(a)));
                q += 1;
            } else {
                let s = self.entries[p].1.add_ref(&other.entries[q].1.mul_ref(a));
                if !s.is_zero() {
                    out.push((ip, s));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-F::one(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut s = F::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (ip, iq) = (self.entries[p].0, other.entries[q].0);
            if ip < iq {
                p += 1;
            } else if iq < ip {
                q += 1;
            } else {
                s = s.add_ref(&self.entries[p].1.mul_ref(&other.entries[q].1));
                p += 1;
                q += 1;
            }
        }
        s
    }

    /// Evaluates against a dense functional.
    pub fn dot_dense(&self, other: &[F]) -> F {
        let mut s = F::zero();
        for (i, x) in &self.entries {
            if !other[*i].is_zero() {
                s = s.add_ref(&x.mul_ref(&other[*i]));
            }
        }
        s
    }

    /// Reindexes into a space of dimension `dim` through `f`.
    pub fn remap(&self, dim: usize, f: impl Fn(usize) -> usize) -> Self {
        Self::from_entries(dim, self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }

    /// Kronecker product, index `i * other.dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other.dim + j, x.mul_ref(y)));
            }
        }
        SparseVec { dim: self.dim * other.dim, entries }
    }
}

/// Accumulates a linear combination before freezing it into a [`SparseVec`].
#[derive(Clone, Debug)]
pub struct Accumulator<F> {
    dim: usize,
    map: BTreeMap<usize, F>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(dim: usize) -> Self {
        Accumulator { dim, map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, x: &F) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if x.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(v) => {
                *v = v.add_ref(x);
                if v.is_zero() {
                    self.map.remove(&i);
                }
            }
            None => {
                self.map.insert(i, x.clone());
            }
        }
    }

    pub fn add_vec(&mut self, a: &F, v: &SparseVec<F>) {
        if a.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &x.mul_ref(a));
        }
    }

    pub fn finish(self) -> SparseVec<F> {
        SparseVec { dim: self.dim, entries: self.map.into_iter().collect() }
    }
}

/// Column-compressed sparse matrix of shape `nrows x ncols`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![SparseVec::zero(nrows); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, cols: (0..n).map(|i| SparseVec::unit(n, i)).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<F>>) -> Self {
        for c in &cols {
            assert_eq!(c.dim(), nrows, "column length mismatch");
        }
        SparseMatrix { nrows, ncols: cols.len(), cols }
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, F)>>(
        nrows: usize,
        ncols: usize,
        it: I,
    ) -> Self {
        let mut accs: Vec<Accumulator<F>> = (0..ncols).map(|_| Accumulator::new(nrows)).collect();
        for (r, c, x) in it {
            assert!(c < ncols, "column {c} out of range {ncols}");
            accs[c].add(r, &x);
        }
        SparseMatrix { nrows, ncols, cols: accs.into_iter().map(Accumulator::finish).collect() }
    }

    pub fn from_dense(rows: &[Vec<F>], ncols: usize) -> Self {
        let nrows = rows.len();
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, x)| (r, c, x.clone()))),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols]; self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.iter() {
                out[r][c] = x.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec<F>> {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.cols[c].value(r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// Nonzero entries in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, F)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.iter() {
                out.push((r, c, x.clone()));
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        assert_eq!(v.dim(), self.ncols, "apply: dimension mismatch");
        let mut acc = Accumulator::new(self.nrows);
        for (j, x) in v.iter() {
            acc.add_vec(x, &self.cols[j]);
        }
        acc.finish()
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "compose: inner dimension mismatch");
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, cols }
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.iter() {
                buckets[r].push((c, x.clone()));
            }
        }
        let cols = buckets
            .into_iter()
            .map(|e| SparseVec::from_sorted_unchecked(self.ncols, e))
            .collect();
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols }
    }

    /// Rows as sparse vectors of length `ncols`.
    pub fn rows(&self) -> Vec<SparseVec<F>> {
        self.transpose().cols
    }

    pub fn add_scaled(&self, a: &F, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "add: shape mismatch");
        let cols = self.cols.iter().zip(&other.cols).map(|(x, y)| x.add_scaled(a, y)).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-F::one(), other)
    }

    pub fn scale(&self, a: &F) -> Self {
        let cols = self.cols.iter().map(|c| c.scale(a)).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    /// Kronecker product; row index `i * b.nrows + k`, column `j * b.ncols + l`.
    pub fn kron(&self, b: &Self) -> Self {
        let mut cols = Vec::with_capacity(self.ncols * b.ncols);
        for a_col in &self.cols {
            for b_col in &b.cols {
                cols.push(a_col.kron(b_col));
            }
        }
        SparseMatrix { nrows: self.nrows * b.nrows, ncols: self.ncols * b.ncols, cols }
    }

    /// Selects a subset of columns.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols = idx.iter().map(|&j| self.cols[j].clone()).collect();
        SparseMatrix { nrows: self.nrows, ncols: idx.len(), cols }
    }

    /// First entry `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return Some((self.nrows.min(other.nrows), self.ncols.min(other.ncols)));
        }
        for (c, (x, y)) in self.cols.iter().zip(&other.cols).enumerate() {
            if x != y {
                let d = x.sub(y);
                return Some((d.leading().map(|(r, _)| r).unwrap_or(0), c));
            }
        }
        None
    }

    pub fn power(&self, k: usize) -> Self {
        assert_eq!(self.nrows, self.ncols, "power of a non-square matrix");
        let mut out = Self::identity(self.nrows);
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }
}

/// Serialized form: shape plus `[row, col, "a/b"]` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            rows: self.nrows,
            cols: self.ncols,
            entries: self
                .triplets()
                .into_iter()
                .map(|(r, c, x)| (r, c, x.to_exact_string()))
                .collect(),
        }
    }

    pub fn from_record(rec: &MatrixRecord) -> Option<Self> {
        let mut trip = Vec::with_capacity(rec.entries.len());
        for (r, c, s) in &rec.entries {
            if *r >= rec.rows || *c >= rec.cols {
                return None;
            }
            trip.push((*r, *c, F::parse_exact(s)?));
        }
        Some(Self::from_triplets(rec.rows, rec.cols, trip))
    }
}

pub fn vec_to_strings<F: Field>(v: &SparseVec<F>) -> Vec<String> {
    v.to_dense().iter().map(Field::to_exact_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn merge_cancels_entries() {
        let a = SparseVec::from_entries(4, [(0, q(1)), (2, q(3))]);
        let b = SparseVec::from_entries(4, [(2, q(1)), (3, q(5))]);
        let c = a.add_scaled(&q(-3), &b);
        assert_eq!(c.entries(), &[(0, q(1)), (3, q(-15))]);
        assert_eq!(a.dot(&b), q(3));
    }

    #[test]
    fn compose_and_transpose_agree_with_dense() {
        let a = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(0), q(1)], vec![q(3), q(0)]], 2);
        let b = SparseMatrix::from_dense(&[vec![q(1), q(0), q(1)], vec![q(2), q(1), q(0)]], 3);
        let ab = a.compose(&b).to_dense();
        assert_eq!(ab, vec![vec![q(5), q(2), q(1)], vec![q(2), q(1), q(0)], vec![q(3), q(0), q(3)]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().to_dense()[0], vec![q(1), q(0), q(3)]);
    }

    #[test]
    fn record_round_trip() {
        let a = SparseMatrix::from_triplets(2, 3, [(0, 1, Q::from_ratio(1, 2)), (1, 2, q(-4))]);
        let rec = a.to_record();
        assert_eq!(rec.entries, vec![(0, 1, "1/2".to_string()), (1, 2, "-4".to_string())]);
        assert_eq!(SparseMatrix::<Q>::from_record(&rec).unwrap(), a);
    }

    #[test]
    fn kron_shapes() {
        let a = SparseMatrix::<Q>::identity(2);
        let b = SparseMatrix::from_triplets(2, 2, [(0, 1, q(1))]);
        let k = a.kron(&b);
        assert_eq!((k.nrows(), k.ncols()), (4, 4));
        assert_eq!(k.get(0, 1), q(1));
        assert_eq!(k.get(2, 3), q(1));
        assert_eq!(k.nnz(), 2);
    }
}
