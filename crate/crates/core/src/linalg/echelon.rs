//! Row reduction on sparse vectors and the derived kernel, image, solve and
//! annihilator operations.
//!
//! Reduced row echelon form is unique, so the kernel basis returned here does
//! not depend on which elimination route (sparse or dense) produced it.

use std::collections::BTreeMap;

use super::dense::{rank_bareiss, rref_dense, DENSE_CUTOFF};
use super::sparse::{Accumulator, SparseMatrix, SparseVec};
use crate::scalar::Field;

/// Incrementally built echelon basis. Each stored row has a leading `1` at its
/// key column and no entries to the left of it.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, pivots: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Eliminates every pivot column from `v`. The remainder is the canonical
    /// representative of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        assert_eq!(v.dim(), self.dim, "reduce: dimension mismatch");
        if self.pivots.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut work: BTreeMap<usize, F> = v.iter().map(|(i, x)| (i, x.clone())).collect();
        let mut next = work.keys().next().copied();
        while let Some(c) = next {
            if let Some(row) = self.pivots.get(&c) {
                let a = work.remove(&c).expect("present key");
                for (j, x) in row.iter().skip(1) {
                    let delta = a.mul_ref(x);
                    match work.get_mut(&j) {
                        Some(e) => {
                            *e = e.sub_ref(&delta);
                            if e.is_zero() {
                                work.remove(&j);
                            }
                        }
                        None => {
                            work.insert(j, -delta);
                        }
                    }
                }
            }
            next = work.range(c + 1..).next().map(|(k, _)| *k);
        }
        SparseVec::from_sorted_unchecked(self.dim, work.into_iter().collect())
    }

    /// Adds `v` to the span. Returns `false` when it was already dependent.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some((c, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.inv();
        let r = r.scale(&inv);
        self.pivots.insert(c, r);
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Back-substitutes to the reduced row echelon form.
    pub fn into_rref(mut self) -> Vec<(usize, SparseVec<F>)> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        let mut done: Echelon<F> = Echelon::new(self.dim);
        for c in cols {
            let row = self.pivots.remove(&c).expect("pivot row");
            let reduced = reduce_tail(&done, &row, c);
            done.pivots.insert(c, reduced);
        }
        done.pivots.into_iter().collect()
    }
}

/// Reduces every entry right of the leading column `c` of `row`.
fn reduce_tail<F: Field>(e: &Echelon<F>, row: &SparseVec<F>, c: usize) -> SparseVec<F> {
    let lead = SparseVec::from_sorted_unchecked(row.dim(), vec![(c, F::one())]);
    let tail = row.sub(&lead);
    e.reduce(&tail).add(&lead)
}

fn rref_rows<F: Field>(rows: &[SparseVec<F>], dim: usize) -> Vec<(usize, SparseVec<F>)> {
    if rows.len() < DENSE_CUTOFF && dim < DENSE_CUTOFF && !rows.is_empty() {
        let (r, piv) = rref_dense(rows.iter().map(SparseVec::to_dense).collect());
        return piv.into_iter().zip(r.iter().map(|x| SparseVec::from_dense(x))).collect();
    }
    let mut e = Echelon::new(dim);
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

/// A subspace given by a basis in which each vector has a `1` at its own
/// coordinate column and `0` at the coordinate columns of the others. This
/// makes coordinates a lookup and membership a single comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
    coord_cols: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: (0..n).map(|i| SparseVec::unit(n, i)).collect(),
            coord_cols: (0..n).collect(),
        }
    }

    /// The space of vectors orthogonal to the row space of `rows` (given as RREF).
    fn from_rref(dim: usize, rref: &[(usize, SparseVec<F>)]) -> Self {
        let mut is_pivot = vec![false; dim];
        for (c, _) in rref {
            is_pivot[*c] = true;
        }
        let free: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();
        let mut entries: BTreeMap<usize, Vec<(usize, F)>> =
            free.iter().map(|&j| (j, vec![(j, F::one())])).collect();
        for (c, row) in rref {
            for (j, x) in row.iter() {
                if j != *c {
                    entries.get_mut(&j).expect("free column").push((*c, -x.clone()));
                }
            }
        }
        let basis = free
            .iter()
            .map(|j| SparseVec::from_entries(dim, entries.remove(j).expect("free column")))
            .collect();
        Subspace { ambient: dim, basis, coord_cols: free }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn coord_columns(&self) -> &[usize] {
        &self.coord_cols
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    /// Coordinates of `v` assuming it lies in the subspace.
    pub fn coords_unchecked(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = Vec::new();
        for (i, x) in v.iter() {
            if let Ok(k) = self.coord_cols.binary_search(&i) {
                out.push((k, x.clone()));
            }
        }
        SparseVec::from_sorted_unchecked(self.dim(), out)
    }

    pub fn expand(&self, coords: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.ambient);
        for (k, x) in coords.iter() {
            acc.add_vec(x, &self.basis[k]);
        }
        acc.finish()
    }

    /// Coordinates of `v`, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let c = self.coords_unchecked(v);
        if self.expand(&c) == *v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.coords(v).is_some()
    }

    /// Matrix of `map` restricted to `self` with values in `target`.
    /// On failure returns the index of a basis vector whose image leaves `target`.
    pub fn restrict(
        &self,
        map: &SparseMatrix<F>,
        target: &Subspace<F>,
    ) -> Result<SparseMatrix<F>, usize> {
        let mut cols = Vec::with_capacity(self.dim());
        for (k, b) in self.basis.iter().enumerate() {
            let img = map.apply(b);
            cols.push(target.coords(&img).ok_or(k)?);
        }
        Ok(SparseMatrix::from_columns(target.dim(), cols))
    }

    /// Intersection with the kernel of `map`, returned in ambient coordinates.
    pub fn intersect_kernel(&self, map: &SparseMatrix<F>) -> Subspace<F> {
        let restricted = map.compose(&self.basis_matrix());
        let k = kernel(&restricted);
        let vecs: Vec<SparseVec<F>> = k.basis.iter().map(|c| self.expand(c)).collect();
        span_subspace(self.ambient, &vecs)
    }
}

/// Re-normalizes a spanning set (assumed independent or not) into [`Subspace`] form.
pub fn span_subspace<F: Field>(ambient: usize, vecs: &[SparseVec<F>]) -> Subspace<F> {
    let rref = rref_rows(vecs, ambient);
    // Rows of an RREF already satisfy the coordinate-column property at pivots.
    Subspace {
        ambient,
        coord_cols: rref.iter().map(|(c, _)| *c).collect(),
        basis: rref.into_iter().map(|(_, r)| r).collect(),
    }
}

/// Kernel of `a` as a [`Subspace`] of the domain.
pub fn kernel<F: Field>(a: &SparseMatrix<F>) -> Subspace<F> {
    let rows = a.rows();
    let rref = rref_rows(&rows, a.ncols());
    Subspace::from_rref(a.ncols(), &rref)
}

pub fn kernel_basis<F: Field>(a: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    kernel(a).basis
}

/// Functionals (in dual-basis coordinates) vanishing on every vector of `span`.
pub fn annihilator<F: Field>(span: &[SparseVec<F>], dim: usize) -> Subspace<F> {
    let rref = rref_rows(span, dim);
    Subspace::from_rref(dim, &rref)
}

pub fn rank<F: Field>(a: &SparseMatrix<F>) -> usize {
    if a.nrows() < DENSE_CUTOFF && a.ncols() < DENSE_CUTOFF {
        if a.ncols() == 0 {
            return 0;
        }
        return rank_bareiss(a.to_dense());
    }
    rank_of_vectors(a.columns(), a.nrows())
}

pub fn rank_of_vectors<F: Field>(vecs: &[SparseVec<F>], dim: usize) -> usize {
    let mut e = Echelon::new(dim);
    vecs.iter().filter(|v| e.insert(v)).count()
}

/// Indices of the columns forming a basis of the column span, chosen greedily
/// left to right.
pub fn image_basis<F: Field>(a: &SparseMatrix<F>) -> Vec<usize> {
    let mut e = Echelon::new(a.nrows());
    (0..a.ncols()).filter(|&j| e.insert(a.col(j))).collect()
}

/// A solution of `a x = b` with all free variables set to zero, if one exists.
pub fn solve<F: Field>(a: &SparseMatrix<F>, b: &SparseVec<F>) -> Option<SparseVec<F>> {
    assert_eq!(a.nrows(), b.dim(), "solve: right-hand side length mismatch");
    let n = a.ncols();
    let rows = a.rows();
    let aug: Vec<SparseVec<F>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut e: Vec<(usize, F)> = r.iter().map(|(j, x)| (j, x.clone())).collect();
            let bi = b.value(i);
            if !bi.is_zero() {
                e.push((n, bi));
            }
            SparseVec::from_sorted_unchecked(n + 1, e)
        })
        .collect();
    let rref = rref_rows(&aug, n + 1);
    let mut x = Vec::new();
    for (c, row) in &rref {
        if *c == n {
            return None;
        }
        let v = row.value(n);
        if !v.is_zero() {
            x.push((*c, v));
        }
    }
    Some(SparseVec::from_sorted_unchecked(n, x))
}

/// A quotient `V / R` represented by the complement of the pivot columns of
/// the relations' echelon form.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    relations: Echelon<F>,
    complement: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(dim: usize, relations: &[SparseVec<F>]) -> Self {
        let mut e = Echelon::new(dim);
        for r in relations {
            e.insert(r);
        }
        let mut is_pivot = vec![false; dim];
        for c in e.pivot_columns() {
            is_pivot[c] = true;
        }
        let complement = (0..dim).filter(|&c| !is_pivot[c]).collect();
        Quotient { relations: e, complement }
    }

    pub fn ambient(&self) -> usize {
        self.relations.dim()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient indices of the basis vectors chosen to represent the quotient.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn representative(&self, k: usize) -> SparseVec<F> {
        SparseVec::unit(self.ambient(), self.complement[k])
    }

    /// Class of an ambient vector in quotient coordinates.
    pub fn project(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let r = self.relations.reduce(v);
        let mut out = Vec::with_capacity(r.nnz());
        for (i, x) in r.iter() {
            let k = self.complement.binary_search(&i).expect("reduced vector lives on the complement");
            out.push((k, x.clone()));
        }
        SparseVec::from_sorted_unchecked(self.dim(), out)
    }

    pub fn is_relation(&self, v: &SparseVec<F>) -> bool {
        self.relations.contains(v)
    }

    /// Map induced by `map: V -> W` into `target = W / R'`, given that it descends.
    pub fn induced(&self, map: &SparseMatrix<F>, target: &Quotient<F>) -> SparseMatrix<F> {
        let cols = self.complement.iter().map(|&c| target.project(map.col(c))).collect();
        SparseMatrix::from_columns(target.dim(), cols)
    }

    /// Checks that `map` sends relations into relations of `target`; returns a
    /// failing relation index if not.
    pub fn descends(
        &self,
        map: &SparseMatrix<F>,
        relations: &[SparseVec<F>],
        target: &Quotient<F>,
    ) -> Result<(), usize> {
        for (k, r) in relations.iter().enumerate() {
            if !target.project(&map.apply(r)).is_zero() {
                return Err(k);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::Zero;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn m(rows: &[&[i64]]) -> SparseMatrix<Q> {
        let n = rows[0].len();
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>(), n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert!(a.apply(b).is_zero());
        }
        assert_eq!(k.coord_columns(), &[1, 2]);
        assert_eq!(k.basis()[0].to_dense(), vec![q(-2), q(1), q(0)]);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = SparseVec::from_dense(&[q(3), q(1), q(4)]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.apply(&x), b);
        let bad = SparseVec::from_dense(&[q(3), q(1), q(5)]);
        assert!(solve(&a, &bad).is_none());
    }

    #[test]
    fn annihilator_of_a_line() {
        let v = SparseVec::from_dense(&[q(1), q(1), q(0)]);
        let ann = annihilator(&[v.clone()], 3);
        assert_eq!(ann.dim(), 2);
        for f in ann.basis() {
            assert!(f.dot(&v).is_zero());
        }
    }

    #[test]
    fn subspace_coordinates() {
        let a = m(&[&[1, -1, 0, 0]]);
        let k = kernel(&a);
        let v = SparseVec::from_dense(&[q(5), q(5), q(2), q(0)]);
        let c = k.coords(&v).unwrap();
        assert_eq!(k.expand(&c), v);
        assert!(k.coords(&SparseVec::unit(4, 0)).is_none());
    }

    #[test]
    fn quotient_projection() {
        // R = span{e0 - e1}
        let r = SparseVec::from_dense(&[q(1), q(-1), q(0)]);
        let quo = Quotient::new(3, &[r]);
        assert_eq!(quo.dim(), 2);
        assert_eq!(quo.complement(), &[1, 2]);
        let p0 = quo.project(&SparseVec::unit(3, 0));
        let p1 = quo.project(&SparseVec::unit(3, 1));
        assert_eq!(p0, p1);
    }

    #[test]
    fn sparse_and_dense_routes_agree_on_large_kernel() {
        // A 70x70 path-graph incidence style matrix exercises the sparse route.
        let n = 70;
        let a = SparseMatrix::from_triplets(
            n,
            n,
            (0..n - 1).flat_map(|i| [(i, i, q(1)), (i, i + 1, q(-1))]),
        );
        let k = kernel(&a);
        assert_eq!(k.dim(), 1);
        assert_eq!(rank(&a), n - 1);
        assert!(k.basis()[0].iter().all(|(_, x)| *x == q(1)));
    }
}
