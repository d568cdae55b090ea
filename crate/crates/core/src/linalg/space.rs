//! Labelled bases and linear maps between them.

use serde::{Deserialize, Serialize};

use super::echelon;
use super::sparse::{MatrixRecord, SparseMatrix, SparseVec};
use crate::scalar::Field;

/// A finite-dimensional space with a distinguished, labelled basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasedSpace {
    pub labels: Vec<String>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Self {
        BasedSpace { labels }
    }

    pub fn numbered(prefix: &str, n: usize) -> Self {
        BasedSpace { labels: (0..n).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A linear map `domain -> codomain`; the matrix is `codomain.dim() x domain.dim()`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap<F> {
    pub domain: BasedSpace,
    pub codomain: BasedSpace,
    pub matrix: SparseMatrix<F>,
}

impl<F: Field> LinMap<F> {
    pub fn new(domain: BasedSpace, codomain: BasedSpace, matrix: SparseMatrix<F>) -> Self {
        assert_eq!(matrix.ncols(), domain.dim(), "LinMap: domain dimension mismatch");
        assert_eq!(matrix.nrows(), codomain.dim(), "LinMap: codomain dimension mismatch");
        LinMap { domain, codomain, matrix }
    }

    pub fn identity(space: BasedSpace) -> Self {
        let n = space.dim();
        LinMap { domain: space.clone(), codomain: space, matrix: SparseMatrix::identity(n) }
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.matrix.apply(v)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinMap<F>) -> LinMap<F> {
        assert_eq!(rhs.codomain.dim(), self.domain.dim(), "LinMap compose: dimension mismatch");
        LinMap {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.compose(&rhs.matrix),
        }
    }

    pub fn transpose(&self) -> LinMap<F> {
        LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn rank(&self) -> usize {
        echelon::rank(&self.matrix)
    }

    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        echelon::kernel_basis(&self.matrix)
    }

    pub fn image_basis(&self) -> Vec<SparseVec<F>> {
        echelon::image_basis(&self.matrix)
            .into_iter()
            .map(|j| self.matrix.col(j).clone())
            .collect()
    }

    pub fn solve(&self, target: &SparseVec<F>) -> Option<SparseVec<F>> {
        echelon::solve(&self.matrix, target)
    }

    pub fn to_record(&self) -> LinMapRecord {
        LinMapRecord {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.to_record(),
        }
    }

    pub fn from_record(rec: &LinMapRecord) -> Option<Self> {
        let m = SparseMatrix::from_record(&rec.matrix)?;
        if m.ncols() != rec.domain.dim() || m.nrows() != rec.codomain.dim() {
            return None;
        }
        Some(LinMap { domain: rec.domain.clone(), codomain: rec.codomain.clone(), matrix: m })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinMapRecord {
    pub domain: BasedSpace,
    pub codomain: BasedSpace,
    pub matrix: MatrixRecord,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn linmap_json_round_trip() {
        let f = LinMap::<Q>::new(
            BasedSpace::numbered("e", 2),
            BasedSpace::numbered("f", 1),
            SparseMatrix::from_triplets(1, 2, [(0, 0, Q::from_ratio(-1, 3))]),
        );
        let s = serde_json::to_string(&f.to_record()).unwrap();
        assert!(s.contains("\"-1/3\""));
        let back: LinMapRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(LinMap::from_record(&back).unwrap(), f);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.kernel_basis().len(), 1);
    }
}
