//! The diagonal complex `C^n_H(C, M) ⊗ C^n_H(D, M)`.

use super::coalgebra::coalgebra_cochain;
use super::hopf_cat::hopf_cyclic_cochain;
use crate::category::HCategory;
use crate::cyclic::CocyclicModule;
use crate::error::Result;
use crate::hopf::{HModuleCoalgebra, HopfAlgebra};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// Degreewise tensor product of the coalgebra complex and the restricted
/// Hopf-cyclic cochains, with structure maps `δ'_i⊗δ_i`, `σ'_i⊗σ_i`, `τ'_n⊗τ_n`.
pub fn diagonal_complex<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
    m: &SaydModule<F>,
    d: &HCategory<F>,
    nmax: usize,
    budget: usize,
) -> Result<CocyclicModule<F>> {
    let left = coalgebra_cochain(h, c, m, nmax, budget)?;
    let right = hopf_cyclic_cochain(h, d, m, nmax, budget)?;
    Ok(left.module.tensor(&right.restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::DEFAULT_MAX_BASIS;
    use crate::cyclic::{certify, point_complex};
    use crate::fixtures;
    use crate::sayd::trivial;
    use crate::Q;

    #[test]
    fn trivial_inputs() {
        let k = fixtures::k::<Q>();
        let x = diagonal_complex(&k, &HModuleCoalgebra::regular(&k), &trivial(&k), &fixtures::d1(&k), 3, DEFAULT_MAX_BASIS)
            .unwrap();
        assert_eq!(x.cyclic, point_complex::<Q>(3).cyclic);
        assert!(certify(&x).passed());
    }

    #[test]
    fn kc2_d3() {
        let h = fixtures::kc2::<Q>();
        let c = HModuleCoalgebra::regular(&h);
        let m = trivial(&h);
        let d = fixtures::d3(&h);
        let x = diagonal_complex(&h, &c, &m, &d, 2, DEFAULT_MAX_BASIS).unwrap();
        let l = coalgebra_cochain(&h, &c, &m, 2, DEFAULT_MAX_BASIS).unwrap().module;
        let r = hopf_cyclic_cochain(&h, &d, &m, 2, DEFAULT_MAX_BASIS).unwrap().restricted;
        assert_eq!(x.dim(1), l.dim(1) * r.dim(1));
        assert!(certify(&x).passed());
        assert!(x.cyclic[1].power(2) == crate::linalg::SparseMatrix::identity(x.dim(1)));
    }
}
