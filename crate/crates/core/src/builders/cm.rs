//! The Connes–Moscovici cocyclic module `C^n = H^{⊗n}` of a modular pair.

use super::{check_budget, digits, tensor_labels, tensor_vecs};
use crate::cyclic::CocyclicModule;
use crate::error::{Error, Result};
use crate::hopf::{twisted_antipode, validate_modular_pair, HopfAlgebra, ModularPair};
use crate::linalg::{Accumulator, BasedSpace, SparseMatrix, SparseVec};
use crate::scalar::Field;

pub fn cm_complex<F: Field>(
    h: &HopfAlgebra<F>,
    pair: &ModularPair<F>,
    nmax: usize,
    budget: usize,
) -> Result<CocyclicModule<F>> {
    if let Some(c) = validate_modular_pair(h, pair).first_failure() {
        return Err(Error::Precondition(format!("modular pair fails {}", c.identity)));
    }
    let hd = h.dim();
    for n in 0..=nmax {
        check_budget(&format!("H^⊗{n}"), hd.checked_pow(n as u32).unwrap_or(usize::MAX), budget)?;
    }
    let dim = |n: usize| hd.pow(n as u32);
    let e = |i: usize| SparseVec::<F>::unit(hd, i);
    let spaces = (0..=nmax).map(|n| BasedSpace::new(tensor_labels(None, &h.space().labels, n))).collect();
    let sd = twisted_antipode(h, &pair.delta);

    let mut faces = vec![Vec::new()];
    for n in 1..=nmax {
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let cols = (0..dim(n - 1))
                .map(|k| {
                    let x = digits(k, hd, n - 1);
                    let mut slots: Vec<SparseVec<F>> = x.iter().map(|&a| e(a)).collect();
                    if i == 0 {
                        slots.insert(0, h.unit().clone());
                        tensor_vecs(&slots)
                    } else if i == n {
                        slots.push(pair.sigma.clone());
                        tensor_vecs(&slots)
                    } else {
                        // Δ on the i-th factor; its index a*hd+b already matches H⊗H.
                        let mut pre = tensor_vecs(&slots[..i - 1]);
                        pre = pre.kron(h.comul_basis(x[i - 1]));
                        pre.kron(&tensor_vecs(&slots[i..]))
                    }
                })
                .collect();
            fs.push(SparseMatrix::from_columns(dim(n), cols));
        }
        faces.push(fs);
    }

    let mut degeneracies = Vec::with_capacity(nmax);
    for n in 0..nmax {
        let mut ss = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let cols = (0..dim(n + 1))
                .map(|k| {
                    let x = digits(k, hd, n + 1);
                    let c = h.counit_basis(x[i]).clone();
                    let rest: Vec<SparseVec<F>> =
                        x.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &a)| e(a)).collect();
                    tensor_vecs(&rest).scale(&c)
                })
                .collect();
            ss.push(SparseMatrix::from_columns(dim(n), cols));
        }
        degeneracies.push(ss);
    }

    let mut cyclic = vec![SparseMatrix::identity(1)];
    for n in 1..=nmax {
        let cols = (0..dim(n))
            .map(|k| {
                let x = digits(k, hd, n);
                let s = sd.col(x[0]).clone();
                let mut acc = Accumulator::new(dim(n));
                for (legs, c) in h.sweedler_vec(&s, n) {
                    let slots: Vec<SparseVec<F>> = (0..n)
                        .map(|j| {
                            let rhs = if j + 1 < n { e(x[j + 1]) } else { pair.sigma.clone() };
                            h.mul(&e(legs[j]), &rhs)
                        })
                        .collect();
                    acc.add_vec(&c, &tensor_vecs(&slots));
                }
                acc.finish()
            })
            .collect();
        cyclic.push(SparseMatrix::from_columns(dim(n), cols));
    }
    Ok(CocyclicModule { spaces, faces, degeneracies, cyclic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::DEFAULT_MAX_BASIS;
    use crate::cyclic::{certify, cohomology_table};
    use crate::fixtures;
    use crate::Q;

    #[test]
    fn ground_field_is_the_point() {
        let k = fixtures::k::<Q>();
        let x = cm_complex(&k, &ModularPair::trivial(&k), 4, DEFAULT_MAX_BASIS).unwrap();
        let p = crate::cyclic::point_complex::<Q>(4);
        assert_eq!((&x.faces, &x.degeneracies, &x.cyclic), (&p.faces, &p.degeneracies, &p.cyclic));
        let betti: Vec<usize> = cohomology_table(&x).unwrap().iter().map(|e| e.betti).collect();
        assert_eq!(betti, vec![1, 0, 1, 0]);
    }

    #[test]
    fn fixtures_certify() {
        for name in ["kC2", "kC3", "kS3"] {
            let h = fixtures::hopf_by_name::<Q>(name).unwrap();
            let x = cm_complex(&h, &ModularPair::trivial(&h), 3, DEFAULT_MAX_BASIS).unwrap();
            let rep = certify(&x);
            assert!(rep.passed(), "{name}: {rep}");
        }
        let h4 = fixtures::sweedler::<Q>();
        let x = cm_complex(&h4, &fixtures::sweedler_pair(&h4), 3, DEFAULT_MAX_BASIS).unwrap();
        let rep = certify(&x);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn kc2_tau_one() {
        let h = fixtures::kc2::<Q>();
        let x = cm_complex(&h, &ModularPair::trivial(&h), 2, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!(x.cyclic[1].col(1), &SparseVec::unit(2, 1));
        assert_eq!(x.faces[1][1].col(0), &h.unit().clone());
    }

    #[test]
    fn invalid_pair_is_rejected() {
        let h4 = fixtures::sweedler::<Q>();
        assert!(cm_complex(&h4, &ModularPair::trivial(&h4), 2, DEFAULT_MAX_BASIS).is_err());
    }
}
