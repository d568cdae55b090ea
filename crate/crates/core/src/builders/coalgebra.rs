//! The cocyclic module `C^n_H(C, M) = M⊗_H C^{⊗n+1}` of an H-module coalgebra.

use super::{check_budget, digits, tensor_labels, tensor_vecs};
use crate::cyclic::CocyclicModule;
use crate::error::{Error, Result};
use crate::hopf::{HModuleCoalgebra, HopfAlgebra};
use crate::linalg::{Accumulator, BasedSpace, Quotient, SparseMatrix, SparseVec};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// The quotient complex together with the ambient maps on `M⊗C^{⊗n+1}`.
#[derive(Clone, Debug)]
pub struct CoalgebraCochain<F> {
    pub module: CocyclicModule<F>,
    /// Ambient structure maps before passing to `⊗_H`.
    pub ambient: CocyclicModule<F>,
    pub quotients: Vec<Quotient<F>>,
    pub relations: Vec<Vec<SparseVec<F>>>,
}

impl<F: Field> CoalgebraCochain<F> {
    /// Ambient vector representing quotient basis vector `k` in degree `n`.
    pub fn representative(&self, n: usize, k: usize) -> SparseVec<F> {
        self.quotients[n].representative(k)
    }
}

/// `h·(c^0⊗…⊗c^n)` through `Δ^{(n)}`.
fn act_diag<F: Field>(h: &HopfAlgebra<F>, c: &HModuleCoalgebra<F>, hb: usize, tuple: &[usize]) -> SparseVec<F> {
    let cd = c.dim();
    let mut acc = Accumulator::new(cd.pow(tuple.len() as u32));
    for (legs, x) in h.sweedler(hb, tuple.len()) {
        let slots: Vec<SparseVec<F>> = tuple.iter().zip(&legs).map(|(&ci, &l)| c.act_basis(l, ci).clone()).collect();
        acc.add_vec(&x, &tensor_vecs(&slots));
    }
    acc.finish()
}

pub fn coalgebra_cochain<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
    m: &SaydModule<F>,
    nmax: usize,
    budget: usize,
) -> Result<CoalgebraCochain<F>> {
    if m.hdim != h.dim() || c.action.len() != h.dim() * c.dim() {
        return Err(Error::Dimension("coalgebra, module and Hopf algebra disagree on dim H".into()));
    }
    let (cd, md) = (c.dim(), m.dim());
    for n in 0..=nmax {
        let size = cd.checked_pow(n as u32 + 1).and_then(|x| x.checked_mul(md)).unwrap_or(usize::MAX);
        check_budget(&format!("M⊗C^⊗{}", n + 1), size, budget)?;
    }
    let tdim = |n: usize| cd.pow(n as u32 + 1);
    let dim = |n: usize| md * tdim(n);
    let coal = &c.coalgebra;
    let ec = |i: usize| SparseVec::<F>::unit(cd, i);
    let em = |i: usize| SparseVec::<F>::unit(md, i);
    let clabels = BasedSpace::new((0..cd).map(|i| format!("c{i}")).collect());
    let labels = |n: usize| {
        let t = tensor_labels(None, &clabels.labels, n + 1);
        if md == 1 {
            t
        } else {
            m.space.labels.iter().flat_map(|a| t.iter().map(move |b| format!("{a}|{b}"))).collect()
        }
    };
    let comul = |i: usize| coal.comul_of(&ec(i));

    // (m₍₋₁₎ ⊗ m₍₀₎) terms of the coaction of basis vector `mi`.
    let coact = |mi: usize| m.coact_terms(mi).map(|(a, b, x)| (a, b, x.clone())).collect::<Vec<_>>();

    let mut faces = vec![Vec::new()];
    for n in 1..=nmax {
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let cols = (0..dim(n - 1))
                .map(|k| {
                    let (mi, t) = (k / tdim(n - 1), k % tdim(n - 1));
                    let x = digits(t, cd, n);
                    let slots: Vec<SparseVec<F>> = x.iter().map(|&a| ec(a)).collect();
                    if i < n {
                        em(mi)
                            .kron(&tensor_vecs(&slots[..i]))
                            .kron(&comul(x[i]))
                            .kron(&tensor_vecs(&slots[i + 1..]))
                    } else {
                        // m₍₀₎ ⊗ c⁰₂ ⊗ c¹ … c^{n-1} ⊗ m₍₋₁₎c⁰₁
                        let mut acc = Accumulator::new(dim(n));
                        for (ab, y) in comul(x[0]).iter() {
                            let (c1, c2) = (ab / cd, ab % cd);
                            for (mh, m0, z) in &coact(mi) {
                                let last = c.act_basis(*mh, c1).clone();
                                let mut s = vec![ec(c2)];
                                s.extend_from_slice(&slots[1..]);
                                s.push(last);
                                acc.add_vec(&y.mul_ref(z), &em(*m0).kron(&tensor_vecs(&s)));
                            }
                        }
                        acc.finish()
                    }
                })
                .collect();
            fs.push(SparseMatrix::from_columns(dim(n), cols));
        }
        faces.push(fs);
    }
    let degeneracies = (0..nmax)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let cols = (0..dim(n + 1))
                        .map(|k| {
                            let (mi, t) = (k / tdim(n + 1), k % tdim(n + 1));
                            let x = digits(t, cd, n + 2);
                            let e = coal.counit_of(&ec(x[i + 1]));
                            let rest: Vec<SparseVec<F>> =
                                x.iter().enumerate().filter(|(j, _)| *j != i + 1).map(|(_, &a)| ec(a)).collect();
                            em(mi).kron(&tensor_vecs(&rest)).scale(&e)
                        })
                        .collect();
                    SparseMatrix::from_columns(dim(n), cols)
                })
                .collect()
        })
        .collect();
    let cyclic = (0..=nmax)
        .map(|n| {
            let cols = (0..dim(n))
                .map(|k| {
                    let (mi, t) = (k / tdim(n), k % tdim(n));
                    let x = digits(t, cd, n + 1);
                    let mut acc = Accumulator::new(dim(n));
                    for (mh, m0, z) in &coact(mi) {
                        let mut s: Vec<SparseVec<F>> = x[1..].iter().map(|&a| ec(a)).collect();
                        s.push(c.act_basis(*mh, x[0]).clone());
                        acc.add_vec(z, &em(*m0).kron(&tensor_vecs(&s)));
                    }
                    acc.finish()
                })
                .collect();
            SparseMatrix::from_columns(dim(n), cols)
        })
        .collect();
    let spaces: Vec<BasedSpace> = (0..=nmax).map(|n| BasedSpace::new(labels(n))).collect();
    let ambient = CocyclicModule { spaces: spaces.clone(), faces, degeneracies, cyclic };

    // mh⊗x − m⊗h·x
    let relations: Vec<Vec<SparseVec<F>>> = (0..=nmax)
        .map(|n| {
            let mut rels = Vec::new();
            for mi in 0..md {
                for t in 0..tdim(n) {
                    let x = digits(t, cd, n + 1);
                    let xv = tensor_vecs(&x.iter().map(|&a| ec(a)).collect::<Vec<_>>());
                    for hb in 0..h.dim() {
                        let r = m.act_basis(mi, hb).kron(&xv).sub(&em(mi).kron(&act_diag(h, c, hb, &x)));
                        if !r.is_zero() {
                            rels.push(r);
                        }
                    }
                }
            }
            rels
        })
        .collect();
    let quotients: Vec<Quotient<F>> = (0..=nmax).map(|n| Quotient::new(dim(n), &relations[n])).collect();
    let induce = |what: String, map: &SparseMatrix<F>, from: usize, to: usize| -> Result<SparseMatrix<F>> {
        quotients[from].descends(map, &relations[from], &quotients[to]).map_err(|k| {
            Error::NotDescending(format!("{what} sends relation {k} of degree {from} outside the relations"))
        })?;
        Ok(quotients[from].induced(map, &quotients[to]))
    };
    let mut qfaces = vec![Vec::new()];
    for n in 1..=nmax {
        qfaces.push(
            (0..=n).map(|i| induce(format!("δ'_{i}"), &ambient.faces[n][i], n - 1, n)).collect::<Result<Vec<_>>>()?,
        );
    }
    let qdeg = (0..nmax)
        .map(|n| (0..=n).map(|i| induce(format!("σ'_{i}"), &ambient.degeneracies[n][i], n + 1, n)).collect())
        .collect::<Result<Vec<_>>>()?;
    let qcyc = (0..=nmax).map(|n| induce(format!("τ'_{n}"), &ambient.cyclic[n], n, n)).collect::<Result<Vec<_>>>()?;
    let qspaces = quotients
        .iter()
        .zip(&spaces)
        .map(|(q, sp)| BasedSpace::new(q.complement().iter().map(|&k| sp.label(k).to_string()).collect()))
        .collect();
    Ok(CoalgebraCochain {
        module: CocyclicModule { spaces: qspaces, faces: qfaces, degeneracies: qdeg, cyclic: qcyc },
        ambient,
        quotients,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::DEFAULT_MAX_BASIS;
    use crate::cyclic::{certify, cohomology_table, point_complex};
    use crate::fixtures;
    use crate::hopf::{Coalgebra, ModularPair};
    use crate::sayd::{sigma_k_delta, trivial};
    use crate::Q;

    #[test]
    fn trivial_inputs_give_the_point() {
        let k = fixtures::k::<Q>();
        let c = HModuleCoalgebra::regular(&k);
        let x = coalgebra_cochain(&k, &c, &trivial(&k), 3, DEFAULT_MAX_BASIS).unwrap();
        let p = point_complex::<Q>(3);
        assert_eq!((&x.module.faces, &x.module.cyclic), (&p.faces, &p.cyclic));
    }

    #[test]
    fn regular_kc2() {
        let h = fixtures::kc2::<Q>();
        let c = HModuleCoalgebra::regular(&h);
        let x = coalgebra_cochain(&h, &c, &trivial(&h), 3, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!(x.module.dim(0), 1);
        assert_eq!(x.module.dims(), vec![1, 2, 4, 8]);
        assert!(certify(&x.module).passed());
        assert_eq!(x.module.cyclic[0], SparseMatrix::identity(1));
        // The regular coalgebra gives back the CM complex, whose HC vanishes in odd degrees here.
        let b: Vec<usize> = cohomology_table(&x.module).unwrap().iter().map(|e| e.betti).collect();
        let cm = crate::builders::cm_complex(&h, &ModularPair::trivial(&h), 3, DEFAULT_MAX_BASIS).unwrap();
        let b2: Vec<usize> = cohomology_table(&cm).unwrap().iter().map(|e| e.betti).collect();
        assert_eq!(b, b2);
    }

    #[test]
    fn sweedler_regular() {
        let h = fixtures::sweedler::<Q>();
        let m = sigma_k_delta(&h, &fixtures::sweedler_pair(&h)).unwrap();
        let x = coalgebra_cochain(&h, &HModuleCoalgebra::regular(&h), &m, 2, DEFAULT_MAX_BASIS).unwrap();
        let rep = certify(&x.module);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn coalgebra_through_counit() {
        let h = fixtures::kc2::<Q>();
        let c = HModuleCoalgebra::through_counit(&h, Coalgebra::trivial());
        let x = coalgebra_cochain(&h, &c, &trivial(&h), 2, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!(x.module.dims(), vec![1, 1, 1]);
    }
}
