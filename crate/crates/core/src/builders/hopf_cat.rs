//! Hopf-cyclic cochains and chains of an H-category with SAYD coefficients.

use super::nerve::{slot_pair, twisted_nerve, NerveBasis};
use crate::category::HCategory;
use crate::cyclic::{CocyclicModule, CyclicModule, ParaCocyclicModule};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{annihilator, Accumulator, BasedSpace, Quotient, SparseMatrix, SparseVec, Subspace};
use crate::report::{Check, ValidationReport};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// The full dual of `M⊗CN_•(D)` and its H-linear part.
#[derive(Clone, Debug)]
pub struct HopfCyclicCochain<F> {
    pub full: ParaCocyclicModule<F>,
    pub restricted: CocyclicModule<F>,
    /// `Hom_H(M⊗CN_n(D), k)` inside the full dual, one per degree.
    pub subspaces: Vec<Subspace<F>>,
    /// The underlying chain module `M⊗CN_•(D)`.
    pub chain: CyclicModule<F>,
    pub bases: Vec<NerveBasis>,
}

impl<F: Field> HopfCyclicCochain<F> {
    /// Inclusion of the restricted degree-`n` space into the full dual.
    pub fn inclusion(&self, n: usize) -> SparseMatrix<F> {
        self.subspaces[n].basis_matrix()
    }

    pub fn max_degree(&self) -> usize {
        self.restricted.max_degree()
    }
}

/// `coef · h·(f^0⊗…⊗f^n)` with `h` acting through `Δ^{(n)}`, added at `shift`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn act_diagonal<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    nb: &NerveBasis,
    objs: &[usize],
    mors: &[usize],
    x: &SparseVec<F>,
    coef: &F,
    shift: usize,
    acc: &mut Accumulator<F>,
) {
    for (legs, c) in h.sweedler_vec(x, mors.len()) {
        let slots: Vec<SparseVec<F>> = mors
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let (s, t) = slot_pair(objs, i);
                d.act_basis(s, t, legs[i], f).clone()
            })
            .collect();
        nb.add_tensor(acc, shift, objs, &slots, &coef.mul_ref(&c));
    }
}

/// `(m⊗f)·h = mh₁ ⊗ S(h₂)·f` on a basis vector of `M⊗CN_n`.
fn right_action<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    nb: &NerveBasis,
    (mi, objs, mors): (usize, &[usize], &[usize]),
    hb: usize,
) -> SparseVec<F> {
    let dim = nb.dim();
    let mut acc = Accumulator::new(m.dim() * dim);
    for (legs, c) in h.sweedler(hb, 2) {
        let s = h.antipode(&h.basis(legs[1]));
        for (m2, a) in m.act_basis(mi, legs[0]).iter() {
            act_diagonal(h, d, nb, objs, mors, &s, &c.mul_ref(a), m2 * dim, &mut acc);
        }
    }
    acc.finish()
}

fn check_inputs<F: Field>(h: &HopfAlgebra<F>, d: &HCategory<F>, m: &SaydModule<F>) -> Result<()> {
    if d.hdim() != h.dim() || m.hdim != h.dim() {
        return Err(Error::Dimension("category, module and Hopf algebra disagree on dim H".into()));
    }
    Ok(())
}

pub fn hopf_cyclic_cochain<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    nmax: usize,
    budget: usize,
) -> Result<HopfCyclicCochain<F>> {
    check_inputs(h, d, m)?;
    let (chain, bases) = twisted_nerve(h, d, m, nmax, budget)?;
    let full = chain.dual();
    let md = m.dim();
    let mut subspaces = Vec::with_capacity(nmax + 1);
    for nb in &bases {
        let dim = nb.dim();
        let mut rels = Vec::new();
        for mi in 0..md {
            for (k, objs, mors) in nb.iter() {
                let x = SparseVec::unit(md * dim, mi * dim + k);
                for hb in 0..h.dim() {
                    let r = right_action(h, d, m, nb, (mi, objs, &mors), hb).add_scaled(&-h.counit_basis(hb).clone(), &x);
                    if !r.is_zero() {
                        rels.push(r);
                    }
                }
            }
        }
        subspaces.push(annihilator(&rels, md * dim));
    }

    let restrict = |what: String, map: &SparseMatrix<F>, from: usize, to: usize| {
        subspaces[from].restrict(map, &subspaces[to]).map_err(|k| {
            Error::Precondition(format!("{what} leaves the H-linear cochains at basis cochain {k} of degree {from}"))
        })
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=nmax {
        let fs = (0..=n)
            .map(|i| restrict(format!("δ_{i} into degree {n}"), &full.faces[n][i], n - 1, n))
            .collect::<Result<Vec<_>>>()?;
        faces.push(fs);
    }
    let degeneracies = (0..nmax)
        .map(|n| {
            (0..=n)
                .map(|i| restrict(format!("σ_{i} into degree {n}"), &full.degeneracies[n][i], n + 1, n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cyclic = (0..=nmax)
        .map(|n| restrict(format!("τ_{n}"), &full.cyclic[n], n, n))
        .collect::<Result<Vec<_>>>()?;
    let spaces = subspaces
        .iter()
        .zip(&full.spaces)
        .map(|(s, sp)| BasedSpace::new(s.coord_columns().iter().map(|&c| sp.label(c).to_string()).collect()))
        .collect();
    let restricted = CocyclicModule { spaces, faces, degeneracies, cyclic };
    Ok(HopfCyclicCochain { full, restricted, subspaces, chain, bases })
}

/// Checks `φ(m⊗h·f) = φ(mh⊗f)` for every restricted basis cochain `φ` in
/// degrees `0..=nmax`, basis `m`, `h` and nerve basis tuple `f`.
pub fn certify_coinvariance<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    x: &HopfCyclicCochain<F>,
    nmax: usize,
) -> ValidationReport {
    let mut rep = ValidationReport::new("H-linear cochains");
    let md = m.dim();
    for n in 0..=nmax.min(x.max_degree()) {
        let nb = &x.bases[n];
        let dim = nb.dim();
        let mut c = Check::at_degree("φ(m⊗h·f)=φ(mh⊗f)", n);
        'outer: for mi in 0..md {
            for (k, objs, mors) in nb.iter() {
                for hb in 0..h.dim() {
                    let mut acc = Accumulator::new(md * dim);
                    act_diagonal(h, d, nb, objs, &mors, &h.basis(hb), &F::one(), mi * dim, &mut acc);
                    let lhs = acc.finish();
                    let mut rhs = Accumulator::new(md * dim);
                    for (m2, a) in m.act_basis(mi, hb).iter() {
                        rhs.add(m2 * dim + k, a);
                    }
                    let w = lhs.sub(&rhs.finish());
                    if let Some(j) = x.subspaces[n].basis().iter().position(|phi| !phi.dot(&w).is_zero()) {
                        c.fail(format!("cochain {j}, m={}, h={}, f={}", m.space.label(mi), h.label(hb), x.chain.spaces[n].label(k % dim)));
                        break 'outer;
                    }
                }
            }
        }
        rep.push(c);
    }
    rep
}

/// `C_n^H = (M⊗CN_n)/span{mh⊗x − m⊗h·x}` with the induced cyclic structure.
#[derive(Clone, Debug)]
pub struct HopfCyclicChain<F> {
    pub module: CyclicModule<F>,
    pub quotients: Vec<Quotient<F>>,
    pub full: CyclicModule<F>,
}

pub fn hopf_cyclic_chain<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    nmax: usize,
    budget: usize,
) -> Result<HopfCyclicChain<F>> {
    check_inputs(h, d, m)?;
    let (full, bases) = twisted_nerve(h, d, m, nmax, budget)?;
    let md = m.dim();
    let mut relations = Vec::with_capacity(nmax + 1);
    for nb in &bases {
        let dim = nb.dim();
        let mut rels = Vec::new();
        for mi in 0..md {
            for (k, objs, mors) in nb.iter() {
                for hb in 0..h.dim() {
                    let mut acc = Accumulator::new(md * dim);
                    for (m2, a) in m.act_basis(mi, hb).iter() {
                        acc.add(m2 * dim + k, a);
                    }
                    act_diagonal(h, d, nb, objs, &mors, &h.basis(hb), &-F::one(), mi * dim, &mut acc);
                    let r = acc.finish();
                    if !r.is_zero() {
                        rels.push(r);
                    }
                }
            }
        }
        relations.push(rels);
    }
    let quotients: Vec<Quotient<F>> =
        relations.iter().zip(&full.spaces).map(|(r, s)| Quotient::new(s.dim(), r)).collect();
    let induce = |what: String, map: &SparseMatrix<F>, from: usize, to: usize| -> Result<SparseMatrix<F>> {
        quotients[from]
            .descends(map, &relations[from], &quotients[to])
            .map_err(|k| Error::NotDescending(format!("{what} sends relation {k} of degree {from} outside the relations")))?;
        Ok(quotients[from].induced(map, &quotients[to]))
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=nmax {
        faces.push((0..=n).map(|i| induce(format!("d_{i}"), &full.faces[n][i], n, n - 1)).collect::<Result<Vec<_>>>()?);
    }
    let degeneracies = (0..nmax)
        .map(|n| (0..=n).map(|i| induce(format!("s_{i}"), &full.degeneracies[n][i], n, n + 1)).collect())
        .collect::<Result<Vec<_>>>()?;
    let cyclic = (0..=nmax).map(|n| induce(format!("t_{n}"), &full.cyclic[n], n, n)).collect::<Result<Vec<_>>>()?;
    let spaces = quotients
        .iter()
        .zip(&full.spaces)
        .map(|(q, sp)| BasedSpace::new(q.complement().iter().map(|&c| sp.label(c).to_string()).collect()))
        .collect();
    Ok(HopfCyclicChain { module: CyclicModule { spaces, faces, degeneracies, cyclic }, quotients, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic_nerve, DEFAULT_MAX_BASIS};
    use crate::category::linearize;
    use crate::cyclic::{certify, certify_cyclic, certify_para, cohomology_table};
    use crate::fixtures;
    use crate::sayd::trivial;
    use crate::Q;

    #[test]
    fn ground_field_recovers_the_nerve() {
        let k = fixtures::k::<Q>();
        let m = trivial(&k);
        for d in [fixtures::d1(&k), fixtures::a2(&k), fixtures::d3(&k)] {
            let x = hopf_cyclic_cochain(&k, &d, &m, 4, DEFAULT_MAX_BASIS).unwrap();
            assert_eq!(x.restricted, cyclic_nerve(&d, 4, DEFAULT_MAX_BASIS).unwrap().dual());
            let c = hopf_cyclic_chain(&k, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
            assert_eq!(c.module, cyclic_nerve(&d, 3, DEFAULT_MAX_BASIS).unwrap());
        }
    }

    #[test]
    fn d3_over_kc2() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let m = trivial(&h);
        let x = hopf_cyclic_cochain(&h, &d, &m, 4, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify_para(&x.full).passed());
        let rep = certify(&x.restricted);
        assert!(rep.passed(), "{rep}");
        assert_eq!(x.restricted.dim(0), 1);
        assert!(certify_coinvariance(&h, &d, &m, &x, 3).passed());
        // g·x = -x: invariant functionals on M⊗CN_n are those with an even number of x.
        for n in 0..=4 {
            assert_eq!(x.restricted.dim(n), 1 << n);
        }
        let c = hopf_cyclic_chain(&h, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify_cyclic(&c.module).passed());
        assert_eq!(c.module.dim(0), 1);
    }

    #[test]
    fn chain_and_cochain_have_the_same_betti() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let m = trivial(&h);
        let x = hopf_cyclic_cochain(&h, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
        let c = hopf_cyclic_chain(&h, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
        let b1: Vec<usize> = cohomology_table(&x.restricted).unwrap().iter().map(|e| e.betti).collect();
        let b2: Vec<usize> = cohomology_table(&c.module.dual()).unwrap().iter().map(|e| e.betti).collect();
        assert_eq!(b1, b2);
    }

    #[test]
    fn sweedler_coefficients() {
        let h = fixtures::sweedler::<Q>();
        let m = crate::sayd::sigma_k_delta(&h, &fixtures::sweedler_pair(&h)).unwrap();
        let d = fixtures::d1(&h);
        let x = hopf_cyclic_cochain(&h, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify(&x.restricted).passed());
        assert!(certify_coinvariance(&h, &d, &m, &x, 3).passed());
    }

    #[test]
    fn linearized_fixture() {
        let h = fixtures::kc2::<Q>();
        let d = linearize(&fixtures::d1(&h), 2);
        let m = trivial(&h);
        let x = hopf_cyclic_cochain(&h, &d, &m, 2, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify(&x.restricted).passed());
    }
}
