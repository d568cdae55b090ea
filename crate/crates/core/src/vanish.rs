//! Inner automorphisms act trivially on Hopf-cyclic cohomology, and the
//! `M_2`-trick vanishing criterion as a finite check.

use crate::builders::hopf_cyclic_cochain;
use crate::builders::nerve::NerveBasis;
use crate::category::{inner_automorphism_solve, linearize, matrix_unit_index, validate_functor, HCategory, InnerSearch, LinearFunctor};
use crate::cyclic::{cohomology_table, is_coboundary};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::report::{Check, ValidationReport};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// `id_M⊗CN_n(α): M⊗CN_n(D) → M⊗CN_n(D')` for a semifunctor `α`.
pub fn nerve_map<F: Field>(d: &HCategory<F>, d2: &HCategory<F>, md: usize, alpha: &LinearFunctor<F>, n: usize) -> SparseMatrix<F> {
    let (src, tgt) = (NerveBasis::new(d, n), NerveBasis::new(d2, n));
    let rows = md * tgt.dim();
    let mut cols = vec![SparseVec::zero(rows); md * src.dim()];
    for (k, objs, mors) in src.iter() {
        let new_objs: Vec<usize> = objs.iter().map(|&o| alpha.object_map[o]).collect();
        let slots: Vec<SparseVec<F>> = mors
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let (s, t) = crate::builders::nerve::slot_pair(objs, i);
                alpha.map(d, s, t).col(f).clone()
            })
            .collect();
        for mi in 0..md {
            let mut acc = Accumulator::new(rows);
            tgt.add_tensor(&mut acc, mi * tgt.dim(), &new_objs, &slots, &F::one());
            cols[mi * src.dim() + k] = acc.finish();
        }
    }
    SparseMatrix::from_columns(rows, cols)
}

/// For every computed class `[φ]` in degrees `< N`, certifies that
/// `φ∘(id_M⊗CN(Φ)) − φ` is a coboundary.
pub fn inner_identity_check<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    phi: &LinearFunctor<F>,
    nmax: usize,
    budget: usize,
) -> Result<ValidationReport> {
    let search = inner_automorphism_solve(d, phi)?;
    if search.eta.is_none() {
        return Err(Error::Precondition("Φ is not certified inner".into()));
    }
    let x = hopf_cyclic_cochain(h, d, m, nmax, budget)?;
    let mut rep = ValidationReport::new("inner automorphism acts trivially");
    let mut lin = Check::new("φ∘Φ is H-linear");
    let mut cob = Check::new("φ∘Φ−φ is a coboundary");
    for e in cohomology_table(&x.restricted)? {
        let n = e.degree;
        let pull = nerve_map(d, d, m.dim(), phi, n).transpose();
        for rep_phi in &e.representatives {
            let amb = x.subspaces[n].expand(rep_phi);
            let Some(v) = x.subspaces[n].coords(&pull.apply(&amb)) else {
                lin.fail(format!("degree {n}"));
                continue;
            };
            lin.record(true, String::new);
            match is_coboundary(&x.restricted, n, &v.sub(rep_phi))? {
                Some(_) => cob.record(true, String::new),
                None => cob.fail(format!("degree {n}")),
            }
        }
    }
    rep.push(lin);
    rep.push(cob);
    Ok(rep)
}

/// Outcome of the vanishing criterion.
#[derive(Clone, Debug)]
pub struct VanishingCheck<F> {
    pub hypotheses_hold: bool,
    /// Whether `υ(id) = id`; recorded, not required.
    pub upsilon_unital: bool,
    pub inner: Option<InnerSearch<F>>,
    /// Betti numbers, computed only when every hypothesis holds.
    pub betti: Option<Vec<usize>>,
    pub report: ValidationReport,
}

/// Checks the hypotheses on bases: `υ` an H-linear semifunctor fixing
/// objects (1), `Φ` fixing objects (2) and inner, and
/// `Φ(f⊗E11 + υ(f)⊗E22) = υ(f)⊗E22` (3). When all hold, every Betti number
/// in degrees `< N` must vanish.
#[allow(clippy::too_many_arguments)]
pub fn vanishing_criterion_check<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    upsilon: &LinearFunctor<F>,
    phi: &LinearFunctor<F>,
    nmax: usize,
    budget: usize,
) -> Result<VanishingCheck<F>> {
    if !d.is_unital() {
        return Err(Error::Precondition("the criterion needs a category with identities".into()));
    }
    let lin = linearize(d, 2);
    let n = d.n_obj();
    let mut rep = ValidationReport::new("vanishing criterion");

    let ups = LinearFunctor { preserves_identities: false, h_linear: true, ..upsilon.clone() };
    let mut c = Check::new("υ is an H-linear semifunctor");
    let vr = validate_functor(d, d, &ups);
    for f in vr.failures() {
        c.fail(f.identity.clone());
    }
    if vr.passed() {
        c.record(true, String::new);
    }
    let ups_ok = c.passed();
    rep.push(c);

    let mut c = Check::new("hypothesis (1) υ(X)=X");
    c.record(upsilon.object_map.len() == n && upsilon.fixes_objects(), || format!("object map {:?}", upsilon.object_map));
    rep.push(c);

    let mut c = Check::new("hypothesis (2) Φ(X)=X");
    c.record(phi.object_map.len() == n && phi.fixes_objects(), || format!("object map {:?}", phi.object_map));
    let phi_fixes = c.passed();
    rep.push(c);

    let mut c = Check::new("hypothesis (3) Φ(f⊗E11+υ(f)⊗E22)=υ(f)⊗E22");
    if ups_ok && phi_fixes {
        for x in 0..n {
            for y in 0..n {
                let dd = d.hom_dim(x, y);
                let ld = lin.hom_dim(x, y);
                let embed = |v: &SparseVec<F>, a: usize| SparseVec::from_entries(ld, v.iter().map(|(g, c)| (matrix_unit_index(g, a, a, 2), c.clone())));
                for f in 0..dd {
                    let uf = upsilon.map(d, x, y).col(f);
                    let arg = embed(&SparseVec::unit(dd, f), 0).add(&embed(uf, 1));
                    let lhs = phi.map(&lin, x, y).apply(&arg);
                    c.record(lhs == embed(uf, 1), || format!("f={}", d.hom_label(x, y, f)));
                }
            }
        }
    } else {
        c.fail("not evaluated: υ or Φ malformed");
    }
    rep.push(c);

    let mut c = Check::new("Φ is an inner automorphism");
    let mut inner = None;
    if phi_fixes {
        let fr = validate_functor(&lin, &lin, phi);
        if !fr.passed() {
            c.fail(format!("Φ is not an H-linear functor: {}", fr.first_failure().map(|f| f.identity.as_str()).unwrap_or("")));
        } else {
            let s = inner_automorphism_solve(&lin, phi)?;
            c.record(s.eta.is_some(), || format!("no invertible η among {} samples of a {}-dim solution space", s.samples_tried, s.solution_dim));
            inner = Some(s);
        }
    } else {
        c.fail("Φ moves objects");
    }
    rep.push(c);

    let upsilon_unital = ups_ok
        && (0..n).all(|x| upsilon.map(d, x, x).apply(d.identity(x).expect("unital")) == *d.identity(x).expect("unital"));
    let hypotheses_hold = rep.passed();
    let mut betti = None;
    if hypotheses_hold {
        let x = hopf_cyclic_cochain(h, d, m, nmax, budget)?;
        let b: Vec<usize> = cohomology_table(&x.restricted)?.iter().map(|e| e.betti).collect();
        let mut c = Check::new("HC^n=0 under the hypotheses");
        for (k, &v) in b.iter().enumerate() {
            c.record(v == 0, || format!("inconsistency: dim HC^{k} = {v}"));
        }
        rep.push(c);
        betti = Some(b);
    }
    Ok(VanishingCheck { hypotheses_hold, upsilon_unital, inner, betti, report: rep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::DEFAULT_MAX_BASIS;
    use crate::category::conjugation_functor;
    use crate::fixtures;
    use crate::sayd::trivial;
    use crate::Q;

    fn q(a: i64) -> Q {
        Q::from_integer(a.into())
    }

    #[test]
    fn identity_is_inner_and_trivial() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let rep = inner_identity_check(&h, &d, &trivial(&h), &LinearFunctor::identity(&d), 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.check("φ∘Φ−φ is a coboundary").unwrap().instances > 0);
    }

    #[test]
    fn conjugation_on_matrices() {
        let k = fixtures::k::<Q>();
        let l = linearize(&fixtures::d1(&k), 2);
        // η = E11 + E12 + E22, η⁻¹ = E11 − E12 + E22
        let eta = vec![SparseVec::from_entries(4, [(0, q(1)), (1, q(1)), (3, q(1))])];
        let inv = vec![SparseVec::from_entries(4, [(0, q(1)), (1, q(-1)), (3, q(1))])];
        let phi = conjugation_functor(&l, &eta, &inv);
        assert_ne!(phi, LinearFunctor::identity(&l));
        let rep = inner_identity_check(&k, &l, &trivial(&k), &phi, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn non_inner_is_rejected() {
        let k = fixtures::k::<Q>();
        let d = fixtures::d1(&k);
        let zero = LinearFunctor { maps: vec![SparseMatrix::zeros(1, 1)], ..LinearFunctor::identity(&d) };
        assert!(inner_identity_check(&k, &d, &trivial(&k), &zero, 2, DEFAULT_MAX_BASIS).is_err());
    }

    #[test]
    fn hypothesis_three_fails_for_identity_upsilon() {
        let k = fixtures::k::<Q>();
        let d = fixtures::d1(&k);
        let lin = linearize(&d, 2);
        let v = vanishing_criterion_check(&k, &d, &trivial(&k), &LinearFunctor::identity(&d), &LinearFunctor::identity(&lin), 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(!v.hypotheses_hold);
        assert!(v.upsilon_unital);
        assert!(v.betti.is_none());
        assert!(!v.report.check("hypothesis (3) Φ(f⊗E11+υ(f)⊗E22)=υ(f)⊗E22").unwrap().passed());
        assert!(v.report.check("hypothesis (1) υ(X)=X").unwrap().passed());
        assert!(v.report.check("Φ is an inner automorphism").unwrap().passed());
    }

    #[test]
    fn object_moving_phi_is_reported() {
        let k = fixtures::k::<Q>();
        let d = fixtures::a2(&k);
        let lin = linearize(&d, 2);
        let swap = LinearFunctor { object_map: vec![1, 0], ..LinearFunctor::identity(&lin) };
        let v = vanishing_criterion_check(&k, &d, &trivial(&k), &LinearFunctor::identity(&d), &swap, 2, DEFAULT_MAX_BASIS).unwrap();
        assert!(!v.report.check("hypothesis (2) Φ(X)=X").unwrap().passed());
        assert!(!v.hypotheses_hold);
    }
}
