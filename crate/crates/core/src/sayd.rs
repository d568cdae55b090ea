//! Right-left stable anti-Yetter–Drinfeld modules.

use crate::error::{Error, Result};
use crate::hopf::{validate_modular_pair, HopfAlgebra, ModularPair};
use crate::linalg::{Accumulator, BasedSpace, SparseVec};
use crate::report::{Check, ValidationReport};
use crate::scalar::Field;

/// `action[m * dim H + h] = m·h` in `M`; `coaction[m] = ρ(m)` in `H⊗M` with
/// index `h * dim M + m'`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaydModule<F> {
    pub space: BasedSpace,
    pub hdim: usize,
    pub action: Vec<SparseVec<F>>,
    pub coaction: Vec<SparseVec<F>>,
}

impl<F: Field> SaydModule<F> {
    pub fn new(
        h: &HopfAlgebra<F>,
        space: BasedSpace,
        action: Vec<SparseVec<F>>,
        coaction: Vec<SparseVec<F>>,
    ) -> Result<Self> {
        let (d, n) = (space.dim(), h.dim());
        if action.len() != d * n || action.iter().any(|v| v.dim() != d) {
            return Err(Error::Dimension("SAYD action must be a dim M × dim H table of vectors in M".into()));
        }
        if coaction.len() != d || coaction.iter().any(|v| v.dim() != n * d) {
            return Err(Error::Dimension("SAYD coaction must map each basis vector into H⊗M".into()));
        }
        Ok(SaydModule { space, hdim: n, action, coaction })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn act_basis(&self, m: usize, h: usize) -> &SparseVec<F> {
        &self.action[m * self.hdim + h]
    }

    /// `m·x` for `m ∈ M`, `x ∈ H`.
    pub fn act(&self, m: &SparseVec<F>, x: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.dim());
        for (mi, a) in m.iter() {
            for (hi, b) in x.iter() {
                acc.add_vec(&a.mul_ref(b), self.act_basis(mi, hi));
            }
        }
        acc.finish()
    }

    /// `ρ(m) = m₍₋₁₎⊗m₍₀₎` as `(h, m', coefficient)` triples.
    pub fn coact_terms(&self, m: usize) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        let d = self.dim();
        self.coaction[m].iter().map(move |(k, c)| (k / d, k % d, c))
    }

    pub fn coact(&self, m: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.hdim * self.dim());
        for (mi, a) in m.iter() {
            acc.add_vec(a, &self.coaction[mi]);
        }
        acc.finish()
    }
}

/// The one-dimensional module `^σk_δ`: `α·h = δ(h)α`, `ρ(α) = σ⊗α`.
pub fn sigma_k_delta<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>) -> Result<SaydModule<F>> {
    let rep = validate_modular_pair(h, pair);
    if let Some(c) = rep.first_failure() {
        return Err(Error::Precondition(format!(
            "modular pair fails {}: {}",
            c.identity,
            c.witness.clone().unwrap_or_default()
        )));
    }
    Ok(unchecked_sigma_k_delta(h, pair))
}

/// Same as [`sigma_k_delta`] without validating the pair.
pub fn unchecked_sigma_k_delta<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>) -> SaydModule<F> {
    let n = h.dim();
    let action = (0..n).map(|i| SparseVec::from_entries(1, [(0, pair.delta[i].clone())])).collect();
    let coaction = vec![pair.sigma.clone()];
    SaydModule { space: BasedSpace::new(vec!["α".into()]), hdim: n, action, coaction }
}

/// `k` with trivial action and coaction, the coefficients of ordinary cyclic cohomology.
pub fn trivial<F: Field>(h: &HopfAlgebra<F>) -> SaydModule<F> {
    unchecked_sigma_k_delta(h, &ModularPair::trivial(h))
}

pub fn validate_sayd<F: Field>(h: &HopfAlgebra<F>, m: &SaydModule<F>) -> ValidationReport {
    let mut rep = ValidationReport::new("SAYD module");
    let n = h.dim();
    let d = m.dim();
    if m.hdim != n {
        let mut c = Check::new("shape");
        c.fail(format!("module is over a {}-dimensional algebra, H has dimension {n}", m.hdim));
        rep.push(c);
        return rep;
    }
    let ml = |i: usize| m.space.label(i).to_string();
    let pair = |i: usize, a: usize| format!("({}, {})", ml(i), h.label(a));

    let mut unital = Check::new("right module unitality");
    let mut assoc = Check::new("right module associativity");
    for i in 0..d {
        let e = SparseVec::unit(d, i);
        unital.record(m.act(&e, h.unit()) == e, || ml(i));
        for a in 0..n {
            for b in 0..n {
                let l = m.act(m.act_basis(i, a), &h.basis(b));
                let r = m.act(&e, h.mul_basis(a, b));
                assoc.record(l == r, || format!("({}, {}, {})", ml(i), h.label(a), h.label(b)));
            }
        }
    }
    rep.push(unital);
    rep.push(assoc);

    let mut coassoc = Check::new("comodule coassociativity");
    let mut counit = Check::new("comodule counitality");
    for i in 0..d {
        // (Δ⊗id)ρ and (id⊗ρ)ρ in H⊗H⊗M with index (a*n + b)*d + m.
        let mut l = Accumulator::new(n * n * d);
        let mut r = Accumulator::new(n * n * d);
        let mut c = Accumulator::new(d);
        for (a, mi, x) in m.coact_terms(i) {
            for (bc, y) in h.comul_basis(a).iter() {
                l.add(bc * d + mi, &x.mul_ref(y));
            }
            for (b, mj, y) in m.coact_terms(mi) {
                r.add((a * n + b) * d + mj, &x.mul_ref(y));
            }
            c.add(mi, &x.mul_ref(h.counit_basis(a)));
        }
        coassoc.record(l.finish() == r.finish(), || ml(i));
        counit.record(c.finish() == SparseVec::unit(d, i), || ml(i));
    }
    rep.push(coassoc);
    rep.push(counit);

    let mut ayd = Check::new("ρ(mh)=S(h₃)m₍₋₁₎h₁⊗m₍₀₎h₂");
    for i in 0..d {
        for a in 0..n {
            let l = m.coact(m.act_basis(i, a));
            let mut r = Accumulator::new(n * d);
            for (legs, c) in h.sweedler(a, 3) {
                let (h1, h2, h3) = (legs[0], legs[1], legs[2]);
                let s3 = h.antipode(&h.basis(h3));
                for (mh, mi, x) in m.coact_terms(i) {
                    let left = h.mul(&h.mul(&s3, &h.basis(mh)), &h.basis(h1));
                    let right = m.act_basis(mi, h2);
                    r.add_vec(&c.mul_ref(x), &left.kron(right));
                }
            }
            ayd.record(l == r.finish(), || pair(i, a));
        }
    }
    rep.push(ayd);

    let mut stable = Check::new("m₍₀₎m₍₋₁₎=m");
    let mut derived = Check::new("m₍₀₎S⁻¹(m₍₋₁₎)=m (derived)");
    for i in 0..d {
        let mut s = Accumulator::new(d);
        let mut t = Accumulator::new(d);
        for (mh, mi, x) in m.coact_terms(i) {
            s.add_vec(x, m.act_basis(mi, mh));
            t.add_vec(x, &m.act(&SparseVec::unit(d, mi), &h.antipode_inv(&h.basis(mh))));
        }
        let e = SparseVec::unit(d, i);
        stable.record(s.finish() == e, || ml(i));
        derived.record(t.finish() == e, || ml(i));
    }
    rep.push(stable);
    rep.push(derived);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Q;

    #[test]
    fn fixture_modules_validate() {
        // S² ≠ id on H4, so (ε, 1) is only a modular pair on the others.
        for name in ["k", "kC2", "kC3", "kS3"] {
            let h = fixtures::hopf_by_name::<Q>(name).unwrap();
            let m = sigma_k_delta(&h, &ModularPair::trivial(&h)).unwrap();
            assert!(validate_sayd(&h, &m).passed(), "{name}");
        }
        let h4 = fixtures::sweedler::<Q>();
        let m = sigma_k_delta(&h4, &fixtures::sweedler_pair(&h4)).unwrap();
        let rep = validate_sayd(&h4, &m);
        assert!(rep.passed(), "{rep}");
        assert_eq!(m.coaction[0], h4.basis(1));
        assert!(sigma_k_delta(&h4, &ModularPair::trivial(&h4)).is_err());
    }

    #[test]
    fn kc2_instance() {
        let h = fixtures::kc2::<Q>();
        let m = sigma_k_delta(&h, &ModularPair::trivial(&h)).unwrap();
        assert_eq!(m.act_basis(0, 1), &SparseVec::unit(1, 0));
        assert_eq!(m.coaction[0], SparseVec::unit(2, 0));
    }

    #[test]
    fn coaction_by_g_over_kc2() {
        // (ε, g) is itself a modular pair on kC₂, so the AYD condition holds.
        let h = fixtures::kc2::<Q>();
        let pair = ModularPair { delta: h.counit_vec().to_vec(), sigma: h.basis(1) };
        let m = unchecked_sigma_k_delta(&h, &pair);
        let rep = validate_sayd(&h, &m);
        assert!(rep.check("m₍₀₎m₍₋₁₎=m").unwrap().passed());
        assert!(rep.check("ρ(mh)=S(h₃)m₍₋₁₎h₁⊗m₍₀₎h₂").unwrap().passed());
    }

    #[test]
    fn unstable_module_fails() {
        // δ = sign character, σ = g: stability reads α·g = -α.
        let h = fixtures::kc2::<Q>();
        let pair = ModularPair { delta: vec![Q::from_i64(1), Q::from_i64(-1)], sigma: h.basis(1) };
        assert!(sigma_k_delta(&h, &pair).is_err());
        let m = unchecked_sigma_k_delta(&h, &pair);
        let rep = validate_sayd(&h, &m);
        let c = rep.check("m₍₀₎m₍₋₁₎=m").unwrap();
        assert_eq!(c.witness.as_deref(), Some("α"));
    }
}
