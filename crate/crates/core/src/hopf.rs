//! Finite-dimensional Hopf algebras by structure constants, modular pairs in
//! involution and H-module coalgebras.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, BasedSpace, SparseMatrix, SparseVec};
use crate::report::{Check, ValidationReport};
use crate::scalar::Field;

/// Sparse element of a tensor power, keyed by basis-index tuples.
pub type Terms<F> = Vec<(Vec<usize>, F)>;

fn accumulate<F: Field>(map: &mut BTreeMap<Vec<usize>, F>, key: Vec<usize>, x: F) {
    if x.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v = v.add_ref(&x);
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, x);
        }
    }
}

/// A coalgebra on a based space. `comul[i]` lives in `C⊗C` with index `a*dim+b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra<F> {
    pub space: BasedSpace,
    pub comul: Vec<SparseVec<F>>,
    pub counit: Vec<F>,
}

impl<F: Field> Coalgebra<F> {
    pub fn new(space: BasedSpace, comul: Vec<SparseVec<F>>, counit: Vec<F>) -> Result<Self> {
        let n = space.dim();
        if comul.len() != n || counit.len() != n || comul.iter().any(|v| v.dim() != n * n) {
            return Err(Error::Dimension(format!("coalgebra tensors do not match dimension {n}")));
        }
        Ok(Coalgebra { space, comul, counit })
    }

    /// The one-dimensional coalgebra `k`.
    pub fn trivial() -> Self {
        Coalgebra {
            space: BasedSpace::new(vec!["1".into()]),
            comul: vec![SparseVec::unit(1, 0)],
            counit: vec![F::one()],
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn counit_of(&self, v: &SparseVec<F>) -> F {
        v.dot_dense(&self.counit)
    }

    pub fn comul_of(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.dim() * self.dim());
        for (i, x) in v.iter() {
            acc.add_vec(x, &self.comul[i]);
        }
        acc.finish()
    }

    /// `Δ^{(legs-1)}` of basis element `i`, coassociativity assumed.
    pub fn iterated(&self, i: usize, legs: usize) -> Terms<F> {
        self.iterated_vec(&SparseVec::unit(self.dim(), i), legs)
    }

    pub fn iterated_vec(&self, v: &SparseVec<F>, legs: usize) -> Terms<F> {
        assert!(legs >= 1, "iterated coproduct needs at least one leg");
        let n = self.dim();
        let mut cur: BTreeMap<Vec<usize>, F> = v.iter().map(|(i, x)| (vec![i], x.clone())).collect();
        for _ in 1..legs {
            let mut next = BTreeMap::new();
            for (key, x) in cur {
                let last = *key.last().expect("nonempty key");
                for (ab, y) in self.comul[last].iter() {
                    let mut k = key.clone();
                    k.pop();
                    k.push(ab / n);
                    k.push(ab % n);
                    accumulate(&mut next, k, x.mul_ref(y));
                }
            }
            cur = next;
        }
        cur.into_iter().collect()
    }

    /// Checks coassociativity and counitality.
    pub fn validate_into(&self, report: &mut ValidationReport) {
        let n = self.dim();
        let labels = &self.space.labels;
        let mut coassoc = Check::new("coassociativity");
        let mut counit = Check::new("counitality");
        for i in 0..n {
            let d = &self.comul[i];
            let mut left = Accumulator::new(n * n * n);
            let mut right = Accumulator::new(n * n * n);
            for (ab, x) in d.iter() {
                let (a, b) = (ab / n, ab % n);
                for (cd, y) in self.comul[a].iter() {
                    left.add(cd * n + b, &x.mul_ref(y));
                }
                for (cd, y) in self.comul[b].iter() {
                    right.add(a * n * n + cd, &x.mul_ref(y));
                }
            }
            coassoc.record(left.finish() == right.finish(), || labels[i].clone());
            let mut l = Accumulator::new(n);
            let mut r = Accumulator::new(n);
            for (ab, x) in d.iter() {
                let (a, b) = (ab / n, ab % n);
                l.add(b, &x.mul_ref(&self.counit[a]));
                r.add(a, &x.mul_ref(&self.counit[b]));
            }
            let e = SparseVec::unit(n, i);
            let (l, r) = (l.finish(), r.finish());
            counit.record(l == e && r == e, || labels[i].clone());
        }
        report.push(coassoc);
        report.push(counit);
    }
}

/// A Hopf algebra with bijective antipode given by structure constants.
///
/// `mul[i*n+j]` is `e_i e_j`; `comul` is stored in the underlying [`Coalgebra`].
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra<F> {
    pub name: String,
    coalg: Coalgebra<F>,
    mul: Vec<SparseVec<F>>,
    unit: SparseVec<F>,
    antipode: SparseMatrix<F>,
    antipode_inv: SparseMatrix<F>,
}

impl<F: Field> HopfAlgebra<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        space: BasedSpace,
        mul: Vec<SparseVec<F>>,
        unit: SparseVec<F>,
        comul: Vec<SparseVec<F>>,
        counit: Vec<F>,
        antipode: SparseMatrix<F>,
        antipode_inv: SparseMatrix<F>,
    ) -> Result<Self> {
        let n = space.dim();
        let bad = mul.len() != n * n
            || mul.iter().any(|v| v.dim() != n)
            || unit.dim() != n
            || (antipode.nrows(), antipode.ncols()) != (n, n)
            || (antipode_inv.nrows(), antipode_inv.ncols()) != (n, n);
        if bad {
            return Err(Error::Dimension(format!("Hopf algebra tensors do not match dimension {n}")));
        }
        let coalg = Coalgebra::new(space, comul, counit)?;
        Ok(HopfAlgebra { name: name.into(), coalg, mul, unit, antipode, antipode_inv })
    }

    pub fn space(&self) -> &BasedSpace {
        &self.coalg.space
    }

    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.coalg.space.label(i)
    }

    pub fn coalgebra(&self) -> &Coalgebra<F> {
        &self.coalg
    }

    pub fn unit(&self) -> &SparseVec<F> {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> SparseVec<F> {
        SparseVec::unit(self.dim(), i)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.mul[i * self.dim() + j]
    }

    pub fn mul(&self, a: &SparseVec<F>, b: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.dim());
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.add_vec(&x.mul_ref(y), self.mul_basis(i, j));
            }
        }
        acc.finish()
    }

    pub fn comul_basis(&self, i: usize) -> &SparseVec<F> {
        &self.coalg.comul[i]
    }

    pub fn comul(&self, a: &SparseVec<F>) -> SparseVec<F> {
        self.coalg.comul_of(a)
    }

    pub fn counit_basis(&self, i: usize) -> &F {
        &self.coalg.counit[i]
    }

    pub fn counit_vec(&self) -> &[F] {
        &self.coalg.counit
    }

    pub fn counit(&self, a: &SparseVec<F>) -> F {
        self.coalg.counit_of(a)
    }

    pub fn antipode_matrix(&self) -> &SparseMatrix<F> {
        &self.antipode
    }

    pub fn antipode_inv_matrix(&self) -> &SparseMatrix<F> {
        &self.antipode_inv
    }

    pub fn antipode(&self, a: &SparseVec<F>) -> SparseVec<F> {
        self.antipode.apply(a)
    }

    pub fn antipode_inv(&self, a: &SparseVec<F>) -> SparseVec<F> {
        self.antipode_inv.apply(a)
    }

    /// Iterated coproduct of a basis element into `legs` tensor factors.
    pub fn sweedler(&self, i: usize, legs: usize) -> Terms<F> {
        self.coalg.iterated(i, legs)
    }

    pub fn sweedler_vec(&self, a: &SparseVec<F>, legs: usize) -> Terms<F> {
        self.coalg.iterated_vec(a, legs)
    }

    /// Product in `H⊗H` of two elements given with index `a*n+b`.
    pub fn mul2(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let n = self.dim();
        let mut acc = Accumulator::new(n * n);
        for (ab, p) in x.iter() {
            for (cd, q) in y.iter() {
                let l = self.mul_basis(ab / n, cd / n);
                let r = self.mul_basis(ab % n, cd % n);
                acc.add_vec(&p.mul_ref(q), &l.kron(r));
            }
        }
        acc.finish()
    }

    /// Matrix of `h ↦ a h`.
    pub fn left_mul_matrix(&self, a: &SparseVec<F>) -> SparseMatrix<F> {
        let n = self.dim();
        SparseMatrix::from_columns(n, (0..n).map(|j| self.mul(a, &self.basis(j))).collect())
    }

    /// Matrix of `h ↦ h a`.
    pub fn right_mul_matrix(&self, a: &SparseVec<F>) -> SparseMatrix<F> {
        let n = self.dim();
        SparseMatrix::from_columns(n, (0..n).map(|j| self.mul(&self.basis(j), a)).collect())
    }

    fn lab(&self, idx: &[usize]) -> String {
        let parts: Vec<&str> = idx.iter().map(|&i| self.label(i)).collect();
        if parts.len() == 1 {
            parts[0].to_string()
        } else {
            format!("({})", parts.join(", "))
        }
    }
}

/// Checks every Hopf algebra axiom on basis elements.
pub fn validate_hopf<F: Field>(h: &HopfAlgebra<F>) -> ValidationReport {
    let n = h.dim();
    let mut rep = ValidationReport::new(format!("Hopf algebra {}", h.name));

    let mut assoc = Check::new("associativity");
    for a in 0..n {
        for b in 0..n {
            let ab = h.mul_basis(a, b).clone();
            for c in 0..n {
                let l = h.mul(&ab, &h.basis(c));
                let r = h.mul(&h.basis(a), h.mul_basis(b, c));
                assoc.record(l == r, || h.lab(&[a, b, c]));
            }
        }
    }
    rep.push(assoc);

    let mut unital = Check::new("unitality");
    for a in 0..n {
        let e = h.basis(a);
        unital.record(h.mul(h.unit(), &e) == e && h.mul(&e, h.unit()) == e, || h.lab(&[a]));
    }
    rep.push(unital);

    h.coalgebra().validate_into(&mut rep);

    let mut dmult = Check::new("comultiplication is an algebra map");
    for a in 0..n {
        for b in 0..n {
            let l = h.comul(h.mul_basis(a, b));
            let r = h.mul2(h.comul_basis(a), h.comul_basis(b));
            dmult.record(l == r, || h.lab(&[a, b]));
        }
    }
    dmult.record(h.comul(h.unit()) == h.unit().kron(h.unit()), || "unit".into());
    rep.push(dmult);

    let mut emult = Check::new("counit is an algebra map");
    for a in 0..n {
        for b in 0..n {
            let l = h.counit(h.mul_basis(a, b));
            let r = h.counit_basis(a).mul_ref(h.counit_basis(b));
            emult.record(l == r, || h.lab(&[a, b]));
        }
    }
    emult.record(h.counit(h.unit()) == F::one(), || "unit".into());
    rep.push(emult);

    let mut anti = Check::new("antipode axiom");
    for a in 0..n {
        let mut l = Accumulator::new(n);
        let mut r = Accumulator::new(n);
        for (xy, c) in h.comul_basis(a).iter() {
            let (x, y) = (xy / n, xy % n);
            l.add_vec(c, &h.mul(&h.antipode(&h.basis(x)), &h.basis(y)));
            r.add_vec(c, &h.mul(&h.basis(x), &h.antipode(&h.basis(y))));
        }
        let target = h.unit().scale(h.counit_basis(a));
        let (l, r) = (l.finish(), r.finish());
        anti.record(l == target && r == target, || format!("antipode axiom at basis {}", h.label(a)));
    }
    rep.push(anti);

    let mut inv = Check::new("antipode invertible");
    let id = SparseMatrix::identity(n);
    let s = h.antipode_matrix();
    let si = h.antipode_inv_matrix();
    let ssi = s.compose(si);
    let sis = si.compose(s);
    inv.record(ssi == id && sis == id, || {
        let (_, c) = ssi.first_difference(&id).or_else(|| sis.first_difference(&id)).unwrap_or((0, 0));
        h.label(c).to_string()
    });
    rep.push(inv);

    // Derived: Δ∘S = (S⊗S)∘flip∘Δ.
    let mut anticoalg = Check::new("antipode is an anti-coalgebra map (derived)");
    for a in 0..n {
        let l = h.comul(&h.antipode(&h.basis(a)));
        let mut r = Accumulator::new(n * n);
        for (xy, c) in h.comul_basis(a).iter() {
            let (x, y) = (xy / n, xy % n);
            let sy = h.antipode(&h.basis(y));
            let sx = h.antipode(&h.basis(x));
            r.add_vec(c, &sy.kron(&sx));
        }
        anticoalg.record(l == r.finish(), || h.lab(&[a]));
    }
    rep.push(anticoalg);
    rep
}

/// `S_δ(h) = δ(h₁) S(h₂)` as a matrix.
pub fn twisted_antipode<F: Field>(h: &HopfAlgebra<F>, delta: &[F]) -> SparseMatrix<F> {
    let n = h.dim();
    let cols = (0..n)
        .map(|i| {
            let mut acc = Accumulator::new(n);
            for (xy, c) in h.comul_basis(i).iter() {
                let (x, y) = (xy / n, xy % n);
                acc.add_vec(&c.mul_ref(&delta[x]), h.antipode_matrix().col(y));
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_columns(n, cols)
}

/// A character `δ` and a group-like `σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularPair<F> {
    pub delta: Vec<F>,
    pub sigma: SparseVec<F>,
}

impl<F: Field> ModularPair<F> {
    /// `(ε, 1)`.
    pub fn trivial(h: &HopfAlgebra<F>) -> Self {
        ModularPair { delta: h.counit_vec().to_vec(), sigma: h.unit().clone() }
    }

    pub fn delta_of(&self, v: &SparseVec<F>) -> F {
        v.dot_dense(&self.delta)
    }
}

fn character_check<F: Field>(h: &HopfAlgebra<F>, delta: &[F]) -> Check {
    let n = h.dim();
    let mut c = Check::new("δ is a character");
    for a in 0..n {
        for b in 0..n {
            let l = h.mul_basis(a, b).dot_dense(delta);
            let r = delta[a].mul_ref(&delta[b]);
            c.record(l == r, || h.lab(&[a, b]));
        }
    }
    c.record(h.unit().dot_dense(delta) == F::one(), || "δ(1)".into());
    c
}

pub fn validate_modular_pair<F: Field>(h: &HopfAlgebra<F>, p: &ModularPair<F>) -> ValidationReport {
    let n = h.dim();
    let mut rep = ValidationReport::new(format!("modular pair on {}", h.name));
    if p.delta.len() != n || p.sigma.dim() != n {
        let mut c = Check::new("shape");
        c.fail(format!("δ has {} entries and σ has {} for dimension {n}", p.delta.len(), p.sigma.dim()));
        rep.push(c);
        return rep;
    }
    rep.push(character_check(h, &p.delta));

    let mut gl = Check::new("σ is group-like");
    gl.record(h.comul(&p.sigma) == p.sigma.kron(&p.sigma), || "Δ(σ)=σ⊗σ violated".into());
    gl.record(h.counit(&p.sigma) == F::one(), || "ε(σ)=1 violated".into());
    rep.push(gl);

    let mut ds = Check::new("δ(σ)=1");
    let v = p.delta_of(&p.sigma);
    ds.record(v == F::one(), || format!("δ(σ)=1 violated: δ(σ)={v}"));
    rep.push(ds);

    let sigma_inv = h.antipode(&p.sigma);
    let mut si = Check::new("σ·S(σ)=1");
    si.record(
        h.mul(&p.sigma, &sigma_inv) == *h.unit() && h.mul(&sigma_inv, &p.sigma) == *h.unit(),
        || "S(σ) is not a two-sided inverse of σ".into(),
    );
    rep.push(si);

    let sd = twisted_antipode(h, &p.delta);
    let sd2 = sd.compose(&sd);
    let conj = h.left_mul_matrix(&p.sigma).compose(&h.right_mul_matrix(&sigma_inv));
    let mut inv = Check::new("S_δ²(h)=σhσ⁻¹");
    for a in 0..n {
        inv.record(sd2.col(a) == conj.col(a), || h.lab(&[a]));
    }
    rep.push(inv);
    rep
}

/// A coalgebra `C` with a left `H`-action making it an H-module coalgebra.
/// `action[h*dim_C + c]` is `h·c`.
#[derive(Clone, Debug, PartialEq)]
pub struct HModuleCoalgebra<F> {
    pub coalgebra: Coalgebra<F>,
    pub action: Vec<SparseVec<F>>,
}

impl<F: Field> HModuleCoalgebra<F> {
    pub fn new(h: &HopfAlgebra<F>, coalgebra: Coalgebra<F>, action: Vec<SparseVec<F>>) -> Result<Self> {
        let d = coalgebra.dim();
        if action.len() != h.dim() * d || action.iter().any(|v| v.dim() != d) {
            return Err(Error::Dimension("module coalgebra action has the wrong shape".into()));
        }
        Ok(HModuleCoalgebra { coalgebra, action })
    }

    /// `H` acting on itself by left multiplication.
    pub fn regular(h: &HopfAlgebra<F>) -> Self {
        let n = h.dim();
        let action = (0..n * n).map(|k| h.mul_basis(k / n, k % n).clone()).collect();
        HModuleCoalgebra { coalgebra: h.coalgebra().clone(), action }
    }

    /// A coalgebra with `H` acting through the counit.
    pub fn through_counit(h: &HopfAlgebra<F>, coalgebra: Coalgebra<F>) -> Self {
        let d = coalgebra.dim();
        let action = (0..h.dim() * d)
            .map(|k| SparseVec::unit(d, k % d).scale(h.counit_basis(k / d)))
            .collect();
        HModuleCoalgebra { coalgebra, action }
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    pub fn act_basis(&self, h: usize, c: usize) -> &SparseVec<F> {
        &self.action[h * self.dim() + c]
    }

    /// `x·v` for `x ∈ H`, `v ∈ C`.
    pub fn act(&self, x: &SparseVec<F>, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.dim());
        for (h, a) in x.iter() {
            for (c, b) in v.iter() {
                acc.add_vec(&a.mul_ref(b), self.act_basis(h, c));
            }
        }
        acc.finish()
    }
}

pub fn validate_module_coalgebra<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
) -> ValidationReport {
    let n = h.dim();
    let d = c.dim();
    let mut rep = ValidationReport::new("H-module coalgebra");
    c.coalgebra.validate_into(&mut rep);
    let cl = |i: usize| c.coalgebra.space.label(i).to_string();

    let mut assoc = Check::new("module associativity");
    let mut unital = Check::new("module unitality");
    let mut comul = Check::new("Δ_C(hc)=h₁c₁⊗h₂c₂");
    let mut counit = Check::new("ε_C(hc)=ε(h)ε_C(c)");
    for j in 0..d {
        let e = SparseVec::unit(d, j);
        unital.record(c.act(h.unit(), &e) == e, || cl(j));
    }
    for a in 0..n {
        for j in 0..d {
            let e = SparseVec::unit(d, j);
            for b in 0..n {
                let l = c.act(h.mul_basis(a, b), &e);
                let r = c.act(&h.basis(a), c.act_basis(b, j));
                assoc.record(l == r, || format!("({}, {}, {})", h.label(a), h.label(b), cl(j)));
            }
            let hc = c.act_basis(a, j);
            let l = c.coalgebra.comul_of(hc);
            let mut r = Accumulator::new(d * d);
            for (xy, p) in h.comul_basis(a).iter() {
                for (uv, q) in c.coalgebra.comul[j].iter() {
                    let left = c.act(&h.basis(xy / n), &SparseVec::unit(d, uv / d));
                    let right = c.act(&h.basis(xy % n), &SparseVec::unit(d, uv % d));
                    r.add_vec(&p.mul_ref(q), &left.kron(&right));
                }
            }
            comul.record(l == r.finish(), || format!("({}, {})", h.label(a), cl(j)));
            let l = c.coalgebra.counit_of(hc);
            let r = h.counit_basis(a).mul_ref(&c.coalgebra.counit[j]);
            counit.record(l == r, || format!("({}, {})", h.label(a), cl(j)));
        }
    }
    rep.push(assoc);
    rep.push(unital);
    rep.push(comul);
    rep.push(counit);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Q;

    #[test]
    fn fixture_hopf_algebras_validate() {
        for h in [fixtures::k::<Q>(), fixtures::kc2::<Q>(), fixtures::kc3::<Q>(), fixtures::ks3::<Q>(), fixtures::sweedler::<Q>()] {
            let rep = validate_hopf(&h);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn corrupted_square_fails_only_at_antipode() {
        let h = fixtures::broken_kc2::<Q>();
        let rep = validate_hopf(&h);
        assert!(rep.check("associativity").unwrap().passed());
        let anti = rep.check("antipode axiom").unwrap();
        assert!(!anti.passed());
        assert_eq!(anti.witness.as_deref(), Some("antipode axiom at basis g"));
    }

    #[test]
    fn twisted_antipode_examples() {
        let h = fixtures::kc2::<Q>();
        let sd = twisted_antipode(&h, h.counit_vec());
        assert_eq!(&sd, h.antipode_matrix());
        let k = fixtures::k::<Q>();
        assert_eq!(twisted_antipode(&k, k.counit_vec()), SparseMatrix::identity(1));
        let h4 = fixtures::sweedler::<Q>();
        let sd = twisted_antipode(&h4, h4.counit_vec());
        // S(x) = -gx
        assert_eq!(sd.col(2), &SparseVec::from_entries(4, [(3, Q::from_i64(-1))]));
    }

    #[test]
    fn modular_pairs() {
        let h = fixtures::kc2::<Q>();
        assert!(validate_modular_pair(&h, &ModularPair::trivial(&h)).passed());
        let h4 = fixtures::sweedler::<Q>();
        let rep = validate_modular_pair(&h4, &fixtures::sweedler_pair(&h4));
        assert!(rep.passed(), "{rep}");
        // δ(σ) = -1 on kC₂ with the sign character and σ = g.
        let bad = ModularPair { delta: vec![Q::from_i64(1), Q::from_i64(-1)], sigma: h.basis(1) };
        let rep = validate_modular_pair(&h, &bad);
        let c = rep.check("δ(σ)=1").unwrap();
        assert!(!c.passed());
        assert!(c.witness.as_ref().unwrap().starts_with("δ(σ)=1 violated"));
    }

    #[test]
    fn sweedler_sign_character_is_also_a_pair() {
        let h4 = fixtures::sweedler::<Q>();
        let p = ModularPair {
            delta: vec![Q::from_i64(1), Q::from_i64(-1), Q::from_i64(0), Q::from_i64(0)],
            sigma: h4.unit().clone(),
        };
        assert!(validate_modular_pair(&h4, &p).passed());
    }

    #[test]
    fn module_coalgebras() {
        let h = fixtures::kc2::<Q>();
        assert!(validate_module_coalgebra(&h, &HModuleCoalgebra::regular(&h)).passed());
        assert!(validate_module_coalgebra(&h, &HModuleCoalgebra::through_counit(&h, Coalgebra::trivial())).passed());
        let h4 = fixtures::sweedler::<Q>();
        assert!(validate_module_coalgebra(&h4, &HModuleCoalgebra::regular(&h4)).passed());
        let eps = HModuleCoalgebra::through_counit(&h4, h4.coalgebra().clone());
        assert!(validate_module_coalgebra(&h4, &eps).passed());
    }

    #[test]
    fn sigma_conjugation_matches_square_of_twisted_antipode() {
        let h4 = fixtures::sweedler::<Q>();
        let p = fixtures::sweedler_pair(&h4);
        let sd = twisted_antipode(&h4, &p.delta);
        let g = &p.sigma;
        let conj = h4.left_mul_matrix(g).compose(&h4.right_mul_matrix(&h4.antipode(g)));
        assert_eq!(sd.compose(&sd), conj);
    }
}
