//! Invariance under matrix linearization `D ↦ D⊗M_r(k)`: the inclusion and
//! trace chain maps, the explicit presimplicial homotopy, and the comparison
//! of Hopf-cyclic cohomology on both sides.

use crate::builders::nerve::{twisted_nerve, NerveBasis};
use crate::builders::hopf_cyclic_cochain;
use crate::category::{linearize, matrix_unit_index, HCategory};
use crate::cyclic::{certify_morphism, cohomology_table, hochschild_table, is_coboundary, CyclicModule};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::report::{Check, ValidationReport};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// Largest `r` accepted unless the caller raises it.
pub const DEFAULT_MAX_R: usize = 3;

/// Both chain modules `M⊗CN_•(D)` and `M⊗CN_•(D⊗M_r)` with their bases.
#[derive(Clone, Debug)]
pub struct Linearization<F> {
    pub r: usize,
    pub lin: HCategory<F>,
    pub chain: CyclicModule<F>,
    pub chain_lin: CyclicModule<F>,
    bases: Vec<NerveBasis>,
    bases_lin: Vec<NerveBasis>,
    md: usize,
}

impl<F: Field> Linearization<F> {
    pub fn new(
        h: &HopfAlgebra<F>,
        d: &HCategory<F>,
        m: &SaydModule<F>,
        r: usize,
        nmax: usize,
        budget: usize,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::Precondition("r must be at least 1".into()));
        }
        if !d.is_unital() {
            return Err(Error::Precondition("linearization needs identities".into()));
        }
        let lin = linearize(d, r);
        let (chain, bases) = twisted_nerve(h, d, m, nmax, budget)?;
        let (chain_lin, bases_lin) = twisted_nerve(h, &lin, m, nmax, budget)?;
        Ok(Linearization { r, lin, chain, chain_lin, bases, bases_lin, md: m.dim() })
    }

    pub fn max_degree(&self) -> usize {
        self.chain.max_degree()
    }

    /// `m⊗f^0⊗…⊗f^n ↦ m⊗(f^0⊗E_pp)⊗…⊗(f^n⊗E_pp)`, `p` counted from 1.
    pub fn inc(&self, p: usize) -> Result<Vec<SparseMatrix<F>>> {
        if p == 0 || p > self.r {
            return Err(Error::Precondition(format!("p = {p} outside 1..={}", self.r)));
        }
        let r = self.r;
        Ok((0..=self.max_degree())
            .map(|n| {
                let (src, tgt) = (&self.bases[n], &self.bases_lin[n]);
                let rows = self.md * tgt.dim();
                let mut cols = vec![SparseVec::zero(rows); self.md * src.dim()];
                for (k, objs, mors) in src.iter() {
                    let lifted: Vec<usize> = mors.iter().map(|&f| matrix_unit_index(f, p - 1, p - 1, r)).collect();
                    let t = tgt.index(objs, &lifted).expect("linearized block exists");
                    for mi in 0..self.md {
                        cols[mi * src.dim() + k] = SparseVec::unit(rows, mi * tgt.dim() + t);
                    }
                }
                SparseMatrix::from_columns(rows, cols)
            })
            .collect())
    }

    /// `m⊗(f^0⊗B^0)⊗…⊗(f^n⊗B^n) ↦ (m⊗f^0⊗…⊗f^n)·trace(B^0…B^n)`.
    pub fn trace(&self) -> Vec<SparseMatrix<F>> {
        let r = self.r;
        (0..=self.max_degree())
            .map(|n| {
                let (src, tgt) = (&self.bases_lin[n], &self.bases[n]);
                let rows = self.md * tgt.dim();
                let mut cols = vec![SparseVec::zero(rows); self.md * src.dim()];
                for (k, objs, mors) in src.iter() {
                    let units: Vec<(usize, usize, usize)> = mors.iter().map(|&x| (x / (r * r), (x / r) % r, x % r)).collect();
                    // trace(E_{a0 b0} … E_{an bn}) is 1 exactly when the indices close up.
                    let closes = (0..=n).all(|i| units[i].2 == units[(i + 1) % (n + 1)].1);
                    if !closes {
                        continue;
                    }
                    let fs: Vec<usize> = units.iter().map(|u| u.0).collect();
                    let t = tgt.index(objs, &fs).expect("base block exists");
                    for mi in 0..self.md {
                        cols[mi * src.dim() + k] = SparseVec::unit(rows, mi * tgt.dim() + t);
                    }
                }
                SparseMatrix::from_columns(rows, cols)
            })
            .collect()
    }

    /// `ℏ_0, …, ℏ_n: C_n(D⊗M_r, M) → C_{n+1}(D⊗M_r, M)`.
    pub fn homotopy(&self, d: &HCategory<F>, n: usize) -> Result<Vec<SparseMatrix<F>>> {
        if n >= self.max_degree() {
            return Err(Error::Degree { degree: n + 1, max: self.max_degree() });
        }
        let r = self.r;
        let idx = |f: usize, a: usize, b: usize| matrix_unit_index(f, a, b, r);
        let (src, tgt) = (&self.bases_lin[n], &self.bases_lin[n + 1]);
        let rows = self.md * tgt.dim();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut cols = vec![SparseVec::zero(rows); self.md * src.dim()];
            for (k, objs, mors) in src.iter() {
                let units: Vec<(usize, usize, usize)> = mors.iter().map(|&x| (x / (r * r), (x / r) % r, x % r)).collect();
                // Only the chain j = a_0, k = b_0 = a_1, …, q = b_i survives.
                if (0..i).any(|t| units[t].2 != units[t + 1].1) {
                    continue;
                }
                let x_next = objs[(i + 1) % (n + 1)];
                let mut new_objs = objs.to_vec();
                new_objs.insert(i + 1, x_next);
                let lin_dim = |s: usize, t: usize| self.lin.hom_dim(s, t);
                let mut slots = Vec::with_capacity(n + 2);
                for (t, &(f, a, b)) in units.iter().enumerate() {
                    let (s, tg) = crate::builders::nerve::slot_pair(&new_objs, if t <= i { t } else { t + 1 });
                    let (a2, b2) = match t {
                        0 => (a, 0),
                        _ if t <= i => (0, 0),
                        _ => (a, b),
                    };
                    slots.push(SparseVec::unit(lin_dim(s, tg), idx(f, a2, b2)));
                    if t == i {
                        let id = d.identity(x_next).expect("unital");
                        let q = units[i].2;
                        let v = SparseVec::from_entries(
                            lin_dim(x_next, x_next),
                            id.iter().map(|(g, c)| (idx(g, 0, q), c.clone())),
                        );
                        slots.push(v);
                    }
                }
                for mi in 0..self.md {
                    let mut acc = Accumulator::new(rows);
                    tgt.add_tensor(&mut acc, mi * tgt.dim(), &new_objs, &slots, &F::one());
                    cols[mi * src.dim() + k] = acc.finish();
                }
            }
            out.push(SparseMatrix::from_columns(rows, cols));
        }
        Ok(out)
    }
}

/// A chain map together with its certificate.
#[derive(Clone, Debug)]
pub struct ChainMap<F> {
    pub maps: Vec<SparseMatrix<F>>,
    pub report: ValidationReport,
}

/// Faces and cyclic operators always; degeneracies only when the map
/// comes from an identity-preserving functor.
fn certify_chain_map<F: Field>(
    name: &str,
    x: &CyclicModule<F>,
    y: &CyclicModule<F>,
    maps: &[SparseMatrix<F>],
    unital: bool,
) -> ValidationReport {
    // Dualizing turns a chain map X → Y into a cochain map Y* → X*.
    let t: Vec<SparseMatrix<F>> = maps.iter().map(SparseMatrix::transpose).collect();
    let mut rep = certify_morphism(name, &y.dual(), &x.dual(), &t);
    if !unital {
        rep.checks.retain(|c| !c.identity.contains('σ'));
    }
    rep
}

pub fn inc_chain_map<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    r: usize,
    p: usize,
    nmax: usize,
    budget: usize,
) -> Result<ChainMap<F>> {
    let l = Linearization::new(h, d, m, r, nmax, budget)?;
    let maps = l.inc(p)?;
    let report = certify_chain_map(&format!("inc_{p}"), &l.chain, &l.chain_lin, &maps, false);
    Ok(ChainMap { maps, report })
}

pub fn trace_chain_map<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    r: usize,
    nmax: usize,
    budget: usize,
) -> Result<ChainMap<F>> {
    let l = Linearization::new(h, d, m, r, nmax, budget)?;
    let maps = l.trace();
    let report = certify_chain_map("tr^M", &l.chain_lin, &l.chain, &maps, true);
    Ok(ChainMap { maps, report })
}

/// `ℏ_i` in every degree `n < N`, `ops[n][i]`, with the relations certified.
#[derive(Clone, Debug)]
pub struct HomotopyFamily<F> {
    pub ops: Vec<Vec<SparseMatrix<F>>>,
    pub report: ValidationReport,
}

impl<F: Field> HomotopyFamily<F> {
    /// `ℏ = Σ (−1)^i ℏ_i` in degree `n`.
    pub fn summed(&self, n: usize) -> SparseMatrix<F> {
        let ops = &self.ops[n];
        let mut s = SparseMatrix::zeros(ops[0].nrows(), ops[0].ncols());
        for (i, o) in ops.iter().enumerate() {
            s = s.add_scaled(&F::sign(i), o);
        }
        s
    }
}

pub fn homotopy_family<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    r: usize,
    nmax: usize,
    budget: usize,
) -> Result<HomotopyFamily<F>> {
    let l = Linearization::new(h, d, m, r, nmax, budget)?;
    let ops = (0..nmax).map(|n| l.homotopy(d, n)).collect::<Result<Vec<_>>>()?;
    let inc = l.inc(1)?;
    let tr = l.trace();
    let fam = HomotopyFamily { ops, report: ValidationReport::new("") };
    let report = certify_homotopy(&l.chain_lin, &fam, &inc, &tr);
    Ok(HomotopyFamily { report, ..fam })
}

/// The presimplicial relations one by one, then `bℏ + ℏb = id − inc₁∘tr`.
pub fn certify_homotopy<F: Field>(
    c: &CyclicModule<F>,
    fam: &HomotopyFamily<F>,
    inc: &[SparseMatrix<F>],
    tr: &[SparseMatrix<F>],
) -> ValidationReport {
    let mut rep = ValidationReport::new(format!("homotopy on D⊗M_r up to degree {}", fam.ops.len()));
    let ops = &fam.ops;
    let face = |n: usize, i: usize| &c.faces[n][i];
    let mut lower = Check::new("d_iℏ_j=ℏ_{j-1}d_i (i<j)");
    let mut diag = Check::new("d_iℏ_i=d_iℏ_{i-1} (0<i≤n)");
    let mut upper = Check::new("d_iℏ_j=ℏ_jd_{i-1} (i>j+1)");
    let mut first = Check::new("d_0ℏ_0=id");
    let mut last = Check::new("d_{n+1}ℏ_n=inc₁∘tr");
    let mut summed = Check::new("bℏ+ℏb=id−inc₁∘tr");
    for n in 0..ops.len() {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = face(n + 1, i).compose(&ops[n][j]);
                if i < j && n >= 1 {
                    lower.record(lhs == ops[n - 1][j - 1].compose(face(n, i)), || format!("n={n} i={i} j={j}"));
                }
                if i == j && i > 0 {
                    diag.record(lhs == face(n + 1, i).compose(&ops[n][j - 1]), || format!("n={n} i={i}"));
                }
                if i > j + 1 && n >= 1 {
                    upper.record(lhs == ops[n - 1][j].compose(face(n, i - 1)), || format!("n={n} i={i} j={j}"));
                }
            }
        }
        let id = SparseMatrix::identity(c.dim(n));
        first.record(face(n + 1, 0).compose(&ops[n][0]) == id, || format!("n={n}"));
        let it = inc[n].compose(&tr[n]);
        last.record(face(n + 1, n + 1).compose(&ops[n][n]) == it, || format!("n={n}"));
        let mut lhs = c.boundary(n + 1).compose(&fam.summed(n));
        if n >= 1 {
            lhs = lhs.add(&fam.summed(n - 1).compose(&c.boundary(n)));
        }
        summed.record(lhs == id.sub(&it), || format!("n={n}"));
    }
    for ch in [lower, diag, upper, first, last, summed] {
        rep.push(ch);
    }
    rep
}

/// Betti tables on both sides and the certificate of the comparison.
#[derive(Clone, Debug)]
pub struct MoritaComparison<F> {
    pub betti: Vec<usize>,
    pub betti_lin: Vec<usize>,
    pub hochschild: Vec<usize>,
    pub hochschild_lin: Vec<usize>,
    pub inc: Vec<SparseMatrix<F>>,
    pub trace: Vec<SparseMatrix<F>>,
    pub report: ValidationReport,
}

pub fn morita_compare<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    r: usize,
    nmax: usize,
    budget: usize,
) -> Result<MoritaComparison<F>> {
    let l = Linearization::new(h, d, m, r, nmax, budget)?;
    let x = hopf_cyclic_cochain(h, d, m, nmax, budget)?;
    let y = hopf_cyclic_cochain(h, &l.lin, m, nmax, budget)?;
    let inc = l.inc(1)?;
    let tr = l.trace();
    let mut rep = ValidationReport::new(format!("linearization by M_{r}"));
    rep.extend(certify_chain_map("inc_1", &l.chain, &l.chain_lin, &inc, false));
    rep.extend(certify_chain_map("tr^M", &l.chain_lin, &l.chain, &tr, true));

    let mut c = Check::new("tr∘inc₁=id");
    for n in 0..=nmax {
        c.record(tr[n].compose(&inc[n]) == SparseMatrix::identity(l.chain.dim(n)), || format!("degree {n}"));
    }
    rep.push(c);

    let tab = cohomology_table(&x.restricted)?;
    let tab_lin = cohomology_table(&y.restricted)?;
    let betti: Vec<usize> = tab.iter().map(|e| e.betti).collect();
    let betti_lin: Vec<usize> = tab_lin.iter().map(|e| e.betti).collect();
    let hochschild: Vec<usize> = hochschild_table(&x.restricted)?.iter().map(|e| e.betti).collect();
    let hochschild_lin: Vec<usize> = hochschild_table(&y.restricted)?.iter().map(|e| e.betti).collect();
    let mut c = Check::new("dim HC^n equal");
    for n in 0..betti.len() {
        c.record(betti[n] == betti_lin[n], || format!("degree {n}: {} vs {}", betti[n], betti_lin[n]));
    }
    rep.push(c);
    let mut c = Check::new("dim HH^n equal");
    for n in 0..hochschild.len() {
        c.record(hochschild[n] == hochschild_lin[n], || format!("degree {n}: {} vs {}", hochschild[n], hochschild_lin[n]));
    }
    rep.push(c);

    // φ ↦ φ∘tr and back along inc₁.
    let mut there = Check::new("φ∘tr is an H-linear cyclic cocycle");
    let mut back = Check::new("(φ∘tr)∘inc₁=φ");
    let mut other = Check::new("ψ∘inc₁∘tr−ψ is a coboundary");
    for e in &tab {
        let n = e.degree;
        for phi in &e.representatives {
            let amb = x.subspaces[n].expand(phi);
            let lifted = tr[n].transpose().apply(&amb);
            match y.subspaces[n].coords(&lifted) {
                Some(v) => {
                    let cyc = y.restricted.lambda(n).apply(&v) == v
                        && (n == y.max_degree() || y.restricted.coboundary(n).apply(&v).is_zero());
                    there.record(cyc, || format!("degree {n}"));
                }
                None => there.fail(format!("degree {n}: not H-linear")),
            }
            back.record(inc[n].transpose().apply(&lifted) == amb, || format!("degree {n}"));
        }
    }
    for e in &tab_lin {
        let n = e.degree;
        for psi in &e.representatives {
            let amb = y.subspaces[n].expand(psi);
            let round = tr[n].transpose().apply(&inc[n].transpose().apply(&amb));
            let Some(v) = y.subspaces[n].coords(&round) else {
                other.fail(format!("degree {n}: ψ∘inc₁∘tr is not H-linear"));
                continue;
            };
            match is_coboundary(&y.restricted, n, &v.sub(psi)) {
                Ok(Some(_)) => other.record(true, String::new),
                Ok(None) => other.fail(format!("degree {n}: difference is not a coboundary")),
                Err(err) => other.fail(format!("degree {n}: {err}")),
            }
        }
    }
    rep.push(there);
    rep.push(back);
    rep.push(other);
    Ok(MoritaComparison { betti, betti_lin, hochschild, hochschild_lin, inc, trace: tr, report: rep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::DEFAULT_MAX_BASIS;
    use crate::fixtures;
    use crate::sayd::trivial;
    use crate::Q;

    fn lin(d: &HCategory<Q>, h: &HopfAlgebra<Q>, r: usize, n: usize) -> Linearization<Q> {
        Linearization::new(h, d, &trivial(h), r, n, DEFAULT_MAX_BASIS).unwrap()
    }

    #[test]
    fn inclusion_examples() {
        let k = fixtures::k::<Q>();
        let d1 = fixtures::d1(&k);
        let l = lin(&d1, &k, 1, 2);
        assert!(l.inc(1).unwrap().iter().enumerate().all(|(n, m)| *m == SparseMatrix::identity(l.chain.dim(n))));
        let l = lin(&d1, &k, 2, 2);
        // id ↦ id⊗E11, which is basis vector 0 of Hom⊗M_2.
        assert_eq!(l.inc(1).unwrap()[0].col(0), &SparseVec::unit(4, 0));
        assert_eq!(l.inc(2).unwrap()[0].col(0), &SparseVec::unit(4, 3));
        assert!(l.inc(3).is_err());
        let h = fixtures::kc2::<Q>();
        let cm = inc_chain_map(&h, &fixtures::d3(&h), &trivial(&h), 2, 2, 2, DEFAULT_MAX_BASIS).unwrap();
        assert!(cm.report.passed(), "{}", cm.report);
        // inc_p sends id to id⊗E_pp, so degeneracies are not respected.
        let full = certify_morphism("inc", &l.chain_lin.dual(), &l.chain.dual(), &[l.inc(1).unwrap()[0].transpose()]);
        assert!(full.passed());
        let l3 = lin(&d1, &k, 2, 1);
        let t: Vec<_> = l3.inc(1).unwrap().iter().map(SparseMatrix::transpose).collect();
        assert!(!certify_morphism("inc", &l3.chain_lin.dual(), &l3.chain.dual(), &t).passed());
    }

    #[test]
    fn trace_examples() {
        let k = fixtures::k::<Q>();
        let l = lin(&fixtures::d1(&k), &k, 2, 2);
        let tr = l.trace();
        let nb = &l.bases_lin[1];
        // E11⊗E11 ↦ 1, E12⊗E12 ↦ 0, E12⊗E21 ↦ 1
        let e = |a, b| matrix_unit_index(0, a, b, 2);
        assert_eq!(tr[1].col(nb.index(&[0, 0], &[e(0, 0), e(0, 0)]).unwrap()), &SparseVec::unit(1, 0));
        assert!(tr[1].col(nb.index(&[0, 0], &[e(0, 1), e(0, 1)]).unwrap()).is_zero());
        assert_eq!(tr[1].col(nb.index(&[0, 0], &[e(0, 1), e(1, 0)]).unwrap()), &SparseVec::unit(1, 0));
        let h = fixtures::kc2::<Q>();
        let cm = trace_chain_map(&h, &fixtures::d3(&h), &trivial(&h), 2, 2, DEFAULT_MAX_BASIS).unwrap();
        assert!(cm.report.passed(), "{}", cm.report);
    }

    #[test]
    fn homotopy_relations() {
        let k = fixtures::k::<Q>();
        for d in [fixtures::d1(&k), fixtures::a2(&k), fixtures::d3(&k)] {
            let fam = homotopy_family(&k, &d, &trivial(&k), 2, 3, DEFAULT_MAX_BASIS).unwrap();
            assert!(fam.report.passed(), "{}", fam.report);
        }
        let h = fixtures::kc2::<Q>();
        let fam = homotopy_family(&h, &fixtures::d3(&h), &trivial(&h), 2, 2, DEFAULT_MAX_BASIS).unwrap();
        assert!(fam.report.passed(), "{}", fam.report);
    }

    #[test]
    fn broken_homotopy_is_caught() {
        let k = fixtures::k::<Q>();
        let d = fixtures::d1(&k);
        let l = lin(&d, &k, 2, 2);
        let mut fam = HomotopyFamily { ops: vec![l.homotopy(&d, 0).unwrap(), l.homotopy(&d, 1).unwrap()], report: ValidationReport::new("") };
        fam.ops[1].swap(0, 1);
        let rep = certify_homotopy(&l.chain_lin, &fam, &l.inc(1).unwrap(), &l.trace());
        assert!(!rep.passed());
    }

    #[test]
    fn betti_numbers_agree() {
        let k = fixtures::k::<Q>();
        let c = morita_compare(&k, &fixtures::d1(&k), &trivial(&k), 2, 3, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!(c.betti, vec![1, 0, 1]);
        assert_eq!(c.betti_lin, vec![1, 0, 1]);
        assert!(c.report.passed(), "{}", c.report);
        let c = morita_compare(&k, &fixtures::a2(&k), &trivial(&k), 2, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(c.report.passed(), "{}", c.report);
    }

    #[test]
    fn d3_over_kc2() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let c = morita_compare(&h, &d, &trivial(&h), 2, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(c.report.passed(), "{}", c.report);
        assert_eq!(c.betti, c.betti_lin);
        let fam = homotopy_family(&h, &d, &trivial(&h), 2, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(fam.report.passed(), "{}", fam.report);
    }
}
