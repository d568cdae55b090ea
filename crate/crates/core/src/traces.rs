//! δ-invariant σ-traces, their degree-0 cocycles, and the characteristic
//! maps `γ`, `γ_M` and `Ψ`.

use crate::builders::coalgebra::{coalgebra_cochain, CoalgebraCochain};
use crate::builders::hopf_cat::{hopf_cyclic_cochain, HopfCyclicCochain};
use crate::builders::nerve::{slot_pair, NerveBasis};
use crate::builders::{cm_complex, cyclic_nerve, digits};
use crate::category::{convolution_category, CoalgebraAction, Convolution, HCategory};
use crate::cyclic::{certify_morphism, CocyclicModule};
use crate::error::{Error, Result};
use crate::hopf::{twisted_antipode, HModuleCoalgebra, HopfAlgebra, ModularPair};
use crate::linalg::{kernel, Accumulator, SparseMatrix, SparseVec};
use crate::report::{Check, ValidationReport};
use crate::sayd::{sigma_k_delta, SaydModule};
use crate::scalar::Field;

/// One functional `T_X` on `Hom(X,X)` per object.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaTrace<F> {
    pub values: Vec<Vec<F>>,
}

impl<F: Field> SigmaTrace<F> {
    pub fn eval(&self, x: usize, f: &SparseVec<F>) -> F {
        f.dot_dense(&self.values[x])
    }

    fn from_flat(d: &HCategory<F>, flat: &SparseVec<F>) -> Self {
        let mut off = 0;
        let values = (0..d.n_obj())
            .map(|x| {
                let n = d.hom_dim(x, x);
                let v = (off..off + n).map(|i| flat.value(i)).collect();
                off += n;
                v
            })
            .collect();
        SigmaTrace { values }
    }
}

fn endo_offsets<F: Field>(d: &HCategory<F>) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(d.n_obj());
    let mut total = 0;
    for x in 0..d.n_obj() {
        off.push(total);
        total += d.hom_dim(x, x);
    }
    (off, total)
}

/// Rows of the linear system for the trace property and δ-invariance, over
/// the unknowns `T_X(e)` for basis `e` of each `Hom(X,X)`.
fn trace_equations<F: Field>(h: &HopfAlgebra<F>, d: &HCategory<F>, pair: &ModularPair<F>) -> Vec<SparseVec<F>> {
    let (off, total) = endo_offsets(d);
    let n = d.n_obj();
    let mut rows = Vec::new();
    let lift = |x: usize, v: &SparseVec<F>| v.remap(total, |i| off[x] + i);
    for x in 0..n {
        for y in 0..n {
            for f in 0..d.hom_dim(x, y) {
                for g in 0..d.hom_dim(y, x) {
                    // T_X(g∘f) - T_Y(f∘(σg))
                    let gf = d.compose_basis(x, y, x, g, f);
                    let sg = d.act(y, x, &pair.sigma, &SparseVec::unit(d.hom_dim(y, x), g));
                    let fsg = d.compose(y, x, y, &SparseVec::unit(d.hom_dim(x, y), f), &sg);
                    let r = lift(x, gf).sub(&lift(y, &fsg));
                    if !r.is_zero() {
                        rows.push(r);
                    }
                }
            }
        }
        for a in 0..h.dim() {
            for f in 0..d.hom_dim(x, x) {
                let e = SparseVec::unit(d.hom_dim(x, x), f);
                let r = lift(x, d.act_basis(x, x, a, f)).sub(&lift(x, &e).scale(&pair.delta[a]));
                if !r.is_zero() {
                    rows.push(r);
                }
            }
        }
    }
    rows
}

/// Checks the trace property, δ-invariance and `T((hg)∘f) = T(g∘(S_δ(h)f))`.
pub fn validate_trace<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    pair: &ModularPair<F>,
    t: &SigmaTrace<F>,
) -> ValidationReport {
    let mut rep = ValidationReport::new("σ-trace");
    let n = d.n_obj();
    let mut tr = Check::new("T_X(g∘f)=T_Y(f∘(σg))");
    let mut inv = Check::new("T_X(hf)=δ(h)T_X(f)");
    let mut twist = Check::new("T((hg)∘f)=T(g∘(S_δ(h)f)) (derived)");
    let sd = twisted_antipode(h, &pair.delta);
    for x in 0..n {
        for y in 0..n {
            for f in 0..d.hom_dim(x, y) {
                let fv = SparseVec::unit(d.hom_dim(x, y), f);
                for g in 0..d.hom_dim(y, x) {
                    let gv = SparseVec::unit(d.hom_dim(y, x), g);
                    let l = t.eval(x, d.compose_basis(x, y, x, g, f));
                    let r = t.eval(y, &d.compose(y, x, y, &fv, &d.act(y, x, &pair.sigma, &gv)));
                    tr.record(l == r, || format!("({}, {})", d.hom_label(x, y, f), d.hom_label(y, x, g)));
                    for a in 0..h.dim() {
                        let l = t.eval(x, &d.compose(x, y, x, d.act_basis(y, x, a, g), &fv));
                        let r = t.eval(x, &d.compose(x, y, x, &gv, &d.act(x, y, sd.col(a), &fv)));
                        twist.record(l == r, || {
                            format!("({}, {}, {})", h.label(a), d.hom_label(y, x, g), d.hom_label(x, y, f))
                        });
                    }
                }
            }
        }
        for a in 0..h.dim() {
            for f in 0..d.hom_dim(x, x) {
                let l = t.eval(x, d.act_basis(x, x, a, f));
                let r = pair.delta[a].mul_ref(&t.values[x][f]);
                inv.record(l == r, || format!("({}, {})", h.label(a), d.hom_label(x, x, f)));
            }
        }
    }
    rep.push(tr);
    rep.push(inv);
    rep.push(twist);
    rep
}

/// A basis of the δ-invariant σ-traces, each validated.
pub fn trace_space<F: Field>(h: &HopfAlgebra<F>, d: &HCategory<F>, pair: &ModularPair<F>) -> Result<Vec<SigmaTrace<F>>> {
    let (_, total) = endo_offsets(d);
    let rows = trace_equations(h, d, pair);
    let a = SparseMatrix::from_columns(total, rows).transpose();
    let k = kernel(&a);
    let basis: Vec<SigmaTrace<F>> = k.basis().iter().map(|v| SigmaTrace::from_flat(d, v)).collect();
    for (i, t) in basis.iter().enumerate() {
        if let Some(c) = validate_trace(h, d, pair, t).first_failure() {
            return Err(Error::Precondition(format!(
                "trace {i} fails {}: {}",
                c.identity,
                c.witness.clone().unwrap_or_default()
            )));
        }
    }
    Ok(basis)
}

/// Hopf-cyclic cochains with coefficients in `^σk_δ`, truncated at degree 1,
/// which is all that degree-0 cocycles need.
pub fn degree_zero_cochains<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    pair: &ModularPair<F>,
    budget: usize,
) -> Result<HopfCyclicCochain<F>> {
    hopf_cyclic_cochain(h, d, &sigma_k_delta(h, pair)?, 1, budget)
}

/// `φ(1⊗f) = T_X(f)`, in coordinates of the restricted degree-0 space.
pub fn trace_to_cocycle<F: Field>(x: &HopfCyclicCochain<F>, t: &SigmaTrace<F>) -> Result<SparseVec<F>> {
    let nb = &x.bases[0];
    let mut acc = Accumulator::new(nb.dim());
    for (k, objs, mors) in nb.iter() {
        acc.add(k, &t.values[objs[0]][mors[0]]);
    }
    let phi = acc.finish();
    let coords = x.subspaces[0]
        .coords(&phi)
        .ok_or_else(|| Error::Precondition("trace is not H-linear as a cochain".into()))?;
    if x.max_degree() >= 1 && !x.restricted.coboundary(0).apply(&coords).is_zero() {
        return Err(Error::Precondition("trace cochain is not a cocycle".into()));
    }
    Ok(coords)
}

/// `T_X(f) = φ(1⊗f)` for `φ` in restricted degree-0 coordinates.
pub fn cocycle_to_trace<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    pair: &ModularPair<F>,
    x: &HopfCyclicCochain<F>,
    phi: &SparseVec<F>,
) -> Result<SigmaTrace<F>> {
    if x.max_degree() >= 1 && !x.restricted.coboundary(0).apply(phi).is_zero() {
        return Err(Error::Precondition("b₀φ ≠ 0".into()));
    }
    let amb = x.subspaces[0].expand(phi);
    let nb = &x.bases[0];
    let mut values: Vec<Vec<F>> = (0..d.n_obj()).map(|o| vec![F::zero(); d.hom_dim(o, o)]).collect();
    for (k, objs, mors) in nb.iter() {
        values[objs[0]][mors[0]] = amb.value(k);
    }
    let t = SigmaTrace { values };
    if let Some(c) = validate_trace(h, d, pair, &t).first_failure() {
        return Err(Error::Precondition(format!("recovered trace fails {}", c.identity)));
    }
    Ok(t)
}

/// A characteristic map with its source, target and certificate.
#[derive(Clone, Debug)]
pub struct CharMap<F> {
    pub maps: Vec<SparseMatrix<F>>,
    pub source: CocyclicModule<F>,
    pub target: CocyclicModule<F>,
    pub report: ValidationReport,
}

/// `f^0 ∘ u_1 ∘ … ∘ u_n` along the loop, with `u_j` already in `Hom(X_{j+1}, X_j)`.
fn compose_loop<F: Field>(d: &HCategory<F>, objs: &[usize], slots: &[SparseVec<F>]) -> SparseVec<F> {
    let n = slots.len() - 1;
    let mut acc = slots[n].clone();
    for j in (0..n).rev() {
        acc = d.compose(objs[0], objs[j + 1], objs[j], &slots[j], &acc);
    }
    acc
}

/// `γ^n: H^{⊗n} → CN^n(D)`, `γ(h^1⊗…⊗h^n)(f^0⊗…⊗f^n) = T(f^0(h^1f^1)…(h^nf^n))`.
pub fn char_map_gamma<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    pair: &ModularPair<F>,
    t: &SigmaTrace<F>,
    nmax: usize,
    budget: usize,
) -> Result<CharMap<F>> {
    let source = cm_complex(h, pair, nmax, budget)?;
    let target = cyclic_nerve(d, nmax, budget)?.dual();
    let hd = h.dim();
    let mut maps = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let nb = NerveBasis::new(d, n);
        let cols = (0..source.dim(n))
            .map(|k| {
                let hs = digits(k, hd, n);
                let mut acc = Accumulator::new(nb.dim());
                for (r, objs, mors) in nb.iter() {
                    let slots: Vec<SparseVec<F>> = (0..=n)
                        .map(|j| {
                            let (s, tt) = slot_pair(objs, j);
                            if j == 0 {
                                SparseVec::unit(d.hom_dim(s, tt), mors[0])
                            } else {
                                d.act_basis(s, tt, hs[j - 1], mors[j]).clone()
                            }
                        })
                        .collect();
                    acc.add(r, &t.eval(objs[0], &compose_loop(d, objs, &slots)));
                }
                acc.finish()
            })
            .collect();
        maps.push(SparseMatrix::from_columns(nb.dim(), cols));
    }
    let report = certify_morphism("γ", &source, &target, &maps);
    Ok(CharMap { maps, source, target, report })
}

/// `γ_M^n(m⊗_H c)(f) = φ₀(m⊗(c^0f^0)…(c^nf^n))` for `φ₀` a functional on
/// `M⊗CN_0(D)` (index `m * dim CN_0 + f`).
#[allow(clippy::too_many_arguments)]
pub fn gamma_m<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
    act: &CoalgebraAction<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    phi0: &SparseVec<F>,
    nmax: usize,
    budget: usize,
) -> Result<CharMap<F>> {
    let x0 = hopf_cyclic_cochain(h, d, m, 1, budget)?;
    let coords = x0.subspaces[0]
        .coords(phi0)
        .ok_or_else(|| Error::Precondition("φ₀ is not H-linear".into()))?;
    if !x0.restricted.coboundary(0).apply(&coords).is_zero() {
        return Err(Error::Precondition("φ₀ is not a cocycle".into()));
    }
    let src: CoalgebraCochain<F> = coalgebra_cochain(h, c, m, nmax, budget)?;
    let target = cyclic_nerve(d, nmax, budget)?.dual();
    let nb0 = &x0.bases[0];
    let d0 = nb0.dim();
    let cd = c.dim();
    let mut rep = ValidationReport::new("γ_M");
    let mut maps = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let nb = NerveBasis::new(d, n);
        let tdim = cd.pow(n as u32 + 1);
        let ambient_cols: Vec<SparseVec<F>> = (0..m.dim() * tdim)
            .map(|k| {
                let (mi, cs) = (k / tdim, digits(k % tdim, cd, n + 1));
                let mut acc = Accumulator::new(nb.dim());
                for (r, objs, mors) in nb.iter() {
                    let slots: Vec<SparseVec<F>> = (0..=n)
                        .map(|j| {
                            let (s, t) = slot_pair(objs, j);
                            act.act_basis(d, s, t, cs[j], mors[j]).clone()
                        })
                        .collect();
                    let comp = compose_loop(d, objs, &slots);
                    let mut v = F::zero();
                    for (f, a) in comp.iter() {
                        if let Some(i) = nb0.index(&[objs[0]], &[f]) {
                            v = v.add_ref(&a.mul_ref(&phi0.value(mi * d0 + i)));
                        }
                    }
                    acc.add(r, &v);
                }
                acc.finish()
            })
            .collect();
        let amb = SparseMatrix::from_columns(nb.dim(), ambient_cols);
        let mut wd = Check::at_degree("γ_M vanishes on ⊗_H relations", n);
        for (k, rel) in src.relations[n].iter().enumerate() {
            wd.record(amb.apply(rel).is_zero(), || format!("relation {k}"));
        }
        rep.push(wd);
        maps.push(amb.select_columns(src.quotients[n].complement()));
    }
    rep.extend(certify_morphism("γ_M", &src.module, &target, &maps));
    Ok(CharMap { maps, source: src.module, target, report: rep })
}

/// `Ψ(m⊗_H c⊗φ)(g^0⊗…⊗g^n) = φ(m⊗g^0(c^0)⊗…⊗g^n(c^n))` from the diagonal
/// complex to the dual cyclic nerve of the convolution category.
pub fn psi_map<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
    m: &SaydModule<F>,
    d: &HCategory<F>,
    nmax: usize,
    budget: usize,
) -> Result<(CharMap<F>, Convolution<F>)> {
    let conv = convolution_category(h, c, d)?;
    let left = coalgebra_cochain(h, c, m, nmax, budget)?;
    let right = hopf_cyclic_cochain(h, d, m, nmax, budget)?;
    let source = left.module.tensor(&right.restricted);
    let target = cyclic_nerve(&conv.category, nmax, budget)?.dual();
    let cd = c.dim();
    let mut rep = ValidationReport::new("Ψ");
    let mut maps = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let cb = NerveBasis::new(&conv.category, n);
        let db = &right.bases[n];
        let ddim = db.dim();
        let tdim = cd.pow(n as u32 + 1);
        let phis = right.subspaces[n].basis();
        let rdim = phis.len();
        // Column (a, r): ambient coalgebra basis vector a against restricted cochain r.
        let ambient_cols: Vec<SparseVec<F>> = (0..m.dim() * tdim)
            .flat_map(|a| (0..rdim).map(move |r| (a, r)))
            .map(|(a, r)| {
                let (mi, cs) = (a / tdim, digits(a % tdim, cd, n + 1));
                let mut acc = Accumulator::new(cb.dim());
                for (k, objs, gs) in cb.iter() {
                    let slots: Vec<SparseVec<F>> = (0..=n)
                        .map(|j| {
                            let (s, t) = slot_pair(objs, j);
                            conv.eval(s, t, gs[j], cs[j])
                        })
                        .collect();
                    let mut v = Accumulator::new(m.dim() * ddim);
                    db.add_tensor(&mut v, mi * ddim, objs, &slots, &F::one());
                    acc.add(k, &phis[r].dot(&v.finish()));
                }
                acc.finish()
            })
            .collect();
        let amb = SparseMatrix::from_columns(cb.dim(), ambient_cols);
        let mut wd = Check::at_degree("Ψ vanishes on ⊗_H relations", n);
        for (k, rel) in left.relations[n].iter().enumerate() {
            for r in 0..rdim {
                wd.record(amb.apply(&rel.kron(&SparseVec::unit(rdim, r))).is_zero(), || {
                    format!("relation {k}, cochain {r}")
                });
            }
        }
        rep.push(wd);
        let idx: Vec<usize> =
            left.quotients[n].complement().iter().flat_map(|&q| (0..rdim).map(move |r| q * rdim + r)).collect();
        maps.push(amb.select_columns(&idx));
    }
    rep.extend(certify_morphism("Ψ", &source, &target, &maps));
    Ok((CharMap { maps, source, target, report: rep }, conv))
}
