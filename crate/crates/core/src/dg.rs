//! Graded semicategories with a differential, the universal one `Ω(D)`,
//! closed graded traces, characters of cycles and the cup product.

use std::collections::BTreeMap;

use crate::builders::nerve::NerveBasis;
use crate::builders::{check_budget, cyclic_nerve, digits, HopfCyclicCochain};
use crate::category::{tensor_categories, unitalize, CategoryBuilder, HCategory, LinearFunctor};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{Accumulator, BasedSpace, SparseMatrix, SparseVec};
use crate::report::{Check, ValidationReport};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// A DG (semi)category truncated at `max_degree`, with a left H-action.
///
/// Compositions are stored for every bidegree whose total is at most
/// `max_degree`; the differential for degrees below it.
#[derive(Clone, Debug, PartialEq)]
pub struct DgSemicategory<F> {
    pub objects: Vec<String>,
    pub max_degree: usize,
    /// `homs[n][x * N + y]`.
    homs: Vec<Vec<BasedSpace>>,
    /// Keyed by `(deg g, deg f)`; entry `[(x*N+y)*N+z][g * dim + f]` is `g∘f`.
    compose: BTreeMap<(usize, usize), Vec<Vec<SparseVec<F>>>>,
    diff: Vec<Vec<SparseMatrix<F>>>,
    identities: Option<Vec<SparseVec<F>>>,
    counit: Vec<F>,
    /// `action[n][pair][h * dim + f]`.
    action: Vec<Vec<Vec<SparseVec<F>>>>,
}

impl<F: Field> DgSemicategory<F> {
    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn hdim(&self) -> usize {
        self.counit.len()
    }

    pub fn hom(&self, n: usize, x: usize, y: usize) -> &BasedSpace {
        &self.homs[n][x * self.n_obj() + y]
    }

    pub fn hom_dim(&self, n: usize, x: usize, y: usize) -> usize {
        self.hom(n, x, y).dim()
    }

    pub fn is_unital(&self) -> bool {
        self.identities.is_some()
    }

    pub fn identity(&self, x: usize) -> Option<&SparseVec<F>> {
        self.identities.as_ref().map(|v| &v[x])
    }

    pub fn compose_basis(&self, dg: usize, df: usize, x: usize, y: usize, z: usize, g: usize, f: usize) -> &SparseVec<F> {
        let n = self.n_obj();
        let table = self.compose.get(&(dg, df)).expect("bidegree beyond the truncation");
        &table[(x * n + y) * n + z][g * self.hom_dim(df, x, y) + f]
    }

    /// `g∘f` for `f ∈ Hom^df(x,y)`, `g ∈ Hom^dg(y,z)`.
    #[allow(clippy::too_many_arguments)]
    pub fn compose(
        &self,
        dg: usize,
        df: usize,
        x: usize,
        y: usize,
        z: usize,
        g: &SparseVec<F>,
        f: &SparseVec<F>,
    ) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.hom_dim(dg + df, x, z));
        for (gi, a) in g.iter() {
            for (fi, b) in f.iter() {
                acc.add_vec(&a.mul_ref(b), self.compose_basis(dg, df, x, y, z, gi, fi));
            }
        }
        acc.finish()
    }

    /// `∂: Hom^n(x,y) → Hom^{n+1}(x,y)`.
    pub fn diff(&self, n: usize, x: usize, y: usize) -> &SparseMatrix<F> {
        &self.diff[n][x * self.n_obj() + y]
    }

    pub fn act_basis(&self, n: usize, x: usize, y: usize, h: usize, f: usize) -> &SparseVec<F> {
        &self.action[n][x * self.n_obj() + y][h * self.hom_dim(n, x, y) + f]
    }

    pub fn act(&self, n: usize, x: usize, y: usize, h: &SparseVec<F>, f: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.hom_dim(n, x, y));
        for (hi, a) in h.iter() {
            for (fi, b) in f.iter() {
                acc.add_vec(&a.mul_ref(b), self.act_basis(n, x, y, hi, fi));
            }
        }
        acc.finish()
    }

    /// The degree-0 part as an H-(semi)category.
    pub fn degree0(&self) -> HCategory<F> {
        let n = self.n_obj();
        let mut b = CategoryBuilder::new(self.counit.clone(), self.objects.clone());
        for x in 0..n {
            for y in 0..n {
                b = b.hom(x, y, self.hom(0, x, y).labels.clone());
            }
        }
        let entries = |v: &SparseVec<F>| v.iter().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..self.hom_dim(0, y, z) {
                        for f in 0..self.hom_dim(0, x, y) {
                            b = b.compose(x, y, z, g, f, &entries(self.compose_basis(0, 0, x, y, z, g, f)));
                        }
                    }
                }
                for hh in 0..self.hdim() {
                    for f in 0..self.hom_dim(0, x, y) {
                        b = b.action(x, y, hh, f, &entries(self.act_basis(0, x, y, hh, f)));
                    }
                }
            }
        }
        if let Some(ids) = &self.identities {
            for (x, e) in ids.iter().enumerate() {
                b = b.identity(x, &entries(e));
            }
        }
        b.build().expect("degree-0 data is well formed")
    }

    /// The same category seen as a DG category concentrated in degree 0
    /// with zero differential.
    pub fn concentrated(c: &HCategory<F>, max_degree: usize) -> Self {
        let n = c.n_obj();
        let pairs = n * n;
        let mut homs = vec![(0..pairs).map(|p| c.hom(p / n, p % n).clone()).collect::<Vec<_>>()];
        homs.extend((1..=max_degree).map(|_| vec![BasedSpace::new(Vec::new()); pairs]));
        let dim = |k: usize, p: usize| homs[k][p].dim();
        let mut compose = BTreeMap::new();
        for dg in 0..=max_degree {
            for df in 0..=max_degree - dg {
                let mut table = Vec::with_capacity(n * n * n);
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let out = dim(dg + df, x * n + z);
                            let cells = (0..dim(dg, y * n + z) * dim(df, x * n + y))
                                .map(|k| {
                                    if dg + df == 0 {
                                        let fd = c.hom_dim(x, y);
                                        c.compose_basis(x, y, z, k / fd, k % fd).clone()
                                    } else {
                                        SparseVec::zero(out)
                                    }
                                })
                                .collect();
                            table.push(cells);
                        }
                    }
                }
                compose.insert((dg, df), table);
            }
        }
        let diff = (0..max_degree)
            .map(|k| (0..pairs).map(|p| SparseMatrix::zeros(dim(k + 1, p), dim(k, p))).collect())
            .collect();
        let action = (0..=max_degree)
            .map(|k| {
                (0..pairs)
                    .map(|p| {
                        let d = dim(k, p);
                        (0..c.hdim() * d)
                            .map(|i| if k == 0 { c.act_basis(p / n, p % n, i / d, i % d).clone() } else { SparseVec::zero(0) })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let identities = c.is_unital().then(|| (0..n).map(|x| c.identity(x).unwrap().clone()).collect());
        DgSemicategory {
            objects: c.objects.clone(),
            max_degree,
            homs,
            compose,
            diff,
            identities,
            counit: c.counit().to_vec(),
            action,
        }
    }
}

fn sign<F: Field>(k: usize) -> F {
    F::sign(k)
}

/// Checks `∂² = 0`, the graded Leibniz rule, associativity, units and,
/// when `h` is given, the module axioms, H-linearity of `∂` and
/// equivariance of composition.
pub fn validate_dg<F: Field>(h: Option<&HopfAlgebra<F>>, s: &DgSemicategory<F>) -> ValidationReport {
    let mut rep = ValidationReport::new("DG semicategory");
    let n = s.n_obj();
    let top = s.max_degree;
    let unit = |k: usize, x: usize, y: usize, i: usize| SparseVec::unit(s.hom_dim(k, x, y), i);

    let mut c = Check::new("∂∂=0");
    for k in 0..top.saturating_sub(1) {
        for x in 0..n {
            for y in 0..n {
                let dd = s.diff(k + 1, x, y).compose(s.diff(k, x, y));
                c.record(dd.is_zero(), || format!("Hom^{k}({},{})", s.objects[x], s.objects[y]));
            }
        }
    }
    rep.push(c);

    let mut c = Check::new("∂(g∘f)=∂g∘f+(−1)^|g| g∘∂f");
    for dg in 0..top {
        for df in 0..top - dg {
            for (x, y, z) in triples(n) {
                for g in 0..s.hom_dim(dg, y, z) {
                    for f in 0..s.hom_dim(df, x, y) {
                        let (gv, fv) = (unit(dg, y, z, g), unit(df, x, y, f));
                        let lhs = s.diff(dg + df, x, z).apply(s.compose_basis(dg, df, x, y, z, g, f));
                        let a = s.compose(dg + 1, df, x, y, z, &s.diff(dg, y, z).apply(&gv), &fv);
                        let b = s.compose(dg, df + 1, x, y, z, &gv, &s.diff(df, x, y).apply(&fv));
                        c.record(lhs == a.add_scaled(&sign(dg), &b), || {
                            format!("g={} f={}", s.hom(dg, y, z).label(g), s.hom(df, x, y).label(f))
                        });
                    }
                }
            }
        }
    }
    rep.push(c);

    let mut c = Check::new("(k∘g)∘f=k∘(g∘f)");
    for dk in 0..=top {
        for dg in 0..=top - dk {
            for df in 0..=top - dk - dg {
                for (x, y, z) in triples(n) {
                    for w in 0..n {
                        for k in 0..s.hom_dim(dk, z, w) {
                            for g in 0..s.hom_dim(dg, y, z) {
                                let kg = s.compose_basis(dk, dg, y, z, w, k, g);
                                for f in 0..s.hom_dim(df, x, y) {
                                    let l = s.compose(dk + dg, df, x, y, w, kg, &unit(df, x, y, f));
                                    let gf = s.compose_basis(dg, df, x, y, z, g, f);
                                    let r = s.compose(dk, dg + df, x, z, w, &unit(dk, z, w, k), gf);
                                    c.record(l == r, || format!("degrees ({dk},{dg},{df})"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push(c);

    if s.is_unital() {
        let mut c = Check::new("1∘f=f=f∘1");
        for d in 0..=top {
            for x in 0..n {
                for y in 0..n {
                    for f in 0..s.hom_dim(d, x, y) {
                        let fv = unit(d, x, y, f);
                        let l = s.compose(0, d, x, y, y, s.identity(y).unwrap(), &fv);
                        let r = s.compose(d, 0, x, x, y, &fv, s.identity(x).unwrap());
                        c.record(l == fv && r == fv, || s.hom(d, x, y).label(f).to_string());
                    }
                }
            }
        }
        rep.push(c);
    }

    if let Some(h) = h {
        let mut lin = Check::new("∂(h·f)=h·∂f");
        let mut one = Check::new("1·f=f");
        for d in 0..=top {
            for x in 0..n {
                for y in 0..n {
                    for f in 0..s.hom_dim(d, x, y) {
                        let fv = unit(d, x, y, f);
                        one.record(s.act(d, x, y, h.unit(), &fv) == fv, || s.hom(d, x, y).label(f).to_string());
                        if d < top {
                            for a in 0..h.dim() {
                                let l = s.diff(d, x, y).apply(s.act_basis(d, x, y, a, f));
                                let r = s.act(d + 1, x, y, &h.basis(a), &s.diff(d, x, y).apply(&fv));
                                lin.record(l == r, || format!("{} on {}", h.label(a), s.hom(d, x, y).label(f)));
                            }
                        }
                    }
                }
            }
        }
        rep.push(one);
        rep.push(lin);
        let mut eq = Check::new("h(g∘f)=(h₁g)∘(h₂f)");
        for dg in 0..=top {
            for df in 0..=top - dg {
                for (x, y, z) in triples(n) {
                    for g in 0..s.hom_dim(dg, y, z) {
                        for f in 0..s.hom_dim(df, x, y) {
                            for a in 0..h.dim() {
                                let l = s.act(dg + df, x, z, &h.basis(a), s.compose_basis(dg, df, x, y, z, g, f));
                                let mut acc = Accumulator::new(s.hom_dim(dg + df, x, z));
                                for (legs, coef) in h.sweedler(a, 2) {
                                    let hg = s.act_basis(dg, y, z, legs[0], g);
                                    let hf = s.act_basis(df, x, y, legs[1], f);
                                    acc.add_vec(&coef, &s.compose(dg, df, x, y, z, hg, hf));
                                }
                                eq.record(l == acc.finish(), || format!("{} on degrees ({dg},{df})", h.label(a)));
                            }
                        }
                    }
                }
            }
        }
        rep.push(eq);
    }
    rep
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n * n * n).map(move |k| (k / (n * n), (k / n) % n, k % n))
}

/// Basis of `Hom^n_Ω(X,Y)`: words `(f^0+μ) df^1 … df^n` with
/// `f^0 ∈ C̃(X_1,Y)` and `f^k ∈ C(X_{k+1},X_k)`, `X_{n+1} = X`.
///
/// Ordered by the object tuple `(X_1, …, X_n)`, then by `(f^0, …, f^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WordBasis {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    blocks: Vec<(Vec<usize>, usize, Vec<usize>)>,
    lookup: BTreeMap<Vec<usize>, usize>,
    dim: usize,
}

impl WordBasis {
    fn new<F: Field>(ct: &HCategory<F>, d: &HCategory<F>, n: usize, x: usize, y: usize) -> Self {
        let nobj = d.n_obj();
        let mut blocks = Vec::new();
        let mut lookup = BTreeMap::new();
        let mut offset = 0;
        for k in 0..nobj.pow(n as u32) {
            let objs = digits(k, nobj, n);
            let chain = word_chain(&objs, x, y);
            let mut dims = vec![ct.hom_dim(chain[1], chain[0])];
            dims.extend((1..=n).map(|i| d.hom_dim(chain[i + 1], chain[i])));
            let size: usize = dims.iter().product();
            if size > 0 {
                lookup.insert(objs.clone(), blocks.len());
                blocks.push((objs, offset, dims));
                offset += size;
            }
        }
        WordBasis { degree: n, source: x, target: y, blocks, lookup, dim: offset }
    }

    /// `dim Hom^n_Ω(X,Y)` without enumerating.
    fn count<F: Field>(ct: &HCategory<F>, d: &HCategory<F>, n: usize, x: usize, y: usize) -> usize {
        // v[z] = number of tails ending at X_1 = z.
        let m = d.n_obj();
        let mut v: Vec<u128> = (0..m).map(|z| u128::from(z == x)).collect();
        for _ in 0..n {
            v = (0..m)
                .map(|t| (0..m).fold(0u128, |s, z| s.saturating_add(v[z].saturating_mul(d.hom_dim(z, t) as u128))))
                .collect();
        }
        let total = (0..m).fold(0u128, |s, z| s.saturating_add(v[z].saturating_mul(ct.hom_dim(z, y) as u128)));
        usize::try_from(total).unwrap_or(usize::MAX)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Iterates `(index, inner objects, [f^0, …, f^n])`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize], Vec<usize>)> + '_ {
        self.blocks.iter().flat_map(|(objs, off, dims)| {
            let size: usize = dims.iter().product();
            (0..size).map(move |k| {
                let mut mors = vec![0; dims.len()];
                let mut r = k;
                for i in (0..dims.len()).rev() {
                    mors[i] = r % dims[i];
                    r /= dims[i];
                }
                (off + k, objs.as_slice(), mors)
            })
        })
    }

    pub fn index(&self, objs: &[usize], mors: &[usize]) -> Option<usize> {
        let b = *self.lookup.get(objs)?;
        let (_, off, dims) = &self.blocks[b];
        let mut k = 0;
        for (m, d) in mors.iter().zip(dims) {
            k = k * d + m;
        }
        Some(off + k)
    }

    fn add_tensor<F: Field>(&self, acc: &mut Accumulator<F>, objs: &[usize], slots: &[SparseVec<F>], coef: &F) {
        let Some(&b) = self.lookup.get(objs) else {
            return;
        };
        let (_, off, dims) = &self.blocks[b];
        let mut stack: Vec<(usize, usize, F)> = vec![(0, 0, coef.clone())];
        while let Some((i, k, c)) = stack.pop() {
            if i == slots.len() {
                acc.add(off + k, &c);
                continue;
            }
            for (j, x) in slots[i].iter() {
                stack.push((i + 1, k * dims[i] + j, c.mul_ref(x)));
            }
        }
    }

    fn labels<F: Field>(&self, ct: &HCategory<F>, d: &HCategory<F>) -> Vec<String> {
        let multi = d.n_obj() > 1;
        self.iter()
            .map(|(_, objs, mors)| {
                let chain = word_chain(objs, self.source, self.target);
                let mut s = ct.hom_label(chain[1], chain[0], mors[0]).to_string();
                for i in 1..mors.len() {
                    s.push_str(&format!(" d{}", d.hom_label(chain[i + 1], chain[i], mors[i])));
                }
                if multi && !objs.is_empty() {
                    let o = objs.iter().map(|&x| d.objects[x].as_str()).collect::<Vec<_>>().join(",");
                    format!("({o}) {s}")
                } else {
                    s
                }
            })
            .collect()
    }
}

/// `[Y, X_1, …, X_n, X]`.
fn word_chain(objs: &[usize], x: usize, y: usize) -> Vec<usize> {
    let mut chain = Vec::with_capacity(objs.len() + 2);
    chain.push(y);
    chain.extend_from_slice(objs);
    chain.push(x);
    chain
}

/// `Ω(D)` with its word bases.
#[derive(Clone, Debug)]
pub struct Omega<F> {
    pub dg: DgSemicategory<F>,
    pub base: HCategory<F>,
    /// `D̃`, the unitalization, equal to the degree-0 part.
    pub unital: HCategory<F>,
    /// `bases[n][x * N + y]`.
    pub bases: Vec<Vec<WordBasis>>,
}

impl<F: Field> Omega<F> {
    fn is_mu(&self, chain: &[usize], head: usize) -> bool {
        chain[0] == chain[1] && head == self.base.hom_dim(chain[1], chain[0])
    }

    /// The inclusion `D → Ω^0(D) = D̃`.
    pub fn inclusion(&self) -> LinearFunctor<F> {
        let n = self.base.n_obj();
        let maps = (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                let dd = self.base.hom_dim(x, y);
                let cd = self.unital.hom_dim(x, y);
                SparseMatrix::from_columns(cd, (0..dd).map(|f| SparseVec::unit(cd, f)).collect())
            })
            .collect();
        LinearFunctor { object_map: (0..n).collect(), maps, preserves_identities: false, h_linear: true }
    }
}

/// The universal DG semicategory of `d`, truncated at `nmax`.
pub fn omega<F: Field>(h: &HopfAlgebra<F>, d: &HCategory<F>, nmax: usize, budget: usize) -> Result<Omega<F>> {
    if d.hdim() != h.dim() {
        return Err(Error::Dimension("category and Hopf algebra disagree on dim H".into()));
    }
    let ct = unitalize(d);
    let n = d.n_obj();
    let pairs = n * n;
    for k in 0..=nmax {
        for p in 0..pairs {
            check_budget(&format!("Hom^{k}_Ω"), WordBasis::count(&ct, d, k, p / n, p % n), budget)?;
        }
    }
    let bases: Vec<Vec<WordBasis>> =
        (0..=nmax).map(|k| (0..pairs).map(|p| WordBasis::new(&ct, d, k, p / n, p % n)).collect()).collect();
    let homs = bases.iter().map(|row| row.iter().map(|b| BasedSpace::new(b.labels(&ct, d))).collect()).collect();
    let mut om = Omega {
        dg: DgSemicategory {
            objects: d.objects.clone(),
            max_degree: nmax,
            homs,
            compose: BTreeMap::new(),
            diff: Vec::new(),
            identities: Some((0..n).map(|x| SparseVec::unit(ct.hom_dim(x, x), d.hom_dim(x, x))).collect()),
            counit: d.counit().to_vec(),
            action: Vec::new(),
        },
        base: d.clone(),
        unital: ct,
        bases,
    };
    let compose: BTreeMap<(usize, usize), Vec<Vec<SparseVec<F>>>> = (0..=nmax)
        .flat_map(|dg| (0..=nmax - dg).map(move |df| (dg, df)))
        .map(|(dg, df)| {
            let table = triples(n)
                .map(|(x, y, z)| {
                    let (gb, fb) = (&om.bases[dg][y * n + z], &om.bases[df][x * n + y]);
                    let mut cells = vec![SparseVec::zero(0); gb.dim() * fb.dim()];
                    for (gi, lo, lw) in gb.iter() {
                        for (fi, ro, rw) in fb.iter() {
                            cells[gi * fb.dim() + fi] = word_compose(&om, (x, y, z), (lo, &lw), (ro, &rw));
                        }
                    }
                    cells
                })
                .collect();
            ((dg, df), table)
        })
        .collect();
    let diff = (0..nmax)
        .map(|k| {
            (0..pairs)
                .map(|p| {
                    let (src, tgt) = (&om.bases[k][p], &om.bases[k + 1][p]);
                    let cols = src.iter().map(|(_, objs, w)| word_diff(&om, tgt, objs, &w)).collect();
                    SparseMatrix::from_columns(tgt.dim(), cols)
                })
                .collect()
        })
        .collect();
    let action = (0..=nmax)
        .map(|k| {
            (0..pairs)
                .map(|p| {
                    let b = &om.bases[k][p];
                    let mut cells = vec![SparseVec::zero(0); h.dim() * b.dim()];
                    for a in 0..h.dim() {
                        for (i, objs, w) in b.iter() {
                            cells[a * b.dim() + i] = word_act(h, &om, b, a, objs, &w);
                        }
                    }
                    cells
                })
                .collect()
        })
        .collect();
    om.dg.compose = compose;
    om.dg.diff = diff;
    om.dg.action = action;
    Ok(om)
}

/// `((f^0+μ)df^1…df^j) ∘ ((f^{j+1}+μ')df^{j+2}…df^m)`.
fn word_compose<F: Field>(
    om: &Omega<F>,
    (x, y, z): (usize, usize, usize),
    (lo, lw): (&[usize], &[usize]),
    (ro, rw): (&[usize], &[usize]),
) -> SparseVec<F> {
    let (d, ct) = (&om.base, &om.unital);
    let n = d.n_obj();
    let (j, i) = (lo.len(), ro.len());
    let out = &om.bases[i + j][x * n + z];
    let mut acc = Accumulator::new(out.dim());
    let rchain = word_chain(ro, x, y);
    let one = F::one();
    let cunit = |a: usize, b: usize, k: usize| SparseVec::unit(ct.hom_dim(a, b), k);
    let dunit = |a: usize, b: usize, k: usize| SparseVec::unit(d.hom_dim(a, b), k);
    if om.is_mu(&rchain, rw[0]) {
        // μ' is a unit: the tails simply concatenate.
        let objs: Vec<usize> = lo.iter().chain(ro).copied().collect();
        let chain = word_chain(&objs, x, z);
        let mut slots = vec![cunit(chain[1], chain[0], lw[0])];
        let tails = lw[1..].iter().chain(&rw[1..]);
        slots.extend(tails.enumerate().map(|(k, &f)| dunit(chain[k + 2], chain[k + 1], f)));
        out.add_tensor(&mut acc, &objs, &slots, &one);
        return acc.finish();
    }
    // Word f^0 f^1 … f^m on the chain P, f^k: P_{k+1} → P_k.
    let p: Vec<usize> = std::iter::once(z).chain(lo.iter().copied()).chain(std::iter::once(y)).chain(ro.iter().copied()).chain(std::iter::once(x)).collect();
    let w: Vec<usize> = lw.iter().chain(rw).copied().collect();
    let m = w.len() - 1;
    for k in 1..=j {
        let composed = d.compose_basis(p[k + 2], p[k + 1], p[k], w[k], w[k + 1]).clone();
        let objs: Vec<usize> = p[1..=m].iter().enumerate().filter(|(t, _)| *t + 1 != k + 1).map(|(_, &o)| o).collect();
        let mut slots = vec![cunit(p[1], p[0], w[0])];
        slots.extend((1..k).map(|t| dunit(p[t + 1], p[t], w[t])));
        slots.push(composed);
        slots.extend((k + 2..=m).map(|t| dunit(p[t + 1], p[t], w[t])));
        out.add_tensor(&mut acc, &objs, &slots, &sign::<F>(j - k));
    }
    let head = ct.compose_basis(p[2], p[1], p[0], w[0], w[1]).clone();
    let mut slots = vec![head];
    slots.extend((2..=m).map(|t| dunit(p[t + 1], p[t], w[t])));
    out.add_tensor(&mut acc, &p[2..=m], &slots, &sign::<F>(j));
    acc.finish()
}

/// `∂((f^0+μ)df^1…df^n) = df^0 df^1 … df^n`.
fn word_diff<F: Field>(om: &Omega<F>, tgt: &WordBasis, objs: &[usize], w: &[usize]) -> SparseVec<F> {
    let (x, y) = (tgt.source, tgt.target);
    let chain = word_chain(objs, x, y);
    let mut acc = Accumulator::new(tgt.dim());
    if om.is_mu(&chain, w[0]) {
        return acc.finish();
    }
    let mut new_objs = vec![y];
    new_objs.extend_from_slice(objs);
    let mu = om.base.hom_dim(y, y);
    let mut slots = vec![SparseVec::unit(om.unital.hom_dim(y, y), mu)];
    slots.extend((0..w.len()).map(|k| SparseVec::unit(om.base.hom_dim(chain[k + 1], chain[k]), w[k])));
    tgt.add_tensor(&mut acc, &new_objs, &slots, &F::one());
    acc.finish()
}

/// `h·((f^0+μ)df^1…df^n) = (h₁f^0+ε(h₁)μ) d(h₂f^1) … d(h_{n+1}f^n)`.
fn word_act<F: Field>(h: &HopfAlgebra<F>, om: &Omega<F>, b: &WordBasis, a: usize, objs: &[usize], w: &[usize]) -> SparseVec<F> {
    let chain = word_chain(objs, b.source, b.target);
    let mut acc = Accumulator::new(b.dim());
    for (legs, coef) in h.sweedler(a, w.len()) {
        let mut slots = vec![om.unital.act_basis(chain[1], chain[0], legs[0], w[0]).clone()];
        slots.extend((1..w.len()).map(|k| om.base.act_basis(chain[k + 1], chain[k], legs[k], w[k]).clone()));
        b.add_tensor(&mut acc, objs, &slots, &coef);
    }
    acc.finish()
}

/// The multiplicative extension `ρ̂: Ω(D) → S` of `ρ: D → S^0`, as one
/// matrix per degree and pair, `ρ̂((f^0+μ)df^1…df^n) = ρ(f^0)∂ρ(f^1)…∂ρ(f^n) + ∂ρ(f^1)…∂ρ(f^n)`.
pub fn universal_lift<F: Field>(
    om: &Omega<F>,
    s: &DgSemicategory<F>,
    rho: &LinearFunctor<F>,
) -> Result<Vec<Vec<SparseMatrix<F>>>> {
    let d = &om.base;
    let n = d.n_obj();
    let top = om.dg.max_degree;
    if s.max_degree < top {
        return Err(Error::Dimension("target is truncated below the source".into()));
    }
    let ro = &rho.object_map;
    let mut out = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut row = Vec::with_capacity(n * n);
        for p in 0..n * n {
            let b = &om.bases[k][p];
            let (x, y) = (b.source, b.target);
            let rows = s.hom_dim(k, ro[x], ro[y]);
            let mut cols = Vec::with_capacity(b.dim());
            for (_, objs, w) in b.iter() {
                let chain = word_chain(objs, x, y);
                // ∂ρ(f^1) … ∂ρ(f^n), built from the right.
                let mut tail: Option<SparseVec<F>> = None;
                for t in (1..=k).rev() {
                    let (src, tgt) = (chain[t + 1], chain[t]);
                    let df = s.diff(0, ro[src], ro[tgt]).apply(rho.map(d, src, tgt).col(w[t]));
                    tail = Some(match tail {
                        None => df,
                        Some(acc) => s.compose(1, k - t, ro[x], ro[src], ro[tgt], &df, &acc),
                    });
                }
                let v = if om.is_mu(&chain, w[0]) {
                    match tail {
                        Some(t) => t,
                        None => s
                            .identity(ro[x])
                            .cloned()
                            .ok_or_else(|| Error::Precondition("lifting μ in degree 0 needs identities in S".into()))?,
                    }
                } else {
                    let f0 = rho.map(d, chain[1], chain[0]).col(w[0]);
                    match tail {
                        Some(t) => s.compose(0, k, ro[x], ro[chain[1]], ro[y], f0, &t),
                        None => f0.clone(),
                    }
                };
                debug_assert_eq!(v.dim(), rows);
                cols.push(v);
            }
            row.push(SparseMatrix::from_columns(rows, cols));
        }
        out.push(row);
    }
    Ok(out)
}

/// Re-checks that a lift is a DG functor: multiplicative and commuting with `∂`.
pub fn certify_lift<F: Field>(
    om: &Omega<F>,
    s: &DgSemicategory<F>,
    rho: &LinearFunctor<F>,
    lift: &[Vec<SparseMatrix<F>>],
) -> ValidationReport {
    let mut rep = ValidationReport::new("universal lift");
    let n = om.base.n_obj();
    let ro = &rho.object_map;
    let top = om.dg.max_degree;
    let mut c = Check::new("ρ̂(g∘f)=ρ̂(g)∘ρ̂(f)");
    for dg in 0..=top {
        for df in 0..=top - dg {
            for (x, y, z) in triples(n) {
                for g in 0..om.dg.hom_dim(dg, y, z) {
                    for f in 0..om.dg.hom_dim(df, x, y) {
                        let l = lift[dg + df][x * n + z].apply(om.dg.compose_basis(dg, df, x, y, z, g, f));
                        let (lg, lf) = (lift[dg][y * n + z].col(g), lift[df][x * n + y].col(f));
                        let r = s.compose(dg, df, ro[x], ro[y], ro[z], lg, lf);
                        c.record(l == r, || format!("g={} f={}", om.dg.hom(dg, y, z).label(g), om.dg.hom(df, x, y).label(f)));
                    }
                }
            }
        }
    }
    rep.push(c);
    let mut c = Check::new("ρ̂∂=∂ρ̂");
    for k in 0..top {
        for p in 0..n * n {
            let (x, y) = (p / n, p % n);
            let l = lift[k + 1][p].compose(om.dg.diff(k, x, y));
            let r = s.diff(k, ro[x], ro[y]).compose(&lift[k][p]);
            c.record(l == r, || format!("degree {k}"));
        }
    }
    rep.push(c);
    rep
}

/// A degree-`n` functional `𝒯_X` on `M⊗Hom^n(X,X)` per object, index `m * dim + f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedGradedTrace<F> {
    pub degree: usize,
    pub values: Vec<SparseVec<F>>,
}

impl<F: Field> ClosedGradedTrace<F> {
    /// `𝒯_X(m⊗f)` for basis `m`.
    pub fn eval(&self, x: usize, m: usize, f: &SparseVec<F>) -> F {
        let d = f.dim();
        let mut s = F::zero();
        for (i, c) in f.iter() {
            if let Some(v) = self.values[x].get(m * d + i) {
                s = s.add_ref(&c.mul_ref(v));
            }
        }
        s
    }
}

/// Checks the three conditions of a closed graded (H,M)-trace.
pub fn certify_closed_trace<F: Field>(
    h: &HopfAlgebra<F>,
    m: &SaydModule<F>,
    s: &DgSemicategory<F>,
    t: &ClosedGradedTrace<F>,
) -> ValidationReport {
    let mut rep = ValidationReport::new(format!("closed graded trace of degree {}", t.degree));
    let n = s.n_obj();
    let deg = t.degree;
    if deg > s.max_degree || s.hdim() != h.dim() || m.hdim != h.dim() {
        let mut c = Check::new("shape");
        c.fail("degree or dim H out of range");
        rep.push(c);
        return rep;
    }
    let md = m.dim();
    let mut c = Check::new("𝒯(mh₁⊗S(h₂)f)=ε(h)𝒯(m⊗f)");
    for x in 0..n {
        let dim = s.hom_dim(deg, x, x);
        for f in 0..dim {
            let fv = SparseVec::unit(dim, f);
            for mi in 0..md {
                for a in 0..h.dim() {
                    let mut lhs = F::zero();
                    for (legs, coef) in h.sweedler(a, 2) {
                        let sf = s.act(deg, x, x, &h.antipode(&h.basis(legs[1])), &fv);
                        for (mj, mc) in m.act_basis(mi, legs[0]).iter() {
                            lhs = lhs.add_ref(&coef.mul_ref(mc).mul_ref(&t.eval(x, mj, &sf)));
                        }
                    }
                    let rhs = h.counit_basis(a).mul_ref(&t.eval(x, mi, &fv));
                    c.record(lhs == rhs, || format!("m={} h={} f={}", m.space.label(mi), h.label(a), s.hom(deg, x, x).label(f)));
                }
            }
        }
    }
    rep.push(c);
    let mut c = Check::new("𝒯(m⊗∂f)=0");
    if deg >= 1 {
        for x in 0..n {
            let dd = s.diff(deg - 1, x, x);
            for f in 0..dd.ncols() {
                for mi in 0..md {
                    c.record(t.eval(x, mi, dd.col(f)).is_zero(), || s.hom(deg - 1, x, x).label(f).to_string());
                }
            }
        }
    }
    rep.push(c);
    let mut c = Check::new("𝒯_X(m⊗g'g)=(−1)^{ij}𝒯_Y(m₀⊗(S⁻¹(m₋₁)g)g')");
    for i in 0..=deg {
        let j = deg - i;
        for x in 0..n {
            for y in 0..n {
                for g in 0..s.hom_dim(i, x, y) {
                    let gv = SparseVec::unit(s.hom_dim(i, x, y), g);
                    for g2 in 0..s.hom_dim(j, y, x) {
                        let g2v = SparseVec::unit(s.hom_dim(j, y, x), g2);
                        let lhs_f = s.compose_basis(j, i, x, y, x, g2, g);
                        for mi in 0..md {
                            let lhs = t.eval(x, mi, lhs_f);
                            let mut rhs = F::zero();
                            for (mh, m0, coef) in m.coact_terms(mi) {
                                let sg = s.act(i, x, y, &h.antipode_inv(&h.basis(mh)), &gv);
                                let v = s.compose(i, j, y, x, y, &sg, &g2v);
                                rhs = rhs.add_ref(&coef.mul_ref(&t.eval(y, m0, &v)));
                            }
                            let rhs = rhs.mul_ref(&sign::<F>(i * j));
                            c.record(lhs == rhs, || {
                                format!("m={} g={} g'={}", m.space.label(mi), s.hom(i, x, y).label(g), s.hom(j, y, x).label(g2))
                            });
                        }
                    }
                }
            }
        }
    }
    rep.push(c);
    rep
}

/// `𝒯_X(m⊗(f^0+μ)df^1…df^n) = φ(m⊗f^0⊗…⊗f^n)`, with the μ part sent to 0.
///
/// `phi` is an ambient functional on `M⊗CN_n(D)`, index `m * dim CN_n + k`.
pub fn omega_trace<F: Field>(om: &Omega<F>, md: usize, n: usize, phi: &SparseVec<F>) -> Result<ClosedGradedTrace<F>> {
    if n > om.dg.max_degree {
        return Err(Error::Degree { degree: n, max: om.dg.max_degree });
    }
    let d = &om.base;
    let nb = NerveBasis::new(d, n);
    if phi.dim() != md * nb.dim() {
        return Err(Error::Dimension(format!("cochain has dimension {}, expected {}", phi.dim(), md * nb.dim())));
    }
    let nobj = d.n_obj();
    let values = (0..nobj)
        .map(|x| {
            let b = &om.bases[n][x * nobj + x];
            let mut entries = Vec::new();
            for (i, objs, w) in b.iter() {
                let chain = word_chain(objs, x, x);
                if om.is_mu(&chain, w[0]) {
                    continue;
                }
                let loop_objs = &chain[..=n];
                let k = nb.index(loop_objs, &w).expect("every word with a morphism head is a loop");
                for mi in 0..md {
                    let v = phi.value(mi * nb.dim() + k);
                    if !v.is_zero() {
                        entries.push((mi * b.dim() + i, v));
                    }
                }
            }
            SparseVec::from_entries(md * b.dim(), entries)
        })
        .collect();
    Ok(ClosedGradedTrace { degree: n, values })
}

/// A cycle over `D`: a DG category, a closed graded trace and `ρ: D → S^0`.
#[derive(Clone, Debug)]
pub struct Cycle<F> {
    pub dg: DgSemicategory<F>,
    pub trace: ClosedGradedTrace<F>,
    pub rho: LinearFunctor<F>,
}

/// The cycle `(Ω(D), 𝒯_φ, D ⊆ D̃)` of a cocycle given in the restricted
/// coordinates of `x`, certified as a closed graded trace.
pub fn cocycle_to_cycle<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    x: &HopfCyclicCochain<F>,
    n: usize,
    phi: &SparseVec<F>,
    budget: usize,
) -> Result<(Cycle<F>, ValidationReport)> {
    let r = &x.restricted;
    if n > r.max_degree() {
        return Err(Error::Degree { degree: n, max: r.max_degree() });
    }
    if n < r.max_degree() && !r.coboundary(n).apply(phi).is_zero() {
        return Err(Error::Precondition("bφ ≠ 0".into()));
    }
    if r.lambda(n).apply(phi) != *phi {
        return Err(Error::Precondition("λφ ≠ φ".into()));
    }
    let om = omega(h, d, n, budget)?;
    let trace = omega_trace(&om, m.dim(), n, &x.subspaces[n].expand(phi))?;
    let rep = certify_closed_trace(h, m, &om.dg, &trace);
    let rho = om.inclusion();
    Ok((Cycle { dg: om.dg, trace, rho }, rep))
}

/// The character `φ(m⊗f^0⊗…⊗f^n) = 𝒯(m⊗ρ(f^0)∂ρ(f^1)…∂ρ(f^n))`, as an
/// ambient functional on `M⊗CN_n(D)`.
pub fn cycle_character<F: Field>(d: &HCategory<F>, md: usize, cycle: &Cycle<F>) -> Result<SparseVec<F>> {
    let (s, t, rho) = (&cycle.dg, &cycle.trace, &cycle.rho);
    let n = t.degree;
    if n > s.max_degree {
        return Err(Error::Degree { degree: n, max: s.max_degree });
    }
    let ro = &rho.object_map;
    let nb = NerveBasis::new(d, n);
    let mut entries = Vec::new();
    for (k, objs, mors) in nb.iter() {
        let slot = |i: usize| {
            let (src, tgt) = crate::builders::nerve::slot_pair(objs, i);
            (src, tgt, rho.map(d, src, tgt).col(mors[i]))
        };
        let mut acc: Option<SparseVec<F>> = None;
        for i in (1..=n).rev() {
            let (src, tgt, v) = slot(i);
            let df = s.diff(0, ro[src], ro[tgt]).apply(v);
            acc = Some(match acc {
                None => df,
                Some(a) => s.compose(1, n - i, ro[objs[0]], ro[src], ro[tgt], &df, &a),
            });
        }
        let (src, tgt, f0) = slot(0);
        let w = match acc {
            None => f0.clone(),
            Some(a) => s.compose(0, n, ro[objs[0]], ro[src], ro[tgt], f0, &a),
        };
        for mi in 0..md {
            let v = t.eval(ro[objs[0]], mi, &w);
            if !v.is_zero() {
                entries.push((mi * nb.dim() + k, v));
            }
        }
    }
    Ok(SparseVec::from_entries(md * nb.dim(), entries))
}

/// `S ⊗ S'` over `k`, with `(g⊗g')∘(f⊗f') = (−1)^{|g'||f|} gf⊗g'f'` and
/// `∂(f⊗g) = ∂f⊗g + (−1)^{|f|} f⊗∂g`. Objects are pairs `x * N' + x'`.
pub fn dg_tensor<F: Field>(s: &DgSemicategory<F>, s2: &DgSemicategory<F>, budget: usize) -> Result<DgSemicategory<F>> {
    let (n1, n2) = (s.n_obj(), s2.n_obj());
    let n = n1 * n2;
    let top = s.max_degree.min(s2.max_degree);
    let split = |p: usize| (p / n2, p % n2);
    // Block layout of Hom^k((x,x'),(y,y')): i = 0..=k, then a * dim' + b.
    let block = |k: usize, p: usize, q: usize| -> Vec<(usize, usize, usize)> {
        let ((x, x2), (y, y2)) = (split(p), split(q));
        let mut off = 0;
        (0..=k)
            .map(|i| {
                let (a, b) = (s.hom_dim(i, x, y), s2.hom_dim(k - i, x2, y2));
                let r = (off, a, b);
                off += a * b;
                r
            })
            .collect()
    };
    let mut homs = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut row = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let ((x, x2), (y, y2)) = (split(p), split(q));
                let mut labels = Vec::new();
                for i in 0..=k {
                    for a in &s.hom(i, x, y).labels {
                        for b in &s2.hom(k - i, x2, y2).labels {
                            labels.push(format!("{a}⊗{b}"));
                        }
                    }
                }
                check_budget(&format!("Hom^{k} of the tensor"), labels.len(), budget)?;
                row.push(BasedSpace::new(labels));
            }
        }
        homs.push(row);
    }
    let dim = |k: usize, p: usize, q: usize| homs[k][p * n + q].dim();
    let kron_into = |off: usize, total: usize, u: &SparseVec<F>, v: &SparseVec<F>, c: &F| {
        let bd = v.dim();
        SparseVec::from_entries(
            total,
            u.iter().flat_map(|(i, a)| v.iter().map(move |(j, b)| (off + i * bd + j, c.mul_ref(a).mul_ref(b)))),
        )
    };
    let mut compose = BTreeMap::new();
    for dg in 0..=top {
        for df in 0..=top - dg {
            let mut table = Vec::with_capacity(n * n * n);
            for (p, q, r) in triples(n) {
                let ((x, x2), (y, y2), (z, z2)) = (split(p), split(q), split(r));
                let (gb, fb, ob) = (block(dg, q, r), block(df, p, q), block(dg + df, p, r));
                let total = dim(dg + df, p, r);
                let mut cells = Vec::with_capacity(dim(dg, q, r) * dim(df, p, q));
                for gi in 0..dim(dg, q, r) {
                    let (k, gl) = locate(&gb, gi);
                    let (g, g2) = (gl / gb[k].2, gl % gb[k].2);
                    for fi in 0..dim(df, p, q) {
                        let (i, fl) = locate(&fb, fi);
                        let (f, f2) = (fl / fb[i].2, fl % fb[i].2);
                        let u = s.compose_basis(k, i, x, y, z, g, f);
                        let v = s2.compose_basis(dg - k, df - i, x2, y2, z2, g2, f2);
                        let sgn = sign::<F>((dg - k) * i);
                        cells.push(kron_into(ob[k + i].0, total, u, v, &sgn));
                    }
                }
                table.push(cells);
            }
            compose.insert((dg, df), table);
        }
    }
    let mut diff = Vec::with_capacity(top);
    for k in 0..top {
        let mut row = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let ((x, x2), (y, y2)) = (split(p), split(q));
                let (src, tgt) = (block(k, p, q), block(k + 1, p, q));
                let total = dim(k + 1, p, q);
                let cols = (0..dim(k, p, q))
                    .map(|fi| {
                        let (i, fl) = locate(&src, fi);
                        let (f, f2) = (fl / src[i].2, fl % src[i].2);
                        let e1 = SparseVec::unit(s.hom_dim(i, x, y), f);
                        let e2 = SparseVec::unit(s2.hom_dim(k - i, x2, y2), f2);
                        let a = kron_into(tgt[i + 1].0, total, s.diff(i, x, y).col(f), &e2, &F::one());
                        let b = kron_into(tgt[i].0, total, &e1, s2.diff(k - i, x2, y2).col(f2), &sign::<F>(i));
                        a.add(&b)
                    })
                    .collect();
                row.push(SparseMatrix::from_columns(total, cols));
            }
        }
        diff.push(row);
    }
    let identities = match (&s.identities, &s2.identities) {
        (Some(a), Some(b)) => Some((0..n).map(|p| {
            let (x, x2) = split(p);
            kron_into(0, dim(0, p, p), &a[x], &b[x2], &F::one())
        }).collect()),
        _ => None,
    };
    let action = (0..=top)
        .map(|k| (0..n * n).map(|pq| (0..dim(k, pq / n, pq % n)).map(|f| SparseVec::unit(dim(k, pq / n, pq % n), f)).collect()).collect())
        .collect();
    let objects = (0..n).map(|p| format!("{}|{}", s.objects[p / n2], s2.objects[p % n2])).collect();
    Ok(DgSemicategory { objects, max_degree: top, homs, compose, diff, identities, counit: vec![F::one()], action })
}

/// Block containing flat index `i`, with the offset inside it.
fn locate(blocks: &[(usize, usize, usize)], i: usize) -> (usize, usize) {
    for (k, &(off, a, b)) in blocks.iter().enumerate() {
        if i < off + a * b {
            return (k, i - off);
        }
    }
    unreachable!("index inside the tensor hom")
}

/// `(𝒯#𝒯')(f⊗f') = 𝒯(f)𝒯'(f')` on the `(p,q)` component, zero elsewhere.
pub fn trace_cup<F: Field>(
    s: &DgSemicategory<F>,
    t: &ClosedGradedTrace<F>,
    s2: &DgSemicategory<F>,
    t2: &ClosedGradedTrace<F>,
    tensor: &DgSemicategory<F>,
) -> Result<ClosedGradedTrace<F>> {
    let (p, q) = (t.degree, t2.degree);
    let deg = p + q;
    if deg > tensor.max_degree {
        return Err(Error::Degree { degree: deg, max: tensor.max_degree });
    }
    let n2 = s2.n_obj();
    let values = (0..tensor.n_obj())
        .map(|o| {
            let (x, x2) = (o / n2, o % n2);
            let total = tensor.hom_dim(deg, o, o);
            let off: usize = (0..p).map(|i| s.hom_dim(i, x, x) * s2.hom_dim(deg - i, x2, x2)).sum();
            let bd = s2.hom_dim(q, x2, x2);
            let entries = t.values[x]
                .iter()
                .flat_map(|(a, u)| t2.values[x2].iter().map(move |(b, v)| (off + a * bd + b, u.mul_ref(v))));
            SparseVec::from_entries(total, entries)
        })
        .collect();
    Ok(ClosedGradedTrace { degree: deg, values })
}

/// The cup product of cyclic cocycles `φ ∈ Z^p(C)`, `φ' ∈ Z^q(C')` over `k`,
/// as a cochain on `CN_{p+q}(C⊗C')`, with the certificate of the cup trace.
pub fn cyclic_cup<F: Field>(
    c: &HCategory<F>,
    phi: &SparseVec<F>,
    p: usize,
    c2: &HCategory<F>,
    phi2: &SparseVec<F>,
    q: usize,
    budget: usize,
) -> Result<(SparseVec<F>, ValidationReport)> {
    let k = crate::fixtures::k::<F>();
    if c.hdim() != 1 || c2.hdim() != 1 {
        return Err(Error::Precondition("the cup product is defined here for H = k".into()));
    }
    let top = p + q + 1;
    for (cat, v, deg) in [(c, phi, p), (c2, phi2, q)] {
        let x = cyclic_nerve(cat, deg + 1, budget)?.dual();
        if v.dim() != x.dim(deg) {
            return Err(Error::Dimension(format!("cochain has dimension {}, expected {}", v.dim(), x.dim(deg))));
        }
        if !x.coboundary(deg).apply(v).is_zero() || x.lambda(deg).apply(v) != *v {
            return Err(Error::Precondition(format!("input of degree {deg} is not a cyclic cocycle")));
        }
    }
    let om = omega(&k, c, top, budget)?;
    let om2 = omega(&k, c2, top, budget)?;
    let t = omega_trace(&om, 1, p, phi)?;
    let t2 = omega_trace(&om2, 1, q, phi2)?;
    let tensor = dg_tensor(&om.dg, &om2.dg, budget)?;
    let tc = trace_cup(&om.dg, &t, &om2.dg, &t2, &tensor)?;
    let unit = crate::sayd::trivial(&k);
    let report = certify_closed_trace(&k, &unit, &tensor, &tc);
    let cc = tensor_categories(c, c2);
    let (i1, i2) = (om.inclusion(), om2.inclusion());
    let n2 = c2.n_obj();
    let nn = cc.n_obj();
    let maps = (0..nn * nn)
        .map(|pq| {
            let (a, b) = (pq / nn, pq % nn);
            let ((x, x2), (y, y2)) = ((a / n2, a % n2), (b / n2, b % n2));
            let rows = tensor.hom_dim(0, a, b);
            let cols = (0..cc.hom_dim(a, b))
                .map(|f| {
                    let d2 = c2.hom_dim(x2, y2);
                    let u = i1.map(c, x, y).col(f / d2);
                    let v = i2.map(c2, x2, y2).col(f % d2);
                    let bd = v.dim();
                    SparseVec::from_entries(rows, u.iter().flat_map(|(i, s)| v.iter().map(move |(j, r)| (i * bd + j, s.mul_ref(r)))))
                })
                .collect();
            SparseMatrix::from_columns(rows, cols)
        })
        .collect();
    let rho = LinearFunctor { object_map: (0..nn).collect(), maps, preserves_identities: false, h_linear: true };
    let cycle = Cycle { dg: tensor, trace: tc, rho };
    Ok((cycle_character(&cc, 1, &cycle)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{hopf_cyclic_cochain, DEFAULT_MAX_BASIS};
    use crate::cyclic::{is_coboundary, lambda_complex};
    use crate::fixtures;
    use crate::linalg::kernel_basis;
    use crate::sayd::trivial;
    use crate::Q;

    fn q(a: i64) -> Q {
        Q::from_integer(a.into())
    }

    #[test]
    fn degree_zero_is_the_unitalization() {
        let h = fixtures::kc2::<Q>();
        for d in [fixtures::d1(&h), fixtures::a2(&h), fixtures::d3(&h)] {
            let om = omega(&h, &d, 2, DEFAULT_MAX_BASIS).unwrap();
            assert_eq!(om.dg.degree0(), unitalize(&d));
        }
    }

    #[test]
    fn dimensions() {
        let h = fixtures::kc2::<Q>();
        let om = omega(&h, &fixtures::d1(&h), 4, DEFAULT_MAX_BASIS).unwrap();
        assert!((0..=4).all(|n| om.dg.hom_dim(n, 0, 0) == 2));
        let om = omega(&h, &fixtures::d3(&h), 3, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!((0..=3).map(|n| om.dg.hom_dim(n, 0, 0)).collect::<Vec<_>>(), vec![3, 6, 12, 24]);
        // A2: words X ← … ← X stay at X; Hom^n(X,Y) has a^… choices.
        let a2 = fixtures::a2(&h);
        let om = omega(&h, &a2, 3, DEFAULT_MAX_BASIS).unwrap();
        let ct = unitalize(&a2);
        for n in 0..=3 {
            for p in 0..4 {
                assert_eq!(om.bases[n][p].dim(), WordBasis::count(&ct, &a2, n, p / 2, p % 2));
            }
        }
        assert!(matches!(omega(&h, &fixtures::d3(&h), 6, 50), Err(Error::Budget { .. })));
    }

    #[test]
    fn omega_is_a_dg_h_category() {
        let h = fixtures::kc2::<Q>();
        let rep = validate_dg(Some(&h), &omega(&h, &fixtures::d3(&h), 3, DEFAULT_MAX_BASIS).unwrap().dg);
        assert!(rep.passed(), "{rep}");
        let k = fixtures::k::<Q>();
        let rep = validate_dg(Some(&k), &omega(&k, &fixtures::a2(&k), 3, DEFAULT_MAX_BASIS).unwrap().dg);
        assert!(rep.passed(), "{rep}");
        let s = fixtures::sweedler::<Q>();
        let rep = validate_dg(Some(&s), &omega(&s, &fixtures::d1(&s), 2, DEFAULT_MAX_BASIS).unwrap().dg);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn explicit_products() {
        let k = fixtures::k::<Q>();
        let om = omega(&k, &fixtures::d3(&k), 2, DEFAULT_MAX_BASIS).unwrap();
        let b1 = &om.bases[1][0];
        let idx = |w: &[usize]| b1.index(&[0], w).unwrap();
        // (1·dx)∘x = d(x²) − x·dx = −x·dx
        let g = idx(&[0, 1]);
        let prod = om.dg.compose_basis(1, 0, 0, 0, 0, g, 1);
        assert_eq!(prod, &SparseVec::from_entries(b1.dim(), [(idx(&[1, 1]), q(-1))]));
        // x∘(1·dx) = x·dx
        let prod = om.dg.compose_basis(0, 1, 0, 0, 0, 1, g);
        assert_eq!(prod, &SparseVec::unit(b1.dim(), idx(&[1, 1])));
        // ∂x = μ·dx and ∂μ = 0
        assert_eq!(om.dg.diff(0, 0, 0).col(1), &SparseVec::unit(b1.dim(), idx(&[2, 1])));
        assert!(om.dg.diff(0, 0, 0).col(2).is_zero());
        // (μ·dx)∘(μ·dx) = μ·dx·dx
        let mdx = idx(&[2, 1]);
        let b2 = &om.bases[2][0];
        let prod = om.dg.compose_basis(1, 1, 0, 0, 0, mdx, mdx);
        assert_eq!(prod, &SparseVec::unit(b2.dim(), b2.index(&[0, 0], &[2, 1, 1]).unwrap()));
    }

    #[test]
    fn universal_lift_examples() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let om = omega(&h, &d, 3, DEFAULT_MAX_BASIS).unwrap();
        let lift = universal_lift(&om, &om.dg, &om.inclusion()).unwrap();
        for (n, row) in lift.iter().enumerate() {
            assert_eq!(row[0], SparseMatrix::identity(om.dg.hom_dim(n, 0, 0)));
        }
        assert!(certify_lift(&om, &om.dg, &om.inclusion(), &lift).passed());
        // Into D̃ with zero differential every word with a tail dies.
        let flat = DgSemicategory::concentrated(&om.unital, 3);
        let lift = universal_lift(&om, &flat, &om.inclusion()).unwrap();
        assert_eq!(lift[0][0], SparseMatrix::identity(3));
        assert!(lift[1][0].is_zero());
        let rep = certify_lift(&om, &flat, &om.inclusion(), &lift);
        assert!(rep.passed(), "{rep}");
    }

    fn cocycles(x: &HopfCyclicCochain<Q>, n: usize) -> Vec<SparseVec<Q>> {
        let l = lambda_complex(&x.restricted).unwrap();
        let z = if n < l.diffs.len() { kernel_basis(&l.diffs[n]) } else { Vec::new() };
        z.iter().map(|v| l.spaces[n].expand(v)).collect()
    }

    #[test]
    fn cocycle_cycle_round_trip() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let m = trivial(&h);
        let x = hopf_cyclic_cochain(&h, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
        let mut seen = 0;
        for n in 0..=2 {
            for phi in cocycles(&x, n) {
                let (cycle, rep) = cocycle_to_cycle(&h, &d, &m, &x, n, &phi, DEFAULT_MAX_BASIS).unwrap();
                assert!(rep.passed(), "{rep}");
                assert_eq!(cycle_character(&d, 1, &cycle).unwrap(), x.subspaces[n].expand(&phi));
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let h = fixtures::kc2::<Q>();
        let d = fixtures::d3(&h);
        let m = trivial(&h);
        let x = hopf_cyclic_cochain(&h, &d, &m, 2, DEFAULT_MAX_BASIS).unwrap();
        let l = lambda_complex(&x.restricted).unwrap();
        let bad = (0..l.spaces[1].dim())
            .map(|i| l.spaces[1].expand(&SparseVec::unit(l.spaces[1].dim(), i)))
            .find(|v| !x.restricted.coboundary(1).apply(v).is_zero());
        if let Some(v) = bad {
            assert!(cocycle_to_cycle(&h, &d, &m, &x, 1, &v, DEFAULT_MAX_BASIS).is_err());
        }
        // A trace seeing μ·d(id) is not closed.
        let k = fixtures::k::<Q>();
        let om = omega(&k, &fixtures::d1(&k), 1, DEFAULT_MAX_BASIS).unwrap();
        let b = &om.bases[1][0];
        let t = ClosedGradedTrace { degree: 1, values: vec![SparseVec::unit(b.dim(), b.index(&[0], &[1, 0]).unwrap())] };
        let rep = certify_closed_trace(&k, &trivial(&k), &om.dg, &t);
        assert!(!rep.check("𝒯(m⊗∂f)=0").unwrap().passed());
    }

    #[test]
    fn tensor_of_omegas() {
        let k = fixtures::k::<Q>();
        let om = omega(&k, &fixtures::d1(&k), 2, DEFAULT_MAX_BASIS).unwrap();
        let t = dg_tensor(&om.dg, &om.dg, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!(t.hom_dim(1, 0, 0), 8);
        let rep = validate_dg(Some(&k), &t);
        assert!(rep.passed(), "{rep}");
        let oa = omega(&k, &fixtures::a2(&k), 2, DEFAULT_MAX_BASIS).unwrap();
        let rep = validate_dg(None, &dg_tensor(&oa.dg, &om.dg, DEFAULT_MAX_BASIS).unwrap());
        assert!(rep.passed(), "{rep}");
    }

    fn nerve_cocycles(c: &HCategory<Q>, n: usize) -> (crate::cyclic::CocyclicModule<Q>, Vec<SparseVec<Q>>) {
        let x = cyclic_nerve(c, n + 1, DEFAULT_MAX_BASIS).unwrap().dual();
        let l = lambda_complex(&x).unwrap();
        let z = kernel_basis(&l.diffs[n]).iter().map(|v| l.spaces[n].expand(v)).collect();
        (x, z)
    }

    #[test]
    fn cup_in_degree_zero_is_pointwise() {
        let k = fixtures::k::<Q>();
        let (a2, d1) = (fixtures::a2(&k), fixtures::d1(&k));
        let phi = SparseVec::from_entries(2, [(0, q(2)), (1, q(3))]);
        let psi = SparseVec::from_entries(1, [(0, q(5))]);
        let (cup, rep) = cyclic_cup(&a2, &phi, 0, &d1, &psi, 0, DEFAULT_MAX_BASIS).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(cup, SparseVec::from_entries(2, [(0, q(10)), (1, q(15))]));
    }

    #[test]
    fn cup_with_the_point_trace() {
        let k = fixtures::k::<Q>();
        let (a2, d1) = (fixtures::a2(&k), fixtures::d1(&k));
        let point = SparseVec::unit(1, 0);
        let (x, z) = nerve_cocycles(&a2, 2);
        assert!(!z.is_empty());
        for phi in &z {
            let (cup, rep) = cyclic_cup(&a2, phi, 2, &d1, &point, 0, DEFAULT_MAX_BASIS).unwrap();
            assert!(rep.passed(), "{rep}");
            let diff = cup.sub(phi);
            assert!(is_coboundary(&x, 2, &diff).unwrap().is_some());
        }
    }

    #[test]
    fn cup_depends_only_on_classes() {
        let k = fixtures::k::<Q>();
        let (a2, d1) = (fixtures::a2(&k), fixtures::d1(&k));
        let (x, z) = nerve_cocycles(&a2, 2);
        let l = lambda_complex(&x).unwrap();
        let psi = l.spaces[1].expand(&SparseVec::from_dense(&vec![q(1); l.spaces[1].dim()]));
        let point = SparseVec::unit(1, 0);
        let shifted = z[0].add(&x.coboundary(1).apply(&psi));
        let (a, _) = cyclic_cup(&a2, &z[0], 2, &d1, &point, 0, DEFAULT_MAX_BASIS).unwrap();
        let (b, _) = cyclic_cup(&a2, &shifted, 2, &d1, &point, 0, DEFAULT_MAX_BASIS).unwrap();
        let cx = cyclic_nerve(&tensor_categories(&a2, &d1), 3, DEFAULT_MAX_BASIS).unwrap().dual();
        assert!(is_coboundary(&cx, 2, &b.sub(&a)).unwrap().is_some());
    }
}
