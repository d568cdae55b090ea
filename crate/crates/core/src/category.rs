//! Small k-linear categories and semicategories with a Hopf algebra acting on
//! every Hom space.
//!
//! Hom spaces are indexed by `(source, target)`. Composition `g∘f` with
//! `f: X → Y`, `g: Y → Z` is stored per object triple as a table indexed by
//! `g * dim Hom(X,Y) + f`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hopf::{HModuleCoalgebra, HopfAlgebra};
use crate::linalg::{kernel, Accumulator, BasedSpace, SparseMatrix, SparseVec, Subspace};
use crate::report::{Check, ValidationReport};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct HCategory<F> {
    pub objects: Vec<String>,
    homs: Vec<BasedSpace>,
    compose: Vec<Vec<SparseVec<F>>>,
    identities: Option<Vec<SparseVec<F>>>,
    /// Counit of the acting Hopf algebra; its length is `dim H`.
    counit: Vec<F>,
    action: Vec<Vec<SparseVec<F>>>,
}

/// An H-semicategory is the same data without identities.
pub type HSemicategory<F> = HCategory<F>;

impl<F: Field> HCategory<F> {
    pub fn builder(h: &HopfAlgebra<F>, objects: Vec<String>) -> CategoryBuilder<F> {
        CategoryBuilder::new(h.counit_vec().to_vec(), objects)
    }

    /// Builder for an ordinary k-linear category (`H = k`).
    pub fn linear_builder(objects: Vec<String>) -> CategoryBuilder<F> {
        CategoryBuilder::new(vec![F::one()], objects).counit_flag()
    }

    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn hdim(&self) -> usize {
        self.counit.len()
    }

    pub fn counit(&self) -> &[F] {
        &self.counit
    }

    fn pair(&self, x: usize, y: usize) -> usize {
        x * self.n_obj() + y
    }

    pub fn hom(&self, x: usize, y: usize) -> &BasedSpace {
        &self.homs[self.pair(x, y)]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).dim()
    }

    pub fn compose_basis(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> &SparseVec<F> {
        let n = self.n_obj();
        &self.compose[(x * n + y) * n + z][g * self.hom_dim(x, y) + f]
    }

    /// `g∘f` for `f ∈ Hom(x,y)`, `g ∈ Hom(y,z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &SparseVec<F>, f: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.hom_dim(x, z));
        for (gi, a) in g.iter() {
            for (fi, b) in f.iter() {
                acc.add_vec(&a.mul_ref(b), self.compose_basis(x, y, z, gi, fi));
            }
        }
        acc.finish()
    }

    pub fn is_unital(&self) -> bool {
        self.identities.is_some()
    }

    pub fn identity(&self, x: usize) -> Option<&SparseVec<F>> {
        self.identities.as_ref().map(|ids| &ids[x])
    }

    pub fn act_basis(&self, x: usize, y: usize, h: usize, f: usize) -> &SparseVec<F> {
        &self.action[self.pair(x, y)][h * self.hom_dim(x, y) + f]
    }

    pub fn act(&self, x: usize, y: usize, h: &SparseVec<F>, f: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.hom_dim(x, y));
        for (hi, a) in h.iter() {
            for (fi, b) in f.iter() {
                acc.add_vec(&a.mul_ref(b), self.act_basis(x, y, hi, fi));
            }
        }
        acc.finish()
    }

    /// Matrix of `f ↦ h·f` on `Hom(x,y)`.
    pub fn action_matrix(&self, x: usize, y: usize, h: &SparseVec<F>) -> SparseMatrix<F> {
        let d = self.hom_dim(x, y);
        SparseMatrix::from_columns(d, (0..d).map(|f| self.act(x, y, h, &SparseVec::unit(d, f))).collect())
    }

    pub fn hom_label(&self, x: usize, y: usize, f: usize) -> &str {
        self.hom(x, y).label(f)
    }

    /// Forgets identities.
    pub fn as_semicategory(&self) -> HSemicategory<F> {
        HCategory { identities: None, ..self.clone() }
    }

    /// Total number of basis morphisms.
    pub fn total_hom_dim(&self) -> usize {
        self.homs.iter().map(BasedSpace::dim).sum()
    }
}

/// Incremental construction of an [`HCategory`] from sparse entries.
#[derive(Clone, Debug)]
pub struct CategoryBuilder<F> {
    counit: Vec<F>,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<String>>,
    compose: Vec<(usize, usize, usize, usize, usize, Vec<(usize, F)>)>,
    identities: BTreeMap<usize, Vec<(usize, F)>>,
    action: Vec<(usize, usize, usize, usize, Vec<(usize, F)>)>,
    through_counit: bool,
}

impl<F: Field> CategoryBuilder<F> {
    pub fn new(counit: Vec<F>, objects: Vec<String>) -> Self {
        CategoryBuilder {
            counit,
            objects,
            homs: BTreeMap::new(),
            compose: Vec::new(),
            identities: BTreeMap::new(),
            action: Vec::new(),
            through_counit: false,
        }
    }

    fn counit_flag(mut self) -> Self {
        self.through_counit = true;
        self
    }

    pub fn hom(mut self, x: usize, y: usize, labels: Vec<String>) -> Self {
        self.homs.insert((x, y), labels);
        self
    }

    /// `g∘f = Σ c_k e_k` with `f ∈ Hom(x,y)`, `g ∈ Hom(y,z)`.
    pub fn compose(mut self, x: usize, y: usize, z: usize, g: usize, f: usize, val: &[(usize, F)]) -> Self {
        self.compose.push((x, y, z, g, f, val.to_vec()));
        self
    }

    pub fn identity(mut self, x: usize, val: &[(usize, F)]) -> Self {
        self.identities.insert(x, val.to_vec());
        self
    }

    /// `h·f = Σ c_k e_k` for `f ∈ Hom(x,y)`.
    pub fn action(mut self, x: usize, y: usize, h: usize, f: usize, val: &[(usize, F)]) -> Self {
        self.action.push((x, y, h, f, val.to_vec()));
        self
    }

    /// Every `h` acts as `ε(h)`.
    pub fn counit_action(self, _h: &HopfAlgebra<F>) -> Self {
        self.counit_flag()
    }

    pub fn build(self) -> Result<HCategory<F>> {
        let n = self.objects.len();
        let hdim = self.counit.len();
        let mut homs = vec![BasedSpace::new(Vec::new()); n * n];
        for ((x, y), labels) in &self.homs {
            if *x >= n || *y >= n {
                return Err(Error::Dimension(format!("Hom({x},{y}) refers to a missing object")));
            }
            homs[x * n + y] = BasedSpace::new(labels.clone());
        }
        let dim = |x: usize, y: usize| homs[x * n + y].dim();
        let mut compose: Vec<Vec<Accumulator<F>>> = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    compose.push((0..dim(y, z) * dim(x, y)).map(|_| Accumulator::new(dim(x, z))).collect());
                }
            }
        }
        for (x, y, z, g, f, val) in &self.compose {
            let (x, y, z) = (*x, *y, *z);
            if x >= n || y >= n || z >= n || *g >= dim(y, z) || *f >= dim(x, y) {
                return Err(Error::Dimension(format!("composition entry ({x},{y},{z},{g},{f}) out of range")));
            }
            let acc = &mut compose[(x * n + y) * n + z][g * dim(x, y) + f];
            for (k, c) in val {
                if *k >= dim(x, z) {
                    return Err(Error::Dimension(format!("composition value index {k} out of range")));
                }
                acc.add(*k, c);
            }
        }
        let compose = compose.into_iter().map(|v| v.into_iter().map(Accumulator::finish).collect()).collect();

        let identities = if self.identities.is_empty() {
            None
        } else {
            if self.identities.len() != n {
                return Err(Error::Dimension("identities must be given for every object or none".into()));
            }
            let mut ids = Vec::with_capacity(n);
            for x in 0..n {
                let d = dim(x, x);
                let val = &self.identities[&x];
                if val.iter().any(|(k, _)| *k >= d) {
                    return Err(Error::Dimension(format!("identity of object {x} out of range")));
                }
                ids.push(SparseVec::from_entries(d, val.iter().cloned()));
            }
            Some(ids)
        };

        let mut action: Vec<Vec<Accumulator<F>>> = (0..n * n)
            .map(|p| (0..hdim * homs[p].dim()).map(|_| Accumulator::new(homs[p].dim())).collect())
            .collect();
        if self.through_counit {
            for (p, acts) in action.iter_mut().enumerate() {
                let d = homs[p].dim();
                for (k, acc) in acts.iter_mut().enumerate() {
                    acc.add(k % d, &self.counit[k / d]);
                }
            }
        }
        for (x, y, h, f, val) in &self.action {
            let (x, y) = (*x, *y);
            if x >= n || y >= n || *h >= hdim || *f >= dim(x, y) {
                return Err(Error::Dimension(format!("action entry ({x},{y},{h},{f}) out of range")));
            }
            let acc = &mut action[x * n + y][h * dim(x, y) + f];
            for (k, c) in val {
                if *k >= dim(x, y) {
                    return Err(Error::Dimension(format!("action value index {k} out of range")));
                }
                acc.add(*k, c);
            }
        }
        let action = action.into_iter().map(|v| v.into_iter().map(Accumulator::finish).collect()).collect();
        Ok(HCategory { objects: self.objects, homs, compose, identities, counit: self.counit, action })
    }
}

/// Checks Def. of a left H-(semi)category on basis elements.
pub fn validate_hcategory<F: Field>(h: &HopfAlgebra<F>, d: &HCategory<F>) -> ValidationReport {
    let mut rep = ValidationReport::new("H-category");
    let n = d.n_obj();
    let hn = h.dim();
    if d.hdim() != hn {
        let mut c = Check::new("shape");
        c.fail(format!("category is acted on by a {}-dimensional algebra, H has dimension {hn}", d.hdim()));
        rep.push(c);
        return rep;
    }
    let lab = |x: usize, y: usize, f: usize| d.hom_label(x, y, f).to_string();

    let mut assoc = Check::new("associativity");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for f in 0..d.hom_dim(x, y) {
                        for g in 0..d.hom_dim(y, z) {
                            let gf = d.compose_basis(x, y, z, g, f);
                            for k in 0..d.hom_dim(z, w) {
                                let e = SparseVec::unit(d.hom_dim(z, w), k);
                                let l = d.compose(x, z, w, &e, gf);
                                let kg = d.compose_basis(y, z, w, k, g);
                                let r = d.compose(x, y, w, kg, &SparseVec::unit(d.hom_dim(x, y), f));
                                assoc.record(l == r, || {
                                    format!("({}, {}, {})", lab(z, w, k), lab(y, z, g), lab(x, y, f))
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push(assoc);

    if d.is_unital() {
        let mut unit = Check::new("unitality");
        for x in 0..n {
            for y in 0..n {
                for f in 0..d.hom_dim(x, y) {
                    let e = SparseVec::unit(d.hom_dim(x, y), f);
                    let l = d.compose(x, y, y, d.identity(y).expect("unital"), &e);
                    let r = d.compose(x, x, y, &e, d.identity(x).expect("unital"));
                    unit.record(l == e && r == e, || lab(x, y, f));
                }
            }
        }
        rep.push(unit);
    }

    let mut module = Check::new("each Hom is an H-module");
    let mut equiv = Check::new("h(gf)=(h₁g)(h₂f)");
    for x in 0..n {
        for y in 0..n {
            let dxy = d.hom_dim(x, y);
            for f in 0..dxy {
                let e = SparseVec::unit(dxy, f);
                module.record(d.act(x, y, h.unit(), &e) == e, || format!("(1, {})", lab(x, y, f)));
                for a in 0..hn {
                    for b in 0..hn {
                        let l = d.act(x, y, h.mul_basis(a, b), &e);
                        let r = d.act(x, y, &h.basis(a), d.act_basis(x, y, b, f));
                        module.record(l == r, || format!("({}, {}, {})", h.label(a), h.label(b), lab(x, y, f)));
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for a in 0..hn {
                    for g in 0..d.hom_dim(y, z) {
                        for f in 0..d.hom_dim(x, y) {
                            let l = d.act(x, z, &h.basis(a), d.compose_basis(x, y, z, g, f));
                            let mut r = Accumulator::new(d.hom_dim(x, z));
                            for (pq, c) in h.comul_basis(a).iter() {
                                let hg = d.act_basis(y, z, pq / hn, g);
                                let hf = d.act_basis(x, y, pq % hn, f);
                                r.add_vec(c, &d.compose(x, y, z, hg, hf));
                            }
                            equiv.record(l == r.finish(), || {
                                format!("({}, {}, {})", h.label(a), lab(y, z, g), lab(x, y, f))
                            });
                        }
                    }
                }
            }
        }
    }
    rep.push(module);
    if d.is_unital() {
        let mut ids = Check::new("h(id_X)=ε(h)id_X");
        for x in 0..n {
            let id = d.identity(x).expect("unital");
            for a in 0..hn {
                let l = d.act(x, x, &h.basis(a), id);
                ids.record(l == id.scale(h.counit_basis(a)), || format!("({}, {})", h.label(a), d.objects[x]));
            }
        }
        rep.push(ids);
    }
    rep.push(equiv);
    rep
}

/// Adjoins a fresh unit to every `Hom(X,X)`, placed last in the basis and
/// acted on through the counit. Any existing identity stays an ordinary
/// basis morphism.
pub fn unitalize<F: Field>(s: &HSemicategory<F>) -> HCategory<F> {
    let n = s.n_obj();
    let mut b = CategoryBuilder::new(s.counit.clone(), s.objects.clone());
    let ext = |x: usize, y: usize| s.hom_dim(x, y) + usize::from(x == y);
    for x in 0..n {
        for y in 0..n {
            let mut labels = s.hom(x, y).labels.clone();
            if x == y {
                labels.push(format!("1~{}", s.objects[x]));
            }
            b = b.hom(x, y, labels);
        }
    }
    let entries = |v: &SparseVec<F>| v.iter().map(|(i, c)| (i, c.clone())).collect::<Vec<_>>();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in 0..ext(y, z) {
                    for f in 0..ext(x, y) {
                        let g_unit = y == z && g == s.hom_dim(y, z);
                        let f_unit = x == y && f == s.hom_dim(x, y);
                        let val = match (g_unit, f_unit) {
                            (true, true) => vec![(s.hom_dim(x, z), F::one())],
                            (true, false) => vec![(f, F::one())],
                            (false, true) => vec![(g, F::one())],
                            (false, false) => entries(s.compose_basis(x, y, z, g, f)),
                        };
                        b = b.compose(x, y, z, g, f, &val);
                    }
                }
            }
        }
    }
    for x in 0..n {
        b = b.identity(x, &[(s.hom_dim(x, x), F::one())]);
    }
    for x in 0..n {
        for y in 0..n {
            for hh in 0..s.hdim() {
                for f in 0..ext(x, y) {
                    let val = if x == y && f == s.hom_dim(x, y) {
                        vec![(f, s.counit[hh].clone())]
                    } else {
                        entries(s.act_basis(x, y, hh, f))
                    };
                    b = b.action(x, y, hh, f, &val);
                }
            }
        }
    }
    b.build().expect("unitalization is well formed")
}

/// Index of `f⊗E_ab` in `Hom(X,Y)⊗M_r`.
pub fn matrix_unit_index(f: usize, a: usize, b: usize, r: usize) -> usize {
    f * r * r + a * r + b
}

/// `D⊗M_r(k)`: Hom spaces tensored with the matrix units `E_ab`.
pub fn linearize<F: Field>(d: &HCategory<F>, r: usize) -> HCategory<F> {
    assert!(r >= 1, "linearize needs r >= 1");
    let n = d.n_obj();
    let mut b = CategoryBuilder::new(d.counit.clone(), d.objects.clone());
    for x in 0..n {
        for y in 0..n {
            let mut labels = Vec::new();
            for f in 0..d.hom_dim(x, y) {
                for i in 0..r {
                    for j in 0..r {
                        labels.push(format!("{}⊗E{}{}", d.hom_label(x, y, f), i + 1, j + 1));
                    }
                }
            }
            b = b.hom(x, y, labels);
        }
    }
    let idx = |f: usize, a: usize, c: usize| matrix_unit_index(f, a, c, r);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in 0..d.hom_dim(y, z) {
                    for f in 0..d.hom_dim(x, y) {
                        let gf = d.compose_basis(x, y, z, g, f);
                        for a in 0..r {
                            for c in 0..r {
                                for e in 0..r {
                                    // (g⊗E_ac)(f⊗E_ce) = gf⊗E_ae
                                    let val: Vec<(usize, F)> =
                                        gf.iter().map(|(k, v)| (idx(k, a, e), v.clone())).collect();
                                    b = b.compose(x, y, z, idx(g, a, c), idx(f, c, e), &val);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if let Some(ids) = &d.identities {
        for (x, id) in ids.iter().enumerate() {
            let val: Vec<(usize, F)> =
                id.iter().flat_map(|(k, v)| (0..r).map(move |a| (idx(k, a, a), v.clone()))).collect();
            b = b.identity(x, &val);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for hh in 0..d.hdim() {
                for f in 0..d.hom_dim(x, y) {
                    let hf = d.act_basis(x, y, hh, f);
                    for a in 0..r {
                        for c in 0..r {
                            let val: Vec<(usize, F)> = hf.iter().map(|(k, v)| (idx(k, a, c), v.clone())).collect();
                            b = b.action(x, y, hh, idx(f, a, c), &val);
                        }
                    }
                }
            }
        }
    }
    b.build().expect("linearization is well formed")
}

/// Tensor product of two k-linear categories. Objects are pairs labelled
/// `"X|X'"`, indexed `x * n' + x'`; morphism `f⊗f'` has index `f * dim' + f'`.
/// The result carries the trivial action of `k`.
pub fn tensor_categories<F: Field>(c: &HCategory<F>, c2: &HCategory<F>) -> HCategory<F> {
    let (n, m) = (c.n_obj(), c2.n_obj());
    let objects = (0..n * m).map(|p| format!("{}|{}", c.objects[p / m], c2.objects[p % m])).collect();
    let mut b = HCategory::linear_builder(objects);
    for p in 0..n * m {
        for q in 0..n * m {
            let (x, x2, y, y2) = (p / m, p % m, q / m, q % m);
            let mut labels = Vec::new();
            for f in 0..c.hom_dim(x, y) {
                for g in 0..c2.hom_dim(x2, y2) {
                    labels.push(format!("{}⊗{}", c.hom_label(x, y, f), c2.hom_label(x2, y2, g)));
                }
            }
            b = b.hom(p, q, labels);
        }
    }
    for p in 0..n * m {
        for q in 0..n * m {
            for s in 0..n * m {
                let (x, x2, y, y2, z, z2) = (p / m, p % m, q / m, q % m, s / m, s % m);
                let d2 = c2.hom_dim(x2, y2);
                let e2 = c2.hom_dim(y2, z2);
                let out2 = c2.hom_dim(x2, z2);
                for g in 0..c.hom_dim(y, z) {
                    for g2 in 0..e2 {
                        for f in 0..c.hom_dim(x, y) {
                            for f2 in 0..d2 {
                                let l = c.compose_basis(x, y, z, g, f);
                                let r = c2.compose_basis(x2, y2, z2, g2, f2);
                                let val: Vec<(usize, F)> = l
                                    .iter()
                                    .flat_map(|(i, a)| r.iter().map(move |(j, bb)| (i * out2 + j, a.mul_ref(bb))))
                                    .collect();
                                b = b.compose(p, q, s, g * e2 + g2, f * d2 + f2, &val);
                            }
                        }
                    }
                }
            }
        }
    }
    if c.is_unital() && c2.is_unital() {
        for p in 0..n * m {
            let (x, x2) = (p / m, p % m);
            let id = c.identity(x).expect("unital").kron(c2.identity(x2).expect("unital"));
            let val: Vec<(usize, F)> = id.iter().map(|(i, v)| (i, v.clone())).collect();
            b = b.identity(p, &val);
        }
    }
    b.build().expect("tensor category is well formed")
}

/// The data of a coalgebra acting on the Hom spaces of a category:
/// `action[pair][c * dim + f] = c·f`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoalgebraAction<F> {
    pub cdim: usize,
    action: Vec<Vec<SparseVec<F>>>,
}

impl<F: Field> CoalgebraAction<F> {
    pub fn new(d: &HCategory<F>, cdim: usize, action: Vec<Vec<SparseVec<F>>>) -> Result<Self> {
        let n = d.n_obj();
        if action.len() != n * n {
            return Err(Error::Dimension("coalgebra action needs one table per object pair".into()));
        }
        for (p, t) in action.iter().enumerate() {
            let dim = d.homs[p].dim();
            if t.len() != cdim * dim || t.iter().any(|v| v.dim() != dim) {
                return Err(Error::Dimension(format!("coalgebra action table {p} has the wrong shape")));
            }
        }
        Ok(CoalgebraAction { cdim, action })
    }

    /// `C = H` acting through the H-module structure of each Hom.
    pub fn from_h_action(d: &HCategory<F>) -> Self {
        CoalgebraAction { cdim: d.hdim(), action: d.action.clone() }
    }

    pub fn act_basis(&self, d: &HCategory<F>, x: usize, y: usize, c: usize, f: usize) -> &SparseVec<F> {
        &self.action[d.pair(x, y)][c * d.hom_dim(x, y) + f]
    }

    pub fn act(&self, d: &HCategory<F>, x: usize, y: usize, c: &SparseVec<F>, f: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(d.hom_dim(x, y));
        for (ci, a) in c.iter() {
            for (fi, b) in f.iter() {
                acc.add_vec(&a.mul_ref(b), self.act_basis(d, x, y, ci, fi));
            }
        }
        acc.finish()
    }
}

/// Checks `c(gf)=(c₁g)(c₂f)`, `c(id)=ε_C(c)id` and `h(cf)=(hc)f`.
pub fn validate_coalgebra_action<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
    d: &HCategory<F>,
    act: &CoalgebraAction<F>,
) -> ValidationReport {
    let mut rep = ValidationReport::new("coalgebra action on a category");
    let n = d.n_obj();
    let cd = c.dim();
    let clab = |i: usize| c.coalgebra.space.label(i).to_string();
    let mut comp = Check::new("c(gf)=(c₁g)(c₂f)");
    let mut ids = Check::new("c(id_X)=ε_C(c)id_X");
    let mut hc = Check::new("h(cf)=(hc)f");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for ci in 0..cd {
                    for g in 0..d.hom_dim(y, z) {
                        for f in 0..d.hom_dim(x, y) {
                            let l = act.act(d, x, z, &SparseVec::unit(cd, ci), d.compose_basis(x, y, z, g, f));
                            let mut r = Accumulator::new(d.hom_dim(x, z));
                            for (pq, v) in c.coalgebra.comul[ci].iter() {
                                let cg = act.act_basis(d, y, z, pq / cd, g);
                                let cf = act.act_basis(d, x, y, pq % cd, f);
                                r.add_vec(v, &d.compose(x, y, z, cg, cf));
                            }
                            comp.record(l == r.finish(), || {
                                format!("({}, {}, {})", clab(ci), d.hom_label(y, z, g), d.hom_label(x, y, f))
                            });
                        }
                    }
                }
            }
        }
    }
    if d.is_unital() {
        for x in 0..n {
            let id = d.identity(x).expect("unital");
            for ci in 0..cd {
                let l = act.act(d, x, x, &SparseVec::unit(cd, ci), id);
                ids.record(l == id.scale(&c.coalgebra.counit[ci]), || format!("({}, {})", clab(ci), d.objects[x]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for a in 0..h.dim() {
                for ci in 0..cd {
                    for f in 0..d.hom_dim(x, y) {
                        let l = d.act(x, y, &h.basis(a), act.act_basis(d, x, y, ci, f));
                        let r = act.act(d, x, y, c.act_basis(a, ci), &SparseVec::unit(d.hom_dim(x, y), f));
                        hc.record(l == r, || format!("({}, {}, {})", h.label(a), clab(ci), d.hom_label(x, y, f)));
                    }
                }
            }
        }
    }
    rep.push(comp);
    if d.is_unital() {
        rep.push(ids);
    }
    rep.push(hc);
    rep
}

/// The convolution category `(C, D)`: `Hom(X,Y) = Hom_H(C, Hom_D(X,Y))`.
///
/// A linear map `u: C → Hom_D(X,Y)` is stored as a vector with index
/// `c * dim Hom_D(X,Y) + f`. `spaces[pair]` holds the H-linear maps.
#[derive(Clone, Debug)]
pub struct Convolution<F> {
    pub category: HCategory<F>,
    pub spaces: Vec<Subspace<F>>,
    pub cdim: usize,
    base_dims: Vec<usize>,
}

impl<F: Field> Convolution<F> {
    /// `u(c)` for basis map `k` of `Hom(x,y)` and basis element `c`.
    pub fn eval(&self, x: usize, y: usize, k: usize, c: usize) -> SparseVec<F> {
        let n = self.category.n_obj();
        let dd = self.base_dims[x * n + y];
        let u = &self.spaces[x * n + y].basis()[k];
        let entries: Vec<(usize, F)> = u
            .iter()
            .filter(|(i, _)| i / dd == c)
            .map(|(i, v)| (i % dd, v.clone()))
            .collect();
        SparseVec::from_entries(dd, entries)
    }
}

pub fn convolution_category<F: Field>(
    h: &HopfAlgebra<F>,
    c: &HModuleCoalgebra<F>,
    d: &HCategory<F>,
) -> Result<Convolution<F>> {
    let n = d.n_obj();
    let cd = c.dim();
    let hn = h.dim();
    let mut spaces = Vec::with_capacity(n * n);
    let mut base_dims = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let dd = d.hom_dim(x, y);
            base_dims.push(dd);
            // Unknown u[c][f] at c*dd + f; constraint u(h·c) - h·u(c) = 0.
            let mut rows = Vec::new();
            for a in 0..hn {
                for ci in 0..cd {
                    let hc = c.act_basis(a, ci);
                    for f in 0..dd {
                        let mut acc = Accumulator::new(cd * dd);
                        for (cj, v) in hc.iter() {
                            acc.add(cj * dd + f, v);
                        }
                        for fp in 0..dd {
                            let coeff = d.act_basis(x, y, a, fp).value(f);
                            acc.add(ci * dd + fp, &-coeff);
                        }
                        rows.push(acc.finish());
                    }
                }
            }
            let m = SparseMatrix::from_columns(cd * dd, rows).transpose();
            spaces.push(kernel(&m));
        }
    }
    let mut b = HCategory::linear_builder(d.objects.clone());
    for x in 0..n {
        for y in 0..n {
            let k = spaces[x * n + y].dim();
            b = b.hom(x, y, (0..k).map(|i| format!("u{i}:{}→{}", d.objects[x], d.objects[y])).collect());
        }
    }
    let conv = |x: usize, y: usize, z: usize, g: &SparseVec<F>, f: &SparseVec<F>| -> SparseVec<F> {
        // (g∗f)(c) = g(c₁)∘f(c₂)
        let (dxy, dyz, dxz) = (d.hom_dim(x, y), d.hom_dim(y, z), d.hom_dim(x, z));
        let mut acc = Accumulator::new(cd * dxz);
        for ci in 0..cd {
            for (pq, v) in c.coalgebra.comul[ci].iter() {
                let (p, q) = (pq / cd, pq % cd);
                let gp: Vec<(usize, F)> =
                    g.iter().filter(|(i, _)| i / dyz == p).map(|(i, w)| (i % dyz, w.clone())).collect();
                let fq: Vec<(usize, F)> =
                    f.iter().filter(|(i, _)| i / dxy == q).map(|(i, w)| (i % dxy, w.clone())).collect();
                if gp.is_empty() || fq.is_empty() {
                    continue;
                }
                let comp = d.compose(
                    x,
                    y,
                    z,
                    &SparseVec::from_entries(dyz, gp),
                    &SparseVec::from_entries(dxy, fq),
                );
                for (k, w) in comp.iter() {
                    acc.add(ci * dxz + k, &w.mul_ref(v));
                }
            }
        }
        acc.finish()
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (sxy, syz, sxz) = (&spaces[x * n + y], &spaces[y * n + z], &spaces[x * n + z]);
                for (gi, g) in syz.basis().iter().enumerate() {
                    for (fi, f) in sxy.basis().iter().enumerate() {
                        let prod = conv(x, y, z, g, f);
                        let coords = sxz.coords(&prod).ok_or_else(|| {
                            Error::Precondition(format!(
                                "convolution of u{gi} and u{fi} is not H-linear; check the module coalgebra"
                            ))
                        })?;
                        let val: Vec<(usize, F)> = coords.iter().map(|(i, v)| (i, v.clone())).collect();
                        b = b.compose(x, y, z, gi, fi, &val);
                    }
                }
            }
        }
    }
    if d.is_unital() {
        for x in 0..n {
            let dd = d.hom_dim(x, x);
            let id = d.identity(x).expect("unital");
            let mut acc = Accumulator::new(cd * dd);
            for ci in 0..cd {
                for (k, v) in id.iter() {
                    acc.add(ci * dd + k, &v.mul_ref(&c.coalgebra.counit[ci]));
                }
            }
            let coords = spaces[x * n + x]
                .coords(&acc.finish())
                .ok_or_else(|| Error::Precondition("ε_C(c)·id is not H-linear".into()))?;
            let val: Vec<(usize, F)> = coords.iter().map(|(i, v)| (i, v.clone())).collect();
            b = b.identity(x, &val);
        }
    }
    Ok(Convolution { category: b.build()?, spaces, cdim: cd, base_dims })
}

/// A linear (semi)functor: object map plus one matrix per source pair.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctor<F> {
    pub object_map: Vec<usize>,
    /// `maps[x * n + y]: Hom(x,y) → Hom(F x, F y)`.
    pub maps: Vec<SparseMatrix<F>>,
    pub preserves_identities: bool,
    pub h_linear: bool,
}

impl<F: Field> LinearFunctor<F> {
    pub fn identity(d: &HCategory<F>) -> Self {
        let n = d.n_obj();
        LinearFunctor {
            object_map: (0..n).collect(),
            maps: (0..n * n).map(|p| SparseMatrix::identity(d.homs[p].dim())).collect(),
            preserves_identities: true,
            h_linear: true,
        }
    }

    pub fn map(&self, src: &HCategory<F>, x: usize, y: usize) -> &SparseMatrix<F> {
        &self.maps[x * src.n_obj() + y]
    }

    pub fn fixes_objects(&self) -> bool {
        self.object_map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

pub fn validate_functor<F: Field>(
    src: &HCategory<F>,
    tgt: &HCategory<F>,
    fun: &LinearFunctor<F>,
) -> ValidationReport {
    let mut rep = ValidationReport::new(if fun.preserves_identities { "functor" } else { "semifunctor" });
    let n = src.n_obj();
    let mut shape = Check::new("shape");
    let om = &fun.object_map;
    shape.record(om.len() == n && om.iter().all(|&o| o < tgt.n_obj()) && fun.maps.len() == n * n, || {
        "object map or Hom table count mismatch".into()
    });
    if shape.passed() {
        for x in 0..n {
            for y in 0..n {
                let m = fun.map(src, x, y);
                shape.record(
                    m.ncols() == src.hom_dim(x, y) && m.nrows() == tgt.hom_dim(om[x], om[y]),
                    || format!("Hom({}, {})", src.objects[x], src.objects[y]),
                );
            }
        }
    }
    let ok = shape.passed();
    rep.push(shape);
    if !ok {
        return rep;
    }
    let mut comp = Check::new("composition preserved");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in 0..src.hom_dim(y, z) {
                    for f in 0..src.hom_dim(x, y) {
                        let l = fun.map(src, x, z).apply(src.compose_basis(x, y, z, g, f));
                        let r = tgt.compose(
                            om[x],
                            om[y],
                            om[z],
                            fun.map(src, y, z).col(g),
                            fun.map(src, x, y).col(f),
                        );
                        comp.record(l == r, || format!("({}, {})", src.hom_label(y, z, g), src.hom_label(x, y, f)));
                    }
                }
            }
        }
    }
    rep.push(comp);
    if fun.preserves_identities {
        let mut ids = Check::new("identities preserved");
        if src.is_unital() && tgt.is_unital() {
            for x in 0..n {
                let l = fun.map(src, x, x).apply(src.identity(x).expect("unital"));
                ids.record(&l == tgt.identity(om[x]).expect("unital"), || src.objects[x].clone());
            }
        } else {
            ids.fail("source or target has no identities");
        }
        rep.push(ids);
    }
    if fun.h_linear {
        let mut hl = Check::new("H-linear");
        if src.hdim() != tgt.hdim() {
            hl.fail("source and target are acted on by different algebras");
        } else {
            for x in 0..n {
                for y in 0..n {
                    for a in 0..src.hdim() {
                        for f in 0..src.hom_dim(x, y) {
                            let l = fun.map(src, x, y).apply(src.act_basis(x, y, a, f));
                            let r = tgt.act(
                                om[x],
                                om[y],
                                &SparseVec::unit(tgt.hdim(), a),
                                fun.map(src, x, y).col(f),
                            );
                            hl.record(l == r, || format!("(h{a}, {})", src.hom_label(x, y, f)));
                        }
                    }
                }
            }
        }
        rep.push(hl);
    }
    rep
}

/// The semifunctor `i: D → (C,D)`, `i(f)(c) = c·f`.
pub fn inclusion_into_convolution<F: Field>(
    conv: &Convolution<F>,
    d: &HCategory<F>,
    act: &CoalgebraAction<F>,
) -> Result<LinearFunctor<F>> {
    let n = d.n_obj();
    let cd = conv.cdim;
    let mut maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let dd = d.hom_dim(x, y);
            let space = &conv.spaces[x * n + y];
            let mut cols = Vec::with_capacity(dd);
            for f in 0..dd {
                let mut acc = Accumulator::new(cd * dd);
                for c in 0..cd {
                    for (k, v) in act.act_basis(d, x, y, c, f).iter() {
                        acc.add(c * dd + k, v);
                    }
                }
                let coords = space.coords(&acc.finish()).ok_or_else(|| {
                    Error::Precondition(format!(
                        "c ↦ c·{} is not H-linear; the action violates h(cf)=(hc)f",
                        d.hom_label(x, y, f)
                    ))
                })?;
                cols.push(coords);
            }
            maps.push(SparseMatrix::from_columns(space.dim(), cols));
        }
    }
    Ok(LinearFunctor { object_map: (0..n).collect(), maps, preserves_identities: false, h_linear: false })
}

/// Outcome of the search for a natural isomorphism `η: id ⇒ Φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerSearch<F> {
    /// Dimension of the solution space of the naturality system.
    pub solution_dim: usize,
    pub samples_tried: usize,
    /// `η(X)` and `η(X)⁻¹` per object when an invertible sample was found.
    pub eta: Option<Vec<SparseVec<F>>>,
    pub eta_inv: Option<Vec<SparseVec<F>>>,
}

impl<F: Field> InnerSearch<F> {
    pub fn found(&self) -> bool {
        self.eta.is_some()
    }

    pub fn status(&self) -> &'static str {
        if self.found() {
            "found"
        } else {
            "not found"
        }
    }
}

/// The fixed sequence of sample parameters; coordinate `k` of sample `s` is `t_s^k`.
fn sample_parameter<F: Field>(s: usize) -> F {
    const T: [(i64, i64); 16] = [
        (1, 1),
        (2, 1),
        (-1, 1),
        (3, 1),
        (-2, 1),
        (1, 2),
        (5, 1),
        (-3, 1),
        (7, 1),
        (1, 3),
        (-5, 1),
        (11, 1),
        (4, 1),
        (-7, 1),
        (13, 1),
        (2, 3),
    ];
    F::from_ratio(T[s].0, T[s].1)
}

pub const INNER_SAMPLES: usize = 16;

/// Inverse of `e` in `Hom(x,x)`, if any.
fn invert<F: Field>(d: &HCategory<F>, x: usize, e: &SparseVec<F>) -> Option<SparseVec<F>> {
    let dd = d.hom_dim(x, x);
    let id = d.identity(x)?;
    // Unknown u: e∘u = id and u∘e = id, stacked.
    let cols: Vec<SparseVec<F>> = (0..dd)
        .map(|k| {
            let u = SparseVec::unit(dd, k);
            let l = d.compose(x, x, x, e, &u);
            let r = d.compose(x, x, x, &u, e);
            SparseVec::from_entries(2 * dd, l.iter().map(|(i, v)| (i, v.clone())).chain(r.iter().map(|(i, v)| (dd + i, v.clone()))))
        })
        .collect();
    let m = SparseMatrix::from_columns(2 * dd, cols);
    let rhs = SparseVec::from_entries(2 * dd, id.iter().map(|(i, v)| (i, v.clone())).chain(id.iter().map(|(i, v)| (dd + i, v.clone()))));
    crate::linalg::solve(&m, &rhs)
}

/// Solves `Φ(f)∘η(X) = η(Y)∘f` and samples the solution space for an
/// invertible family. `Φ` must fix objects.
pub fn inner_automorphism_solve<F: Field>(d: &HCategory<F>, phi: &LinearFunctor<F>) -> Result<InnerSearch<F>> {
    if !phi.fixes_objects() {
        return Err(Error::Precondition("Φ must fix objects".into()));
    }
    if !d.is_unital() {
        return Err(Error::Precondition("inner automorphisms need identities".into()));
    }
    let n = d.n_obj();
    let offs: Vec<usize> = (0..=n).map(|x| (0..x).map(|z| d.hom_dim(z, z)).sum()).collect();
    let total = offs[n];
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let dy = d.hom_dim(x, y);
            for f in 0..dy {
                let e = SparseVec::unit(dy, f);
                let pf = phi.map(d, x, y).col(f);
                // Φ(f)∘η(X) - η(Y)∘f as a linear function of η.
                let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); dy];
                for k in 0..d.hom_dim(x, x) {
                    let v = d.compose(x, x, y, pf, &SparseVec::unit(d.hom_dim(x, x), k));
                    for (i, c) in v.iter() {
                        cols[i].push((offs[x] + k, c.clone()));
                    }
                }
                for k in 0..d.hom_dim(y, y) {
                    let v = d.compose(x, y, y, &SparseVec::unit(d.hom_dim(y, y), k), &e);
                    for (i, c) in v.iter() {
                        cols[i].push((offs[y] + k, -c.clone()));
                    }
                }
                for row in cols {
                    rows.push(SparseVec::from_entries(total, row));
                }
            }
        }
    }
    let m = SparseMatrix::from_columns(total, rows).transpose();
    let sol = kernel(&m);
    let mut out = InnerSearch { solution_dim: sol.dim(), samples_tried: 0, eta: None, eta_inv: None };
    if sol.dim() == 0 {
        return Ok(out);
    }
    for s in 0..INNER_SAMPLES {
        out.samples_tried += 1;
        let t = sample_parameter::<F>(s);
        let mut coeff = F::one();
        let mut coords = Vec::with_capacity(sol.dim());
        for k in 0..sol.dim() {
            coords.push((k, coeff.clone()));
            coeff = coeff.mul_ref(&t);
        }
        let v = sol.expand(&SparseVec::from_entries(sol.dim(), coords));
        let etas: Vec<SparseVec<F>> = (0..n)
            .map(|x| {
                let dd = d.hom_dim(x, x);
                SparseVec::from_entries(dd, v.iter().filter(|(i, _)| *i >= offs[x] && *i < offs[x + 1]).map(|(i, c)| (i - offs[x], c.clone())))
            })
            .collect();
        let invs: Option<Vec<SparseVec<F>>> = (0..n).map(|x| invert(d, x, &etas[x])).collect();
        if let Some(invs) = invs {
            if certify_inner(d, phi, &etas, &invs) {
                out.eta = Some(etas);
                out.eta_inv = Some(invs);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Re-checks `Φ(f) = η(Y)∘f∘η(X)⁻¹` on every basis morphism.
pub fn certify_inner<F: Field>(
    d: &HCategory<F>,
    phi: &LinearFunctor<F>,
    eta: &[SparseVec<F>],
    eta_inv: &[SparseVec<F>],
) -> bool {
    let n = d.n_obj();
    for x in 0..n {
        for y in 0..n {
            for f in 0..d.hom_dim(x, y) {
                let e = SparseVec::unit(d.hom_dim(x, y), f);
                let t = d.compose(x, x, y, &e, &eta_inv[x]);
                let r = d.compose(x, y, y, &eta[y], &t);
                if &r != phi.map(d, x, y).col(f) {
                    return false;
                }
            }
        }
    }
    true
}

/// The functor `f ↦ η(Y)∘f∘η(X)⁻¹` for an invertible family.
pub fn conjugation_functor<F: Field>(
    d: &HCategory<F>,
    eta: &[SparseVec<F>],
    eta_inv: &[SparseVec<F>],
) -> LinearFunctor<F> {
    let n = d.n_obj();
    let mut maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let dd = d.hom_dim(x, y);
            let cols = (0..dd)
                .map(|f| {
                    let t = d.compose(x, x, y, &SparseVec::unit(dd, f), &eta_inv[x]);
                    d.compose(x, y, y, &eta[y], &t)
                })
                .collect();
            maps.push(SparseMatrix::from_columns(dd, cols));
        }
    }
    LinearFunctor { object_map: (0..n).collect(), maps, preserves_identities: true, h_linear: true }
}
