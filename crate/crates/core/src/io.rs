//! JSON scenario files.
//!
//! A scenario bundles the sections `hopf`, `modular_pair`, `sayd`,
//! `category`, `coalgebra`, `coalgebra_action` and `functors`. Scalars are
//! strings `"a/b"`; tensors are sparse lists of index tuples whose last
//! component is the coefficient. Objects are referenced by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{linearize, CategoryBuilder, CoalgebraAction, HCategory, LinearFunctor};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hopf::{Coalgebra, HModuleCoalgebra, HopfAlgebra, ModularPair};
use crate::linalg::{solve, BasedSpace, SparseMatrix, SparseVec};
use crate::sayd::{unchecked_sigma_k_delta, SaydModule};
use crate::scalar::Field;

/// `(i, c)`: coefficient `c` on basis vector `i`.
pub type Entry1 = (usize, String);
/// `(i, j, c)`.
pub type Entry2 = (usize, usize, String);
/// `(i, j, k, c)`.
pub type Entry3 = (usize, usize, usize, String);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<RawHopf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modular_pair: Option<RawPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sayd: Option<RawSayd>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<RawCategory>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<RawCoalgebra>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra_action: Option<RawCoalgebraAction>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, RawFunctor>,
}

/// `mul`: `(i, j, k, c)` means `e_i e_j` has coefficient `c` on `e_k`;
/// `comul`: `(i, a, b, c)` for `Δe_i ∋ c e_a⊗e_b`; `antipode`: `(i, k, c)`
/// for `S(e_i) ∋ c e_k`. A missing `antipode_inv` is computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHopf {
    pub name: String,
    pub basis: Vec<String>,
    pub unit: Vec<Entry1>,
    pub mul: Vec<Entry3>,
    pub comul: Vec<Entry3>,
    pub counit: Vec<Entry1>,
    pub antipode: Vec<Entry2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inv: Option<Vec<Entry2>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPair {
    pub delta: Vec<Entry1>,
    pub sigma: Vec<Entry1>,
}

/// Either `"sigma_k_delta"` (built from the modular pair) or explicit
/// tables: `action` `(m, h, m', c)` for `m·h`, `coaction` `(m, h, m', c)`
/// for `ρ(m) ∋ c h⊗m'`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawSayd {
    Named(String),
    Explicit { basis: Vec<String>, action: Vec<Entry3>, coaction: Vec<Entry3> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHom {
    pub source: String,
    pub target: String,
    pub basis: Vec<String>,
}

/// Sparse entries attached to one Hom space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBlock<E> {
    pub source: String,
    pub target: String,
    pub entries: Vec<E>,
}

/// `entries` `(g, f, k, c)`: `g∘f ∋ c e_k` for `f: X→Y`, `g: Y→Z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCompose {
    pub objects: [String; 3],
    pub entries: Vec<Entry3>,
}

/// A missing `action` means H acts through the counit; a missing
/// `identities` gives a semicategory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub homs: Vec<RawHom>,
    pub compose: Vec<RawCompose>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<BTreeMap<String, Vec<Entry1>>>,
    /// `(h, f, k, c)`: `h·f ∋ c e_k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<RawBlock<Entry3>>>,
}

/// `"regular"` for H acting on itself, or explicit tables. A missing
/// `action` means H acts through the counit; `(h, c, c', x)` for `h·c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCoalgebra {
    Named(String),
    Explicit {
        basis: Vec<String>,
        comul: Vec<Entry3>,
        counit: Vec<Entry1>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<Vec<Entry3>>,
    },
}

/// `"hopf"` for the coalgebra `H` acting through the category's H-action,
/// or blocks `(c, f, k, x)` for `c·f ∋ x e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCoalgebraAction {
    Named(String),
    Blocks(Vec<RawBlock<Entry3>>),
}

/// A functor on the category, or on its linearization `D⊗M_r` when
/// `linearize` is set. Matrix entries are `(row, column, c)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linearize: Option<usize>,
    pub object_map: Vec<String>,
    pub maps: Vec<RawBlock<Entry2>>,
    #[serde(default = "yes")]
    pub preserves_identities: bool,
    #[serde(default = "yes")]
    pub h_linear: bool,
}

fn yes() -> bool {
    true
}

/// A functor together with the category it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedFunctor<F> {
    pub linearize: Option<usize>,
    pub functor: LinearFunctor<F>,
}

/// A resolved scenario. Missing sections default to `H = k`, the pair
/// `(ε, 1)` and `M = ^σk_δ`.
#[derive(Clone, Debug)]
pub struct Scenario<F> {
    pub hopf: HopfAlgebra<F>,
    pub pair: ModularPair<F>,
    pub sayd: SaydModule<F>,
    pub category: Option<HCategory<F>>,
    pub coalgebra: Option<HModuleCoalgebra<F>>,
    pub coalgebra_action: Option<CoalgebraAction<F>>,
    pub functors: BTreeMap<String, NamedFunctor<F>>,
}

impl<F: Field> Scenario<F> {
    pub fn category(&self) -> Result<&HCategory<F>> {
        self.category.as_ref().ok_or_else(|| Error::Parse("scenario has no \"category\" section".into()))
    }

    /// The category a functor acts on.
    pub fn functor_domain(&self, f: &NamedFunctor<F>) -> Result<HCategory<F>> {
        let d = self.category()?;
        Ok(match f.linearize {
            Some(r) => linearize(d, r),
            None => d.clone(),
        })
    }
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn scalar<F: Field>(s: &str) -> Result<F> {
    F::parse_exact(s).ok_or_else(|| perr(format!("not an exact scalar: {s:?}")))
}

fn check(i: usize, n: usize, what: &str) -> Result<()> {
    if i >= n {
        return Err(perr(format!("{what} index {i} out of range (dimension {n})")));
    }
    Ok(())
}

fn vec1<F: Field>(dim: usize, e: &[Entry1], what: &str) -> Result<SparseVec<F>> {
    let mut out = Vec::with_capacity(e.len());
    for (i, c) in e {
        check(*i, dim, what)?;
        out.push((*i, scalar(c)?));
    }
    Ok(SparseVec::from_entries(dim, out))
}

fn dense1<F: Field>(dim: usize, e: &[Entry1], what: &str) -> Result<Vec<F>> {
    Ok(vec1(dim, e, what)?.to_dense())
}

/// Tables `t[i*inner + j] ∈ k^dim` from `(i, j, k, c)` entries.
fn table3<F: Field>(outer: usize, inner: usize, dim: usize, e: &[Entry3], what: &str) -> Result<Vec<SparseVec<F>>> {
    let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); outer * inner];
    for (i, j, k, c) in e {
        check(*i, outer, what)?;
        check(*j, inner, what)?;
        check(*k, dim, what)?;
        cols[i * inner + j].push((*k, scalar(c)?));
    }
    Ok(cols.into_iter().map(|v| SparseVec::from_entries(dim, v)).collect())
}

/// Like [`table3`] but the value index is the pair `(j, k)` flattened.
fn table3_pairs<F: Field>(n: usize, a: usize, b: usize, e: &[Entry3], what: &str) -> Result<Vec<SparseVec<F>>> {
    let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); n];
    for (i, j, k, c) in e {
        check(*i, n, what)?;
        check(*j, a, what)?;
        check(*k, b, what)?;
        cols[*i].push((j * b + k, scalar(c)?));
    }
    Ok(cols.into_iter().map(|v| SparseVec::from_entries(a * b, v)).collect())
}

/// Matrix with columns indexed by the first component.
fn matrix_by_columns<F: Field>(rows: usize, cols: usize, e: &[Entry2], what: &str) -> Result<SparseMatrix<F>> {
    let mut trip = Vec::with_capacity(e.len());
    for (i, k, c) in e {
        check(*i, cols, what)?;
        check(*k, rows, what)?;
        trip.push((*k, *i, scalar(c)?));
    }
    Ok(SparseMatrix::from_triplets(rows, cols, trip))
}

fn invert<F: Field>(a: &SparseMatrix<F>) -> Result<SparseMatrix<F>> {
    let n = a.nrows();
    let cols = (0..n)
        .map(|i| solve(a, &SparseVec::unit(n, i)).ok_or_else(|| perr("antipode is not invertible")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(n, cols))
}

pub fn parse_hopf<F: Field>(r: &RawHopf) -> Result<HopfAlgebra<F>> {
    let n = r.basis.len();
    let mul = table3(n, n, n, &r.mul, "hopf.mul")?;
    let comul = table3_pairs(n, n, n, &r.comul, "hopf.comul")?;
    let s = matrix_by_columns(n, n, &r.antipode, "hopf.antipode")?;
    let si = match &r.antipode_inv {
        Some(e) => matrix_by_columns(n, n, e, "hopf.antipode_inv")?,
        None => invert(&s)?,
    };
    HopfAlgebra::new(
        r.name.clone(),
        BasedSpace::new(r.basis.clone()),
        mul,
        vec1(n, &r.unit, "hopf.unit")?,
        comul,
        dense1(n, &r.counit, "hopf.counit")?,
        s,
        si,
    )
}

fn object_index(objects: &[String], name: &str) -> Result<usize> {
    objects.iter().position(|o| o == name).ok_or_else(|| perr(format!("unknown object {name:?}")))
}

pub fn parse_category<F: Field>(h: &HopfAlgebra<F>, r: &RawCategory) -> Result<HCategory<F>> {
    let obj = |s: &str| object_index(&r.objects, s);
    let mut b = CategoryBuilder::new(h.counit_vec().to_vec(), r.objects.clone());
    let mut dims = BTreeMap::new();
    for hom in &r.homs {
        let key = (obj(&hom.source)?, obj(&hom.target)?);
        if dims.insert(key, hom.basis.len()).is_some() {
            return Err(perr(format!("Hom({}, {}) listed twice", hom.source, hom.target)));
        }
        b = b.hom(key.0, key.1, hom.basis.clone());
    }
    let dim = |x: usize, y: usize| dims.get(&(x, y)).copied().unwrap_or(0);
    for c in &r.compose {
        let [x, y, z] = [obj(&c.objects[0])?, obj(&c.objects[1])?, obj(&c.objects[2])?];
        for (g, f, k, v) in &c.entries {
            check(*g, dim(y, z), "category.compose g")?;
            check(*f, dim(x, y), "category.compose f")?;
            check(*k, dim(x, z), "category.compose value")?;
            b = b.compose(x, y, z, *g, *f, &[(*k, scalar(v)?)]);
        }
    }
    if let Some(ids) = &r.identities {
        for (name, e) in ids {
            let x = obj(name)?;
            let v: SparseVec<F> = vec1(dim(x, x), e, "category.identities")?;
            b = b.identity(x, &v.entries().to_vec());
        }
    }
    match &r.action {
        None => b = b.counit_action(h),
        Some(blocks) => {
            for blk in blocks {
                let (x, y) = (obj(&blk.source)?, obj(&blk.target)?);
                for (hh, f, k, v) in &blk.entries {
                    check(*hh, h.dim(), "category.action h")?;
                    check(*f, dim(x, y), "category.action f")?;
                    check(*k, dim(x, y), "category.action value")?;
                    b = b.action(x, y, *hh, *f, &[(*k, scalar(v)?)]);
                }
            }
        }
    }
    b.build()
}

fn parse_functor<F: Field>(d: &HCategory<F>, r: &RawFunctor) -> Result<LinearFunctor<F>> {
    let n = d.n_obj();
    if r.object_map.len() != n {
        return Err(perr(format!("object_map has {} entries, the category has {n} objects", r.object_map.len())));
    }
    let object_map = r.object_map.iter().map(|s| object_index(&d.objects, s)).collect::<Result<Vec<_>>>()?;
    let mut trip: Vec<Vec<(usize, usize, F)>> = vec![Vec::new(); n * n];
    for blk in &r.maps {
        let (x, y) = (object_index(&d.objects, &blk.source)?, object_index(&d.objects, &blk.target)?);
        let (rows, cols) = (d.hom_dim(object_map[x], object_map[y]), d.hom_dim(x, y));
        for (row, col, c) in &blk.entries {
            check(*row, rows, "functor row")?;
            check(*col, cols, "functor column")?;
            trip[x * n + y].push((*row, *col, scalar(c)?));
        }
    }
    let maps = trip
        .into_iter()
        .enumerate()
        .map(|(p, t)| SparseMatrix::from_triplets(d.hom_dim(object_map[p / n], object_map[p % n]), d.hom_dim(p / n, p % n), t))
        .collect();
    Ok(LinearFunctor { object_map, maps, preserves_identities: r.preserves_identities, h_linear: r.h_linear })
}

pub fn parse_scenario<F: Field>(text: &str) -> Result<Scenario<F>> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    resolve(&raw)
}

pub fn resolve<F: Field>(raw: &RawScenario) -> Result<Scenario<F>> {
    let hopf = match &raw.hopf {
        Some(r) => parse_hopf(r)?,
        None => fixtures::k(),
    };
    let n = hopf.dim();
    let pair = match &raw.modular_pair {
        Some(p) => ModularPair { delta: dense1(n, &p.delta, "modular_pair.delta")?, sigma: vec1(n, &p.sigma, "modular_pair.sigma")? },
        None => ModularPair::trivial(&hopf),
    };
    let sayd = match &raw.sayd {
        None => unchecked_sigma_k_delta(&hopf, &pair),
        Some(RawSayd::Named(s)) if s == "sigma_k_delta" => unchecked_sigma_k_delta(&hopf, &pair),
        Some(RawSayd::Named(s)) => return Err(perr(format!("unknown sayd shorthand {s:?}"))),
        Some(RawSayd::Explicit { basis, action, coaction }) => {
            let d = basis.len();
            SaydModule::new(
                &hopf,
                BasedSpace::new(basis.clone()),
                table3(d, n, d, action, "sayd.action")?,
                table3_pairs(d, n, d, coaction, "sayd.coaction")?,
            )?
        }
    };
    let category = raw.category.as_ref().map(|c| parse_category(&hopf, c)).transpose()?;
    let coalgebra = match &raw.coalgebra {
        None => None,
        Some(RawCoalgebra::Named(s)) if s == "regular" => Some(HModuleCoalgebra::regular(&hopf)),
        Some(RawCoalgebra::Named(s)) => return Err(perr(format!("unknown coalgebra shorthand {s:?}"))),
        Some(RawCoalgebra::Explicit { basis, comul, counit, action }) => {
            let d = basis.len();
            let c = Coalgebra::new(
                BasedSpace::new(basis.clone()),
                table3_pairs(d, d, d, comul, "coalgebra.comul")?,
                dense1(d, counit, "coalgebra.counit")?,
            )?;
            Some(match action {
                None => HModuleCoalgebra::through_counit(&hopf, c),
                Some(a) => HModuleCoalgebra::new(&hopf, c, table3(n, d, d, a, "coalgebra.action")?)?,
            })
        }
    };
    let coalgebra_action = match (&raw.coalgebra_action, &category) {
        (None, _) => None,
        (Some(_), None) => return Err(perr("coalgebra_action needs a category")),
        (Some(RawCoalgebraAction::Named(s)), Some(d)) if s == "hopf" => Some(CoalgebraAction::from_h_action(d)),
        (Some(RawCoalgebraAction::Named(s)), _) => return Err(perr(format!("unknown coalgebra_action shorthand {s:?}"))),
        (Some(RawCoalgebraAction::Blocks(blocks)), Some(d)) => {
            let cdim = coalgebra.as_ref().ok_or_else(|| perr("coalgebra_action needs a coalgebra"))?.dim();
            let k = d.n_obj();
            let mut tables = Vec::with_capacity(k * k);
            for x in 0..k {
                for y in 0..k {
                    let dim = d.hom_dim(x, y);
                    let mut entries = Vec::new();
                    for blk in blocks {
                        if object_index(&d.objects, &blk.source)? == x && object_index(&d.objects, &blk.target)? == y {
                            entries.extend(blk.entries.iter().cloned());
                        }
                    }
                    tables.push(table3(cdim, dim, dim, &entries, "coalgebra_action")?);
                }
            }
            Some(CoalgebraAction::new(d, cdim, tables)?)
        }
    };
    let mut functors = BTreeMap::new();
    for (name, r) in &raw.functors {
        let d = category.as_ref().ok_or_else(|| perr("functors need a category"))?;
        let dom = match r.linearize {
            Some(0) => return Err(perr("linearize needs r >= 1")),
            Some(k) => linearize(d, k),
            None => d.clone(),
        };
        let functor = parse_functor(&dom, r).map_err(|e| perr(format!("functor {name}: {e}")))?;
        functors.insert(name.clone(), NamedFunctor { linearize: r.linearize, functor });
    }
    Ok(Scenario { hopf, pair, sayd, category, coalgebra, coalgebra_action, functors })
}

fn s<F: Field>(x: &F) -> String {
    x.to_exact_string()
}

fn entries1<F: Field>(v: &SparseVec<F>) -> Vec<Entry1> {
    v.iter().map(|(i, c)| (i, s(c))).collect()
}

fn dense_entries<F: Field>(v: &[F]) -> Vec<Entry1> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, s(c))).collect()
}

fn matrix_entries<F: Field>(m: &SparseMatrix<F>) -> Vec<Entry2> {
    let mut e: Vec<Entry2> = m.triplets().into_iter().map(|(r, c, x)| (c, r, s(&x))).collect();
    e.sort();
    e
}

pub fn hopf_to_raw<F: Field>(h: &HopfAlgebra<F>) -> RawHopf {
    let n = h.dim();
    let mut mul = Vec::new();
    let mut comul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mul.extend(h.mul_basis(i, j).iter().map(|(k, c)| (i, j, k, s(c))));
        }
        comul.extend(h.comul_basis(i).iter().map(|(k, c)| (i, k / n, k % n, s(c))));
    }
    RawHopf {
        name: h.name.clone(),
        basis: h.space().labels.clone(),
        unit: entries1(h.unit()),
        mul,
        comul,
        counit: dense_entries(h.counit_vec()),
        antipode: matrix_entries(h.antipode_matrix()),
        antipode_inv: Some(matrix_entries(h.antipode_inv_matrix())),
    }
}

pub fn pair_to_raw<F: Field>(p: &ModularPair<F>) -> RawPair {
    RawPair { delta: dense_entries(&p.delta), sigma: entries1(&p.sigma) }
}

/// Writes the category with an explicit action unless `counit_action`.
pub fn category_to_raw<F: Field>(d: &HCategory<F>, counit_action: bool) -> RawCategory {
    let n = d.n_obj();
    let name = |x: usize| d.objects[x].clone();
    let mut homs = Vec::new();
    let mut compose = Vec::new();
    let mut action = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if d.hom_dim(x, y) > 0 {
                homs.push(RawHom { source: name(x), target: name(y), basis: d.hom(x, y).labels.clone() });
            }
            let mut e = Vec::new();
            for hh in 0..d.hdim() {
                for f in 0..d.hom_dim(x, y) {
                    e.extend(d.act_basis(x, y, hh, f).iter().map(|(k, c)| (hh, f, k, s(c))));
                }
            }
            if !e.is_empty() {
                action.push(RawBlock { source: name(x), target: name(y), entries: e });
            }
            for z in 0..n {
                let mut e = Vec::new();
                for g in 0..d.hom_dim(y, z) {
                    for f in 0..d.hom_dim(x, y) {
                        e.extend(d.compose_basis(x, y, z, g, f).iter().map(|(k, c)| (g, f, k, s(c))));
                    }
                }
                if !e.is_empty() {
                    compose.push(RawCompose { objects: [name(x), name(y), name(z)], entries: e });
                }
            }
        }
    }
    let identities = d.is_unital().then(|| {
        (0..n).map(|x| (name(x), entries1(d.identity(x).expect("unital")))).collect()
    });
    RawCategory {
        objects: d.objects.clone(),
        homs,
        compose,
        identities,
        action: (!counit_action).then_some(action),
    }
}

pub fn functor_to_raw<F: Field>(d: &HCategory<F>, f: &LinearFunctor<F>, linearize: Option<usize>) -> RawFunctor {
    let n = d.n_obj();
    let mut maps = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let e = matrix_entries(f.map(d, x, y));
            let e = e.into_iter().map(|(c, r, v)| (r, c, v)).collect::<Vec<_>>();
            if !e.is_empty() {
                maps.push(RawBlock { source: d.objects[x].clone(), target: d.objects[y].clone(), entries: e });
            }
        }
    }
    RawFunctor {
        linearize,
        object_map: f.object_map.iter().map(|&o| d.objects[o].clone()).collect(),
        maps,
        preserves_identities: f.preserves_identities,
        h_linear: f.h_linear,
    }
}

/// Pretty JSON with every array of scalars kept on one line.
pub fn to_json(raw: &RawScenario) -> String {
    let mut out = collapse_flat_arrays(&serde_json::to_string_pretty(raw).expect("scenario serializes"));
    out.push('\n');
    out
}

fn collapse_flat_arrays(pretty: &str) -> String {
    let chars: Vec<char> = pretty.chars().collect();
    let mut out = String::with_capacity(pretty.len());
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '[' {
            if let Some((end, flat)) = flat_array(&chars, i) {
                out.push_str(&flat);
                i = end + 1;
                continue;
            }
        }
        out.push(chars[i]);
        if chars[i] == '"' {
            i += 1;
            while chars[i] != '"' {
                if chars[i] == '\\' {
                    out.push(chars[i]);
                    i += 1;
                }
                out.push(chars[i]);
                i += 1;
            }
            out.push('"');
        }
        i += 1;
    }
    out
}

/// If the array starting at `start` holds only scalars, its closing index
/// and one-line rendering.
fn flat_array(chars: &[char], start: usize) -> Option<(usize, String)> {
    let mut items = Vec::new();
    let mut cur = String::new();
    let mut i = start + 1;
    loop {
        match chars[i] {
            '[' | '{' => return None,
            ']' => break,
            ',' => items.push(std::mem::take(&mut cur)),
            '"' => {
                cur.push('"');
                i += 1;
                while chars[i] != '"' {
                    if chars[i] == '\\' {
                        cur.push(chars[i]);
                        i += 1;
                    }
                    cur.push(chars[i]);
                    i += 1;
                }
                cur.push('"');
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
        i += 1;
    }
    if !cur.is_empty() {
        items.push(cur);
    }
    Some((i, format!("[{}]", items.join(", "))))
}

/// The shipped scenario files, by file stem.
pub fn scenario_fixtures() -> Vec<(&'static str, RawScenario)> {
    use crate::category::conjugation_functor;
    use crate::Q;
    let k = fixtures::k::<Q>();
    let kc2 = fixtures::kc2::<Q>();
    let with = |h: &HopfAlgebra<Q>, d: &HCategory<Q>, counit: bool| RawScenario {
        hopf: Some(hopf_to_raw(h)),
        category: Some(category_to_raw(d, counit)),
        ..Default::default()
    };
    let d1 = fixtures::d1(&k);
    let l = linearize(&d1, 2);
    let one = Q::from_i64(1);
    let eta = vec![SparseVec::from_entries(4, [(0, one.clone()), (1, one.clone()), (3, one.clone())])];
    let inv = vec![SparseVec::from_entries(4, [(0, one.clone()), (1, -one.clone()), (3, one)])];
    let phi = conjugation_functor(&l, &eta, &inv);
    let inner = RawScenario {
        functors: [("Phi".to_string(), functor_to_raw(&l, &phi, Some(2)))].into_iter().collect(),
        ..with(&k, &d1, true)
    };
    let vanish = RawScenario {
        functors: [
            ("Phi".to_string(), functor_to_raw(&l, &LinearFunctor::identity(&l), Some(2))),
            ("upsilon".to_string(), functor_to_raw(&d1, &LinearFunctor::identity(&d1), None)),
        ]
        .into_iter()
        .collect(),
        ..with(&k, &d1, true)
    };
    let d3_kc2 = RawScenario {
        modular_pair: Some(pair_to_raw(&ModularPair::trivial(&kc2))),
        sayd: Some(RawSayd::Named("sigma_k_delta".into())),
        coalgebra: Some(RawCoalgebra::Named("regular".into())),
        coalgebra_action: Some(RawCoalgebraAction::Named("hopf".into())),
        ..with(&kc2, &fixtures::d3(&kc2), false)
    };
    let h4 = fixtures::sweedler::<Q>();
    let sweedler = RawScenario {
        modular_pair: Some(pair_to_raw(&fixtures::sweedler_pair(&h4))),
        sayd: Some(RawSayd::Named("sigma_k_delta".into())),
        ..with(&h4, &fixtures::d1(&h4), true)
    };
    let kc3 = fixtures::kc3::<Q>();
    let ks3 = fixtures::ks3::<Q>();
    let broken = fixtures::broken_kc2::<Q>();
    vec![
        ("point", with(&k, &d1, true)),
        ("a2", with(&k, &fixtures::a2(&k), true)),
        ("d3", with(&k, &fixtures::d3(&k), true)),
        ("d3_kc2", d3_kc2),
        ("d3_broken", with(&kc2, &fixtures::d3_broken(&kc2), false)),
        ("sweedler", sweedler),
        ("kc3", with(&kc3, &fixtures::d1(&kc3), true)),
        ("ks3", with(&ks3, &fixtures::a2(&ks3), true)),
        ("broken_hopf", with(&broken, &fixtures::d1(&broken), true)),
        ("inner_d1", inner),
        ("vanish_d1", vanish),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::conjugation_functor;
    use crate::Q;

    #[test]
    fn hopf_round_trip() {
        for name in fixtures::HOPF_NAMES {
            let h = fixtures::hopf_by_name::<Q>(name).unwrap();
            let raw = hopf_to_raw(&h);
            assert_eq!(parse_hopf::<Q>(&raw).unwrap(), h, "{name}");
            let mut no_inv = raw.clone();
            no_inv.antipode_inv = None;
            assert_eq!(parse_hopf::<Q>(&no_inv).unwrap(), h, "{name} with computed S⁻¹");
        }
    }

    #[test]
    fn category_round_trip() {
        let h = fixtures::kc2::<Q>();
        for d in [fixtures::d1(&h), fixtures::a2(&h), fixtures::d3(&h), fixtures::d3_broken(&h), linearize(&fixtures::d3(&h), 2)] {
            let raw = category_to_raw(&d, false);
            assert_eq!(parse_category(&h, &raw).unwrap(), d);
            let json = serde_json::to_string(&raw).unwrap();
            let back: RawCategory = serde_json::from_str(&json).unwrap();
            assert_eq!(back, raw);
        }
        let d = fixtures::a2(&h);
        assert_eq!(parse_category(&h, &category_to_raw(&d, true)).unwrap(), d);
    }

    #[test]
    fn scenario_with_defaults() {
        let text = r#"{"category": {"objects": ["*"], "homs": [{"source": "*", "target": "*", "basis": ["id"]}],
            "compose": [{"objects": ["*", "*", "*"], "entries": [[0, 0, 0, "1"]]}],
            "identities": {"*": [[0, "1"]]}}}"#;
        let sc = parse_scenario::<Q>(text).unwrap();
        assert_eq!(sc.hopf.dim(), 1);
        assert_eq!(sc.sayd.dim(), 1);
        assert_eq!(sc.category.unwrap(), fixtures::d1(&fixtures::k()));
    }

    #[test]
    fn functor_round_trip() {
        let k = fixtures::k::<Q>();
        let d = fixtures::d1(&k);
        let l = linearize(&d, 2);
        let one = Q::from_i64(1);
        let eta = vec![SparseVec::from_entries(4, [(0, one.clone()), (1, one.clone()), (3, one.clone())])];
        let inv = vec![SparseVec::from_entries(4, [(0, one.clone()), (1, -one.clone()), (3, one)])];
        let phi = conjugation_functor(&l, &eta, &inv);
        let raw = RawScenario {
            category: Some(category_to_raw(&d, true)),
            functors: [("Phi".to_string(), functor_to_raw(&l, &phi, Some(2)))].into_iter().collect(),
            ..Default::default()
        };
        let sc = parse_scenario::<Q>(&to_json(&raw)).unwrap();
        assert_eq!(sc.functors["Phi"].functor, phi);
        assert_eq!(sc.functor_domain(&sc.functors["Phi"]).unwrap(), l);
    }

    #[test]
    fn flat_arrays_collapse() {
        let raw = scenario_fixtures().remove(0).1;
        let text = to_json(&raw);
        assert!(text.contains("[0, 0, 0, \"1\"]"));
        let back: RawScenario = serde_json::from_str(&text).unwrap();
        assert_eq!(back, raw);
        assert_eq!(collapse_flat_arrays("[\"a]\\\"\", [1,\n 2]]"), "[\"a]\\\"\", [1, 2]]");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_scenario::<Q>("{").is_err());
        assert!(parse_scenario::<Q>(r#"{"unknown": 1}"#).is_err());
        let mut raw = hopf_to_raw(&fixtures::kc2::<Q>());
        raw.mul[0].3 = "1/0".into();
        assert!(parse_hopf::<Q>(&raw).is_err());
        let mut raw = hopf_to_raw(&fixtures::kc2::<Q>());
        raw.mul[0].2 = 7;
        assert!(matches!(parse_hopf::<Q>(&raw), Err(Error::Parse(_))));
        let mut raw = hopf_to_raw(&fixtures::kc2::<Q>());
        raw.antipode = vec![];
        raw.antipode_inv = None;
        assert!(parse_hopf::<Q>(&raw).is_err());
        let text = r#"{"category": {"objects": ["X"], "homs": [{"source": "X", "target": "Y", "basis": []}], "compose": []}}"#;
        assert!(parse_scenario::<Q>(text).is_err());
    }
}
