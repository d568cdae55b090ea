//! The cyclic nerve `CN_•` of a linear category and its twisted variant
//! `M⊗CN_•` whose last face and cyclic operator act by `S⁻¹(m₍₋₁₎)`.

use std::collections::BTreeMap;

use crate::category::HCategory;
use crate::cyclic::CyclicModule;
use super::check_budget;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{Accumulator, BasedSpace, SparseMatrix, SparseVec};
use crate::sayd::SaydModule;
use crate::scalar::Field;

/// Basis of `CN_n`: loops `X_0 ← X_1 ← … ← X_n ← X_0` with one basis morphism
/// per arrow, `f^i ∈ Hom(X_{i+1}, X_i)` and `f^n ∈ Hom(X_0, X_n)`.
///
/// Ordered lexicographically by the object tuple, then by `(f^0, …, f^n)`.
#[derive(Clone, Debug)]
pub struct NerveBasis {
    pub degree: usize,
    /// Object tuples with a nonzero block, with block offset and slot dimensions.
    blocks: Vec<(Vec<usize>, usize, Vec<usize>)>,
    lookup: BTreeMap<Vec<usize>, usize>,
    dim: usize,
}

/// `(source, target)` of slot `i` in a loop of length `n+1`.
pub fn slot_pair(objs: &[usize], i: usize) -> (usize, usize) {
    (objs[(i + 1) % objs.len()], objs[i])
}

impl NerveBasis {
    pub fn new<F: Field>(d: &HCategory<F>, n: usize) -> Self {
        let nobj = d.n_obj();
        let mut blocks = Vec::new();
        let mut lookup = BTreeMap::new();
        let mut offset = 0;
        let mut objs = vec![0usize; n + 1];
        if nobj > 0 {
            loop {
                let dims: Vec<usize> = (0..=n)
                    .map(|i| {
                        let (s, t) = slot_pair(&objs, i);
                        d.hom_dim(s, t)
                    })
                    .collect();
                let size: usize = dims.iter().product();
                if size > 0 {
                    lookup.insert(objs.clone(), blocks.len());
                    blocks.push((objs.clone(), offset, dims));
                    offset += size;
                }
                // Next tuple in lexicographic order.
                let mut k = n + 1;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    objs[k] += 1;
                    if objs[k] < nobj {
                        break;
                    }
                    objs[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
        }
        NerveBasis { degree: n, blocks, lookup, dim: offset }
    }

    /// `dim CN_n` without enumerating the basis.
    pub fn count<F: Field>(d: &HCategory<F>, n: usize) -> usize {
        // Transfer-matrix count: trace of A^{n+1} with A[x][y] = dim Hom(y, x).
        let m = d.n_obj();
        let a: Vec<Vec<u128>> = (0..m).map(|x| (0..m).map(|y| d.hom_dim(y, x) as u128).collect()).collect();
        let mut p: Vec<Vec<u128>> = (0..m).map(|x| (0..m).map(|y| u128::from(x == y)).collect()).collect();
        for _ in 0..=n {
            p = (0..m)
                .map(|x| {
                    (0..m)
                        .map(|y| (0..m).fold(0u128, |s, z| s.saturating_add(p[x][z].saturating_mul(a[z][y]))))
                        .collect()
                })
                .collect();
        }
        let t = (0..m).fold(0u128, |s, x| s.saturating_add(p[x][x]));
        usize::try_from(t).unwrap_or(usize::MAX)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Iterates `(index, objects, morphisms)` in basis order.
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

    /// Index of a loop, or `None` if its block is empty.
    pub fn index(&self, objs: &[usize], mors: &[usize]) -> Option<usize> {
        let b = *self.lookup.get(objs)?;
        let (_, off, dims) = &self.blocks[b];
        let mut k = 0;
        for (m, d) in mors.iter().zip(dims) {
            k = k * d + m;
        }
        Some(off + k)
    }

    /// Adds `coef · (v_0 ⊗ … ⊗ v_n)` for one slot vector per arrow.
    pub fn add_tensor<F: Field>(
        &self,
        acc: &mut Accumulator<F>,
        shift: usize,
        objs: &[usize],
        slots: &[SparseVec<F>],
        coef: &F,
    ) {
        let Some(&b) = self.lookup.get(objs) else {
            return;
        };
        let (_, off, dims) = &self.blocks[b];
        let mut stack: Vec<(usize, usize, F)> = vec![(0, 0, coef.clone())];
        while let Some((i, k, c)) = stack.pop() {
            if i == slots.len() {
                acc.add(shift + off + k, &c);
                continue;
            }
            for (j, x) in slots[i].iter() {
                stack.push((i + 1, k * dims[i] + j, c.mul_ref(x)));
            }
        }
    }

    pub fn labels<F: Field>(&self, d: &HCategory<F>) -> Vec<String> {
        let multi = d.n_obj() > 1;
        self.iter()
            .map(|(_, objs, mors)| {
                let body = mors
                    .iter()
                    .enumerate()
                    .map(|(i, &f)| {
                        let (s, t) = slot_pair(objs, i);
                        d.hom_label(s, t, f).to_string()
                    })
                    .collect::<Vec<_>>()
                    .join("⊗");
                if multi {
                    let o = objs.iter().map(|&x| d.objects[x].as_str()).collect::<Vec<_>>().join(",");
                    format!("({o}) {body}")
                } else {
                    body
                }
            })
            .collect()
    }
}

/// Per basis vector `m` of `M`: the terms `(m₀, S⁻¹(m₍₋₁₎))` of its coaction.
pub(crate) type Twist<F> = Vec<Vec<(usize, SparseVec<F>)>>;

pub(crate) fn twist_of<F: Field>(h: &HopfAlgebra<F>, m: &SaydModule<F>) -> Twist<F> {
    (0..m.dim())
        .map(|i| {
            m.coact_terms(i)
                .map(|(hh, mi, c)| (mi, h.antipode_inv(&h.basis(hh)).scale(c)))
                .collect()
        })
        .collect()
}

fn untwisted<F: Field>() -> Twist<F> {
    vec![Vec::new()]
}

/// `M⊗CN_•(D)` as a cyclic module. With `twist = None` this is the plain nerve.
pub(crate) fn twisted_chain<F: Field>(
    d: &HCategory<F>,
    mlabels: &[String],
    twist: &Twist<F>,
    plain: bool,
    nmax: usize,
    budget: usize,
) -> Result<(CyclicModule<F>, Vec<NerveBasis>)> {
    if !d.is_unital() {
        return Err(Error::Precondition("the cyclic nerve needs identities; unitalize first".into()));
    }
    let md = mlabels.len();
    for n in 0..=nmax {
        let c = NerveBasis::count(d, n);
        check_budget(&format!("M⊗CN_{n}"), c.saturating_mul(md), budget)?;
    }
    let bases: Vec<NerveBasis> = (0..=nmax).map(|n| NerveBasis::new(d, n)).collect();
    let spaces = bases
        .iter()
        .map(|b| {
            let nl = b.labels(d);
            if md == 1 {
                BasedSpace::new(nl)
            } else {
                BasedSpace::new(mlabels.iter().flat_map(|m| nl.iter().map(move |x| format!("{m}|{x}"))).collect())
            }
        })
        .collect();

    let basis_slots = |objs: &[usize], mors: &[usize]| -> Vec<SparseVec<F>> {
        mors.iter()
            .enumerate()
            .map(|(i, &f)| {
                let (s, t) = slot_pair(objs, i);
                SparseVec::unit(d.hom_dim(s, t), f)
            })
            .collect()
    };
    // The last arrow twisted by S⁻¹(m₍₋₁₎), as a list of (m₀, twisted f^n) pairs.
    let twisted_last = |m: usize, objs: &[usize], mors: &[usize]| -> Vec<(usize, SparseVec<F>)> {
        let n = mors.len() - 1;
        let (s, t) = slot_pair(objs, n);
        let e = SparseVec::unit(d.hom_dim(s, t), mors[n]);
        if plain {
            return vec![(m, e)];
        }
        twist[m].iter().map(|(m0, hv)| (*m0, d.act(s, t, hv, &e))).collect()
    };

    let mut faces: Vec<Vec<SparseMatrix<F>>> = vec![Vec::new()];
    let mut degeneracies: Vec<Vec<SparseMatrix<F>>> = Vec::new();
    let mut cyclic = Vec::new();
    let one = F::one();
    for n in 0..=nmax {
        let b = &bases[n];
        let dim = b.dim();
        // cyclic operator t_n
        let mut cols = Vec::with_capacity(md * dim);
        for m in 0..md {
            for (_, objs, mors) in b.iter() {
                let mut acc = Accumulator::new(md * dim);
                let mut new_objs = vec![objs[n]];
                new_objs.extend_from_slice(&objs[..n]);
                let slots = basis_slots(objs, &mors);
                for (m0, last) in twisted_last(m, objs, &mors) {
                    let mut s = vec![last];
                    s.extend_from_slice(&slots[..n]);
                    b.add_tensor(&mut acc, m0 * dim, &new_objs, &s, &one);
                }
                cols.push(acc.finish());
            }
        }
        cyclic.push(SparseMatrix::from_columns(md * dim, cols));

        if n >= 1 {
            let lower = &bases[n - 1];
            let ld = lower.dim();
            let mut fs = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut cols = Vec::with_capacity(md * dim);
                for m in 0..md {
                    for (_, objs, mors) in b.iter() {
                        let mut acc = Accumulator::new(md * ld);
                        let slots = basis_slots(objs, &mors);
                        if i < n {
                            // f^i ∘ f^{i+1}, dropping X_{i+1}
                            let x = objs[(i + 2) % (n + 1)];
                            let y = objs[i + 1];
                            let z = objs[i];
                            let comp = d.compose_basis(x, y, z, mors[i], mors[i + 1]);
                            let mut new_objs = objs.to_vec();
                            new_objs.remove(i + 1);
                            let mut s = slots.clone();
                            s[i] = comp.clone();
                            s.remove(i + 1);
                            lower.add_tensor(&mut acc, m * ld, &new_objs, &s, &one);
                        } else {
                            // (S⁻¹(m₍₋₁₎)f^n) ∘ f^0, objects (X_n, X_1, …, X_{n-1})
                            let mut new_objs = vec![objs[n]];
                            new_objs.extend_from_slice(&objs[1..n]);
                            for (m0, last) in twisted_last(m, objs, &mors) {
                                let comp = d.compose(objs[1], objs[0], objs[n], &last, &slots[0]);
                                let mut s = vec![comp];
                                s.extend_from_slice(&slots[1..n]);
                                lower.add_tensor(&mut acc, m0 * ld, &new_objs, &s, &one);
                            }
                        }
                        cols.push(acc.finish());
                    }
                }
                fs.push(SparseMatrix::from_columns(md * ld, cols));
            }
            faces.push(fs);
        }
        if n < nmax {
            let upper = &bases[n + 1];
            let ud = upper.dim();
            let mut ss = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut cols = Vec::with_capacity(md * dim);
                for m in 0..md {
                    for (_, objs, mors) in b.iter() {
                        let mut acc = Accumulator::new(md * ud);
                        let slots = basis_slots(objs, &mors);
                        let x = objs[(i + 1) % (n + 1)];
                        let mut new_objs = objs.to_vec();
                        new_objs.insert(i + 1, x);
                        let mut s = slots.clone();
                        s.insert(i + 1, d.identity(x).expect("unital").clone());
                        upper.add_tensor(&mut acc, m * ud, &new_objs, &s, &one);
                        cols.push(acc.finish());
                    }
                }
                ss.push(SparseMatrix::from_columns(md * ud, cols));
            }
            degeneracies.push(ss);
        }
    }
    Ok((CyclicModule { spaces, faces, degeneracies, cyclic }, bases))
}

/// The cyclic nerve `CN_•(C)` up to degree `nmax`; its dual is
/// [`CyclicModule::dual`].
pub fn cyclic_nerve<F: Field>(c: &HCategory<F>, nmax: usize, budget: usize) -> Result<CyclicModule<F>> {
    Ok(twisted_chain(c, &["1".to_string()], &untwisted(), true, nmax, budget)?.0)
}

/// `M⊗CN_•(D)` with the structure maps twisted by the coaction of `M`.
pub fn twisted_nerve<F: Field>(
    h: &HopfAlgebra<F>,
    d: &HCategory<F>,
    m: &SaydModule<F>,
    nmax: usize,
    budget: usize,
) -> Result<(CyclicModule<F>, Vec<NerveBasis>)> {
    twisted_chain(d, &m.space.labels, &twist_of(h, m), false, nmax, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::DEFAULT_MAX_BASIS;
    use crate::cyclic::{certify, certify_cyclic, cohomology_table};
    use crate::fixtures;
    use crate::Q;

    #[test]
    fn nerve_dimensions() {
        let k = fixtures::k::<Q>();
        let d1 = fixtures::d1(&k);
        let x = cyclic_nerve(&d1, 4, DEFAULT_MAX_BASIS).unwrap();
        assert!((0..=4).all(|n| x.dim(n) == 1));
        assert!(x.cyclic.iter().all(|t| *t == SparseMatrix::identity(1)));
        let a2 = fixtures::a2(&k);
        let x = cyclic_nerve(&a2, 3, DEFAULT_MAX_BASIS).unwrap();
        assert_eq!(x.dim(0), 2);
        assert_eq!(x.dim(1), 2);
        // d_1(id_X⊗id_X) = id_X
        assert_eq!(x.faces[1][1].col(0), &SparseVec::unit(2, 0));
        assert!(certify_cyclic(&x).passed());
        let betti: Vec<usize> = cohomology_table(&x.dual()).unwrap().iter().map(|e| e.betti).collect();
        assert_eq!(betti, vec![2, 0, 2]);
    }

    #[test]
    fn closed_form_counts() {
        let k = fixtures::k::<Q>();
        for d in [fixtures::d1(&k), fixtures::a2(&k), fixtures::d3(&k), crate::category::linearize(&fixtures::a2(&k), 2)] {
            for n in 0..4 {
                assert_eq!(NerveBasis::new(&d, n).dim(), NerveBasis::count(&d, n));
                // Direct product-sum over all object tuples.
                let m = d.n_obj();
                let mut total = 0;
                for code in 0..m.pow(n as u32 + 1) {
                    let objs: Vec<usize> = (0..=n).map(|i| code / m.pow((n - i) as u32) % m).collect();
                    total += (0..=n).map(|i| {
                        let (s, t) = slot_pair(&objs, i);
                        d.hom_dim(s, t)
                    }).product::<usize>();
                }
                assert_eq!(total, NerveBasis::count(&d, n));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let k = fixtures::k::<Q>();
        let d = crate::category::linearize(&fixtures::d1(&k), 2);
        let e = cyclic_nerve(&d, 4, 100).unwrap_err();
        assert!(matches!(e, Error::Budget { .. }));
    }

    #[test]
    fn d3_nerve_certifies() {
        let h = fixtures::kc2::<Q>();
        let d3 = fixtures::d3(&h);
        let x = cyclic_nerve(&d3, 4, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify(&x.dual()).passed());
        let m = crate::sayd::trivial(&h);
        let (y, _) = twisted_nerve(&h, &d3, &m, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify_cyclic(&y).passed());
    }
}
