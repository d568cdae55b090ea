//! Truncated (para-)cocyclic and cyclic modules, identity certification, the
//! λ-complex and cohomology.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, solve, BasedSpace, Echelon, SparseMatrix, SparseVec, Subspace};
use crate::report::{Check, ValidationReport};
use crate::scalar::Field;

/// Cochain data `C⁰..C^N`.
///
/// `faces[n][i]: C^{n-1} → C^n` for `1 ≤ n ≤ N`, `0 ≤ i ≤ n` (`faces[0]` is empty);
/// `degeneracies[n][i]: C^{n+1} → C^n` for `n < N`, `0 ≤ i ≤ n`;
/// `cyclic[n]: C^n → C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocyclicModule<F> {
    pub spaces: Vec<BasedSpace>,
    pub faces: Vec<Vec<SparseMatrix<F>>>,
    pub degeneracies: Vec<Vec<SparseMatrix<F>>>,
    pub cyclic: Vec<SparseMatrix<F>>,
}

/// Same data; only [`certify_para`] is expected to pass.
pub type ParaCocyclicModule<F> = CocyclicModule<F>;

/// Chain data `C_0..C_N` with `faces[n][i]: C_n → C_{n-1}`,
/// `degeneracies[n][i]: C_n → C_{n+1}` and `cyclic[n]: C_n → C_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicModule<F> {
    pub spaces: Vec<BasedSpace>,
    pub faces: Vec<Vec<SparseMatrix<F>>>,
    pub degeneracies: Vec<Vec<SparseMatrix<F>>>,
    pub cyclic: Vec<SparseMatrix<F>>,
}

impl<F: Field> CocyclicModule<F> {
    pub fn max_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(BasedSpace::dim).collect()
    }

    /// `b = Σ (-1)^i δ_i : C^n → C^{n+1}`.
    pub fn coboundary(&self, n: usize) -> SparseMatrix<F> {
        let mut b = SparseMatrix::zeros(self.dim(n + 1), self.dim(n));
        for (i, d) in self.faces[n + 1].iter().enumerate() {
            b = b.add_scaled(&F::sign(i), d);
        }
        b
    }

    /// `λ = (-1)^n τ_n`.
    pub fn lambda(&self, n: usize) -> SparseMatrix<F> {
        self.cyclic[n].scale(&F::sign(n))
    }

    /// Keeps degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.max_degree());
        CocyclicModule {
            spaces: self.spaces[..=n].to_vec(),
            faces: self.faces[..=n].to_vec(),
            degeneracies: self.degeneracies[..n].to_vec(),
            cyclic: self.cyclic[..=n].to_vec(),
        }
    }

    /// Degreewise tensor product with structure maps `x⊗y`.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.max_degree().min(other.max_degree());
        let spaces = (0..=n)
            .map(|k| {
                let (a, b) = (&self.spaces[k], &other.spaces[k]);
                BasedSpace::new(
                    a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect(),
                )
            })
            .collect();
        let zip = |a: &[SparseMatrix<F>], b: &[SparseMatrix<F>]| -> Vec<SparseMatrix<F>> {
            a.iter().zip(b).map(|(x, y)| x.kron(y)).collect()
        };
        CocyclicModule {
            spaces,
            faces: (0..=n).map(|k| zip(&self.faces[k], &other.faces[k])).collect(),
            degeneracies: (0..n).map(|k| zip(&self.degeneracies[k], &other.degeneracies[k])).collect(),
            cyclic: zip(&self.cyclic[..=n], &other.cyclic[..=n]),
        }
    }

    /// Conjugates every structure map by an invertible change of basis
    /// `p[n]` of `C^n` (with inverse `p_inv[n]`).
    pub fn change_basis(&self, p: &[SparseMatrix<F>], p_inv: &[SparseMatrix<F>]) -> Self {
        let n = self.max_degree();
        let conj = |to: usize, m: &SparseMatrix<F>, from: usize| p[to].compose(m).compose(&p_inv[from]);
        CocyclicModule {
            spaces: self.spaces.clone(),
            faces: (0..=n).map(|k| self.faces[k].iter().map(|d| conj(k, d, k - 1)).collect()).collect(),
            degeneracies: (0..n)
                .map(|k| self.degeneracies[k].iter().map(|s| conj(k, s, k + 1)).collect())
                .collect(),
            cyclic: (0..=n).map(|k| conj(k, &self.cyclic[k], k)).collect(),
        }
    }
}

impl<F: Field> CyclicModule<F> {
    pub fn max_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    /// The full linear dual, with every map transposed.
    pub fn dual(&self) -> CocyclicModule<F> {
        let tr = |v: &Vec<SparseMatrix<F>>| v.iter().map(SparseMatrix::transpose).collect::<Vec<_>>();
        CocyclicModule {
            spaces: self.spaces.clone(),
            faces: self.faces.iter().map(tr).collect(),
            degeneracies: self.degeneracies.iter().map(tr).collect(),
            cyclic: self.cyclic.iter().map(SparseMatrix::transpose).collect(),
        }
    }

    /// `b = Σ (-1)^i d_i : C_n → C_{n-1}`.
    pub fn boundary(&self, n: usize) -> SparseMatrix<F> {
        let mut b = SparseMatrix::zeros(self.dim(n - 1), self.dim(n));
        for (i, d) in self.faces[n].iter().enumerate() {
            b = b.add_scaled(&F::sign(i), d);
        }
        b
    }
}

fn shape_check<F: Field>(x: &CocyclicModule<F>) -> Check {
    let mut c = Check::new("shape");
    let n = x.max_degree();
    let ok_counts = x.faces.len() == n + 1
        && x.degeneracies.len() == n
        && x.cyclic.len() == n + 1
        && x.faces[0].is_empty();
    c.record(ok_counts, || "operator counts do not match the truncation degree".into());
    if !ok_counts {
        return c;
    }
    let shp = |m: &SparseMatrix<F>, r: usize, k: usize| m.nrows() == r && m.ncols() == k;
    for k in 0..=n {
        c.record(shp(&x.cyclic[k], x.dim(k), x.dim(k)), || format!("τ_{k}"));
        if k >= 1 {
            c.record(x.faces[k].len() == k + 1, || format!("face count in degree {k}"));
            for (i, d) in x.faces[k].iter().enumerate() {
                c.record(shp(d, x.dim(k), x.dim(k - 1)), || format!("δ_{i} into degree {k}"));
            }
        }
        if k < n {
            c.record(x.degeneracies[k].len() == k + 1, || format!("degeneracy count in degree {k}"));
            for (i, s) in x.degeneracies[k].iter().enumerate() {
                c.record(shp(s, x.dim(k), x.dim(k + 1)), || format!("σ_{i} into degree {k}"));
            }
        }
    }
    c
}

fn diff<F: Field>(a: &SparseMatrix<F>, b: &SparseMatrix<F>) -> Option<String> {
    a.first_difference(b).map(|(r, c)| format!("entry ({r}, {c})"))
}

/// Cosimplicial identities and the τ-compatibility relations.
pub fn certify_para<F: Field>(x: &CocyclicModule<F>) -> ValidationReport {
    let mut rep = ValidationReport::new("para-cocyclic module");
    let shape = shape_check(x);
    let ok = shape.passed();
    rep.push(shape);
    if !ok {
        return rep;
    }
    let nmax = x.max_degree();
    let (d, s, t) = (&x.faces, &x.degeneracies, &x.cyclic);
    let record = |c: &mut Check, l: SparseMatrix<F>, r: SparseMatrix<F>, w: String| {
        let diffw = diff(&l, &r);
        c.record(diffw.is_none(), || format!("{w}, {}", diffw.clone().unwrap_or_default()));
    };

    for n in 1..nmax {
        let mut c = Check::at_degree("δ_jδ_i=δ_iδ_{j-1} (i<j)", n + 1);
        for j in 0..=n + 1 {
            for i in 0..j {
                record(&mut c, d[n + 1][j].compose(&d[n][i]), d[n + 1][i].compose(&d[n][j - 1]), format!("i={i}, j={j}"));
            }
        }
        rep.push(c);
    }
    for n in 0..nmax.saturating_sub(1) {
        let mut c = Check::at_degree("σ_jσ_i=σ_iσ_{j+1} (i≤j)", n);
        for j in 0..=n {
            for i in 0..=j {
                record(&mut c, s[n][j].compose(&s[n + 1][i]), s[n][i].compose(&s[n + 1][j + 1]), format!("i={i}, j={j}"));
            }
        }
        rep.push(c);
    }
    for n in 0..nmax {
        let mut c = Check::at_degree("σ_jδ_i", n);
        for j in 0..=n {
            for i in 0..=n + 1 {
                let l = s[n][j].compose(&d[n + 1][i]);
                let r = if i < j {
                    d[n][i].compose(&s[n - 1][j - 1])
                } else if i == j || i == j + 1 {
                    SparseMatrix::identity(x.dim(n))
                } else {
                    d[n][i - 1].compose(&s[n - 1][j])
                };
                record(&mut c, l, r, format!("i={i}, j={j}"));
            }
        }
        rep.push(c);
    }
    for n in 1..=nmax {
        let mut c = Check::at_degree("τ_nδ_i=δ_{i-1}τ_{n-1}", n);
        for i in 1..=n {
            record(&mut c, t[n].compose(&d[n][i]), d[n][i - 1].compose(&t[n - 1]), format!("i={i}"));
        }
        rep.push(c);
        let mut c = Check::at_degree("τ_nδ_0=δ_n", n);
        record(&mut c, t[n].compose(&d[n][0]), d[n][n].clone(), String::new());
        rep.push(c);
    }
    for n in 0..nmax {
        let mut c = Check::at_degree("τ_nσ_i=σ_{i-1}τ_{n+1}", n);
        for i in 1..=n {
            record(&mut c, t[n].compose(&s[n][i]), s[n][i - 1].compose(&t[n + 1]), format!("i={i}"));
        }
        rep.push(c);
        let mut c = Check::at_degree("τ_nσ_0=σ_nτ²_{n+1}", n);
        record(&mut c, t[n].compose(&s[n][0]), s[n][n].compose(&t[n + 1].power(2)), String::new());
        rep.push(c);
    }
    rep
}

/// Everything in [`certify_para`] plus `τ_n^{n+1} = id`.
pub fn certify<F: Field>(x: &CocyclicModule<F>) -> ValidationReport {
    let mut rep = certify_para(x);
    rep.subject = "cocyclic module".into();
    if rep.check("shape").is_some_and(Check::passed) {
        for n in 0..=x.max_degree() {
            let mut c = Check::at_degree("τ^{n+1}=id", n);
            let p = x.cyclic[n].power(n + 1);
            let w = diff(&p, &SparseMatrix::identity(x.dim(n)));
            c.record(w.is_none(), || w.unwrap_or_default());
            rep.push(c);
        }
    }
    rep
}

/// Certifies a cyclic module through its dual; the dual identities are the
/// transposes of the simplicial and cyclic ones.
pub fn certify_cyclic<F: Field>(x: &CyclicModule<F>) -> ValidationReport {
    let mut rep = certify(&x.dual());
    rep.subject = "cyclic module (checked on the transposed operators)".into();
    rep
}

/// Checks that `maps[n]: X^n → Y^n` commutes with faces, degeneracies and
/// cyclic operators; `name` labels the map in the check identities.
pub fn certify_morphism<F: Field>(
    name: &str,
    x: &CocyclicModule<F>,
    y: &CocyclicModule<F>,
    maps: &[SparseMatrix<F>],
) -> ValidationReport {
    let mut rep = ValidationReport::new(format!("morphism {name}"));
    let nmax = x.max_degree().min(y.max_degree()).min(maps.len().saturating_sub(1));
    let mut shape = Check::new("shape");
    for (n, m) in maps.iter().enumerate().take(nmax + 1) {
        shape.record(m.nrows() == y.dim(n) && m.ncols() == x.dim(n), || format!("degree {n}"));
    }
    let ok = shape.passed();
    rep.push(shape);
    if !ok {
        return rep;
    }
    for n in 1..=nmax {
        let mut c = Check::at_degree(format!("{name}δ_i=δ_i{name}"), n);
        for i in 0..=n {
            let w = diff(&maps[n].compose(&x.faces[n][i]), &y.faces[n][i].compose(&maps[n - 1]));
            c.record(w.is_none(), || format!("i={i}, {}", w.clone().unwrap_or_default()));
        }
        rep.push(c);
    }
    for n in 0..nmax {
        let mut c = Check::at_degree(format!("{name}σ_i=σ_i{name}"), n);
        for i in 0..=n {
            let w = diff(&maps[n].compose(&x.degeneracies[n][i]), &y.degeneracies[n][i].compose(&maps[n + 1]));
            c.record(w.is_none(), || format!("i={i}, {}", w.clone().unwrap_or_default()));
        }
        rep.push(c);
    }
    for n in 0..=nmax {
        let mut c = Check::at_degree(format!("{name}τ=τ{name}"), n);
        let w = diff(&maps[n].compose(&x.cyclic[n]), &y.cyclic[n].compose(&maps[n]));
        c.record(w.is_none(), || w.unwrap_or_default());
        rep.push(c);
    }
    rep
}

/// `C^n_λ = Ker(1-λ)` with `b` restricted to it.
#[derive(Clone, Debug)]
pub struct LambdaComplex<F> {
    pub spaces: Vec<Subspace<F>>,
    /// `diffs[n]: C^n_λ → C^{n+1}_λ` in subspace coordinates, `n < N`.
    pub diffs: Vec<SparseMatrix<F>>,
}

impl<F: Field> LambdaComplex<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }
}

/// Builds the λ-complex; fails with a witness when `b` leaves `Ker(1-λ)`.
pub fn lambda_complex<F: Field>(x: &CocyclicModule<F>) -> Result<LambdaComplex<F>> {
    let n = x.max_degree();
    let spaces: Vec<Subspace<F>> = (0..=n)
        .map(|k| kernel(&SparseMatrix::identity(x.dim(k)).sub(&x.lambda(k))))
        .collect();
    let mut diffs = Vec::with_capacity(n);
    for k in 0..n {
        let b = x.coboundary(k);
        let m = spaces[k].restrict(&b, &spaces[k + 1]).map_err(|j| {
            Error::Precondition(format!("b does not preserve Ker(1-λ): basis vector {j} of degree {k}"))
        })?;
        diffs.push(m);
    }
    Ok(LambdaComplex { spaces, diffs })
}

/// Same complex without the λ restriction (Hochschild).
pub fn hochschild_complex<F: Field>(x: &CocyclicModule<F>) -> LambdaComplex<F> {
    let n = x.max_degree();
    LambdaComplex {
        spaces: (0..=n).map(|k| Subspace::full(x.dim(k))).collect(),
        diffs: (0..n).map(|k| x.coboundary(k)).collect(),
    }
}

/// Checks `b∘b = 0` on the λ-complex.
pub fn certify_lambda<F: Field>(l: &LambdaComplex<F>) -> ValidationReport {
    let mut rep = ValidationReport::new("λ-complex");
    for k in 1..l.diffs.len() {
        let mut c = Check::at_degree("b∘b=0", k - 1);
        let bb = l.diffs[k].compose(&l.diffs[k - 1]);
        c.record(bb.is_zero(), || format!("{} nonzero entries", bb.nnz()));
        rep.push(c);
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyEntry<F> {
    pub degree: usize,
    pub betti: usize,
    /// Dimensions of the complex in degrees `n-1, n, n+1` (absent below 0).
    pub dims: Vec<usize>,
    /// Cocycles in ambient coordinates of `C^n` whose classes form a basis.
    #[serde(skip)]
    pub representatives: Vec<SparseVec<F>>,
}

fn entry<F: Field>(l: &LambdaComplex<F>, n: usize) -> Result<CohomologyEntry<F>> {
    let nmax = l.diffs.len();
    if n + 1 > nmax {
        return Err(Error::Degree { degree: n, max: nmax.saturating_sub(1) });
    }
    let z = kernel(&l.diffs[n]);
    let ambient = l.spaces[n].ambient();
    let mut e = Echelon::new(ambient);
    if n > 0 {
        for col in l.diffs[n - 1].columns() {
            e.insert(&l.spaces[n].expand(col));
        }
    }
    let mut reps = Vec::new();
    for zb in z.basis() {
        let v = l.spaces[n].expand(zb);
        if e.insert(&v) {
            reps.push(v);
        }
    }
    let mut dims = Vec::new();
    if n > 0 {
        dims.push(l.spaces[n - 1].dim());
    }
    dims.push(l.spaces[n].dim());
    dims.push(l.spaces[n + 1].dim());
    Ok(CohomologyEntry { degree: n, betti: reps.len(), dims, representatives: reps })
}

/// `HC^n` from the λ-complex.
pub fn cohomology<F: Field>(x: &CocyclicModule<F>, n: usize) -> Result<CohomologyEntry<F>> {
    entry(&lambda_complex(x)?, n)
}

/// `HC^0 .. HC^{N-1}`.
pub fn cohomology_table<F: Field>(x: &CocyclicModule<F>) -> Result<Vec<CohomologyEntry<F>>> {
    let l = lambda_complex(x)?;
    (0..l.diffs.len()).map(|n| entry(&l, n)).collect()
}

pub fn hochschild_cohomology<F: Field>(x: &CocyclicModule<F>, n: usize) -> Result<CohomologyEntry<F>> {
    entry(&hochschild_complex(x), n)
}

pub fn hochschild_table<F: Field>(x: &CocyclicModule<F>) -> Result<Vec<CohomologyEntry<F>>> {
    let l = hochschild_complex(x);
    (0..l.diffs.len()).map(|n| entry(&l, n)).collect()
}

/// Betti numbers from ranks alone: `dim K_n - rank b_n - rank b_{n-1}`.
pub fn betti_by_rank<F: Field>(l: &LambdaComplex<F>, n: usize) -> usize {
    let r_out = rank(&l.diffs[n]);
    let r_in = if n > 0 { rank(&l.diffs[n - 1]) } else { 0 };
    l.spaces[n].dim() - r_out - r_in
}

/// A basis of the cyclic cocycles `Ker b ∩ Ker(1-λ)` in degree `n < N`, in
/// ambient coordinates.
pub fn cyclic_cocycles<F: Field>(x: &CocyclicModule<F>, n: usize) -> Result<Vec<SparseVec<F>>> {
    if n >= x.max_degree() {
        return Err(Error::Degree { degree: n, max: x.max_degree().saturating_sub(1) });
    }
    let l = lambda_complex(x)?;
    Ok(kernel(&l.diffs[n]).basis().iter().map(|v| l.spaces[n].expand(v)).collect())
}

/// Records `bφ = 0` and `λφ = φ` for one cochain of degree `n < N`.
pub fn record_cyclic_cocycle<F: Field>(c: &mut Check, x: &CocyclicModule<F>, n: usize, phi: &SparseVec<F>) {
    if phi.dim() != x.dim(n) {
        c.fail(format!("cochain has dimension {}, C^{n} has {}", phi.dim(), x.dim(n)));
        return;
    }
    let closed = x.coboundary(n).apply(phi).is_zero();
    let cyclic = x.lambda(n).apply(phi) == *phi;
    c.record(closed && cyclic, || if closed { "λφ≠φ".into() } else { "bφ≠0".into() });
}

/// Finds `ψ ∈ C^{n-1}_λ` with `bψ = φ`. `φ` must satisfy `λφ = φ` and `bφ = 0`.
pub fn is_coboundary<F: Field>(x: &CocyclicModule<F>, n: usize, phi: &SparseVec<F>) -> Result<Option<SparseVec<F>>> {
    if n > x.max_degree() || phi.dim() != x.dim(n) {
        return Err(Error::Dimension(format!("cochain does not live in degree {n}")));
    }
    if x.lambda(n).apply(phi) != *phi {
        return Err(Error::Precondition("φ is not λ-invariant".into()));
    }
    if n < x.max_degree() && !x.coboundary(n).apply(phi).is_zero() {
        return Err(Error::Precondition("φ is not a cocycle".into()));
    }
    if phi.is_zero() {
        return Ok(Some(SparseVec::zero(if n == 0 { 0 } else { x.dim(n - 1) })));
    }
    if n == 0 {
        return Ok(None);
    }
    let k = kernel(&SparseMatrix::identity(x.dim(n - 1)).sub(&x.lambda(n - 1)));
    let bk = x.coboundary(n - 1).compose(&k.basis_matrix());
    let Some(y) = solve(&bk, phi) else {
        return Ok(None);
    };
    let psi = k.expand(&y);
    if x.coboundary(n - 1).apply(&psi) != *phi {
        return Err(Error::Precondition("coboundary solution failed its re-check".into()));
    }
    Ok(Some(psi))
}

/// Hochschild version: `ψ ∈ C^{n-1}` with `bψ = φ`, no λ constraint.
pub fn is_hochschild_coboundary<F: Field>(x: &CocyclicModule<F>, n: usize, phi: &SparseVec<F>) -> Option<SparseVec<F>> {
    if n == 0 {
        return phi.is_zero().then(|| SparseVec::zero(0));
    }
    solve(&x.coboundary(n - 1), phi)
}

/// The complex with `C^n = k` and every structure map the identity, up to degree `n`.
pub fn point_complex<F: Field>(n: usize) -> CocyclicModule<F> {
    let one = || SparseMatrix::identity(1);
    CocyclicModule {
        spaces: (0..=n).map(|_| BasedSpace::new(vec!["1".into()])).collect(),
        faces: (0..=n).map(|k| if k == 0 { Vec::new() } else { (0..=k).map(|_| one()).collect() }).collect(),
        degeneracies: (0..n).map(|k| (0..=k).map(|_| one()).collect()).collect(),
        cyclic: (0..=n).map(|_| one()).collect(),
    }
}
