//! Bundled presentations used by the tests, the acceptance suite and the CLI.

use crate::category::HCategory;
use crate::hopf::{HopfAlgebra, ModularPair};
use crate::linalg::{BasedSpace, SparseMatrix, SparseVec};
use crate::scalar::Field;

fn q<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

/// Group algebra from a multiplication table `table[a][b] = index of ab`.
/// Element 0 must be the identity.
pub fn group_algebra<F: Field>(name: &str, labels: Vec<String>, table: &[Vec<usize>]) -> HopfAlgebra<F> {
    let n = labels.len();
    let mul = (0..n * n).map(|k| SparseVec::unit(n, table[k / n][k % n])).collect();
    let comul = (0..n).map(|i| SparseVec::unit(n * n, i * n + i)).collect();
    let inverse = |a: usize| (0..n).find(|&b| table[a][b] == 0).expect("group element has an inverse");
    let s = SparseMatrix::from_triplets(n, n, (0..n).map(|a| (inverse(a), a, F::one())));
    HopfAlgebra::new(
        name,
        BasedSpace::new(labels),
        mul,
        SparseVec::unit(n, 0),
        comul,
        vec![F::one(); n],
        s.clone(),
        s,
    )
    .expect("group algebra shapes are consistent")
}

fn cyclic_group<F: Field>(m: usize) -> HopfAlgebra<F> {
    let labels = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    group_algebra(&format!("kC{m}"), labels, &table)
}

/// The ground field as a Hopf algebra.
pub fn k<F: Field>() -> HopfAlgebra<F> {
    group_algebra("k", vec!["1".into()], &[vec![0]])
}

pub fn kc2<F: Field>() -> HopfAlgebra<F> {
    cyclic_group(2)
}

pub fn kc3<F: Field>() -> HopfAlgebra<F> {
    cyclic_group(3)
}

/// Group algebra of the symmetric group on three letters, basis in
/// lexicographic order of one-line notation.
pub fn ks3<F: Field>() -> HopfAlgebra<F> {
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let labels = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
    let idx = |p: [usize; 3]| perms.iter().position(|x| *x == p).expect("permutation");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| perms.iter().map(|r| idx([p[r[0]], p[r[1]], p[r[2]]])).collect())
        .collect();
    group_algebra("kS3", labels, &table)
}

/// Sweedler's four-dimensional Hopf algebra on the basis `1, g, x, gx` with
/// `g² = 1`, `x² = 0`, `xg = -gx`, `Δx = x⊗1 + g⊗x`, `S(x) = -gx`.
pub fn sweedler<F: Field>() -> HopfAlgebra<F> {
    let n = 4;
    let e = |i: usize| SparseVec::<F>::unit(n, i);
    let z = SparseVec::<F>::zero(n);
    // Rows: left factor 1, g, x, gx; columns: right factor.
    let table: Vec<Vec<SparseVec<F>>> = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), e(0), e(3), e(2)],
        vec![e(2), e(3).neg(), z.clone(), z.clone()],
        vec![e(3), e(2).neg(), z.clone(), z],
    ];
    let mul = table.into_iter().flatten().collect();
    let t = |a: usize, b: usize| a * n + b;
    let comul = vec![
        SparseVec::unit(n * n, t(0, 0)),
        SparseVec::unit(n * n, t(1, 1)),
        SparseVec::from_entries(n * n, [(t(2, 0), F::one()), (t(1, 2), F::one())]),
        SparseVec::from_entries(n * n, [(t(3, 1), F::one()), (t(0, 3), F::one())]),
    ];
    let s = SparseMatrix::from_triplets(n, n, [(0, 0, q(1)), (1, 1, q(1)), (3, 2, q(-1)), (2, 3, q(1))]);
    let si = SparseMatrix::from_triplets(n, n, [(0, 0, q(1)), (1, 1, q(1)), (3, 2, q(1)), (2, 3, q(-1))]);
    HopfAlgebra::new(
        "H4",
        BasedSpace::new(vec!["1".into(), "g".into(), "x".into(), "gx".into()]),
        mul,
        e(0),
        comul,
        vec![q(1), q(1), q(0), q(0)],
        s,
        si,
    )
    .expect("Sweedler algebra shapes are consistent")
}

/// The modular pair `(ε, g)` on Sweedler's algebra.
pub fn sweedler_pair<F: Field>(h: &HopfAlgebra<F>) -> ModularPair<F> {
    ModularPair { delta: h.counit_vec().to_vec(), sigma: h.basis(1) }
}

/// `kC₂` with the product corrupted to `g·g = g`.
pub fn broken_kc2<F: Field>() -> HopfAlgebra<F> {
    let h = kc2::<F>();
    let n = 2;
    let mul = vec![
        SparseVec::unit(n, 0),
        SparseVec::unit(n, 1),
        SparseVec::unit(n, 1),
        SparseVec::unit(n, 1),
    ];
    HopfAlgebra::new(
        "kC2 (g·g=g)",
        h.space().clone(),
        mul,
        h.unit().clone(),
        (0..n).map(|i| h.comul_basis(i).clone()).collect(),
        h.counit_vec().to_vec(),
        h.antipode_matrix().clone(),
        h.antipode_inv_matrix().clone(),
    )
    .expect("shapes copied from kC2")
}

/// One object with `Hom = k·id`, acted on through the counit.
pub fn d1<F: Field>(h: &HopfAlgebra<F>) -> HCategory<F> {
    HCategory::builder(h, vec!["*".into()])
        .hom(0, 0, vec!["id".into()])
        .compose(0, 0, 0, 0, 0, &[(0, q(1))])
        .identity(0, &[(0, q(1))])
        .counit_action(h)
        .build()
        .expect("D1 is well formed")
}

/// The path category of `X → Y`.
pub fn a2<F: Field>(h: &HopfAlgebra<F>) -> HCategory<F> {
    let (x, y) = (0, 1);
    HCategory::builder(h, vec!["X".into(), "Y".into()])
        .hom(x, x, vec!["id_X".into()])
        .hom(y, y, vec!["id_Y".into()])
        .hom(x, y, vec!["a".into()])
        .compose(x, x, x, 0, 0, &[(0, q(1))])
        .compose(y, y, y, 0, 0, &[(0, q(1))])
        .compose(x, y, y, 0, 0, &[(0, q(1))])
        .compose(x, x, y, 0, 0, &[(0, q(1))])
        .identity(x, &[(0, q(1))])
        .identity(y, &[(0, q(1))])
        .counit_action(h)
        .build()
        .expect("A2 is well formed")
}

/// One object with `Hom = k[x]/(x²)`. Over `kC₂` the generator acts by
/// `g·x = -x`; over any other `H` the action is through the counit.
pub fn d3<F: Field>(h: &HopfAlgebra<F>) -> HCategory<F> {
    let b = HCategory::builder(h, vec!["*".into()])
        .hom(0, 0, vec!["1".into(), "x".into()])
        .compose(0, 0, 0, 0, 0, &[(0, q(1))])
        .compose(0, 0, 0, 0, 1, &[(1, q(1))])
        .compose(0, 0, 0, 1, 0, &[(1, q(1))])
        .identity(0, &[(0, q(1))]);
    let b = if h.dim() == 2 {
        b.action(0, 0, 0, 0, &[(0, q(1))])
            .action(0, 0, 0, 1, &[(1, q(1))])
            .action(0, 0, 1, 0, &[(0, q(1))])
            .action(0, 0, 1, 1, &[(1, q(-1))])
    } else {
        b.counit_action(h)
    };
    b.build().expect("D3 is well formed")
}

/// D3 over `kC₂` with the action corrupted to `g·x = x + 1`.
pub fn d3_broken<F: Field>(h: &HopfAlgebra<F>) -> HCategory<F> {
    HCategory::builder(h, vec!["*".into()])
        .hom(0, 0, vec!["1".into(), "x".into()])
        .compose(0, 0, 0, 0, 0, &[(0, q(1))])
        .compose(0, 0, 0, 0, 1, &[(1, q(1))])
        .compose(0, 0, 0, 1, 0, &[(1, q(1))])
        .identity(0, &[(0, q(1))])
        .action(0, 0, 0, 0, &[(0, q(1))])
        .action(0, 0, 0, 1, &[(1, q(1))])
        .action(0, 0, 1, 0, &[(0, q(1))])
        .action(0, 0, 1, 1, &[(0, q(1)), (1, q(1))])
        .build()
        .expect("shapes are consistent")
}

/// The names accepted by [`hopf_by_name`].
pub const HOPF_NAMES: [&str; 5] = ["k", "kC2", "kC3", "kS3", "H4"];

pub fn hopf_by_name<F: Field>(name: &str) -> Option<HopfAlgebra<F>> {
    Some(match name {
        "k" => k(),
        "kC2" => kc2(),
        "kC3" => kc3(),
        "kS3" => ks3(),
        "H4" => sweedler(),
        _ => return None,
    })
}
