use hopf_cyclic::builders::{certify_coinvariance, cm_complex, cyclic_nerve, hopf_cyclic_cochain, NerveBasis, DEFAULT_MAX_BASIS};
use hopf_cyclic::category::{
    certify_inner, conjugation_functor, convolution_category, inner_automorphism_solve, linearize, validate_hcategory,
    HCategory, LinearFunctor,
};
use hopf_cyclic::cyclic::{certify_cyclic, cyclic_cocycles, lambda_complex, record_cyclic_cocycle};
use hopf_cyclic::dg::{dg_tensor, DgSemicategory};
use hopf_cyclic::fixtures;
use hopf_cyclic::hopf::{twisted_antipode, validate_hopf, validate_modular_pair, HModuleCoalgebra, HopfAlgebra, ModularPair};
use hopf_cyclic::linalg::dense::{rank_bareiss, rank_naive};
use hopf_cyclic::linalg::{kernel, rank, solve, SparseMatrix, SparseVec};
use hopf_cyclic::report::Check;
use hopf_cyclic::sayd::{sigma_k_delta, trivial, validate_sayd};
use hopf_cyclic::traces::{char_map_gamma, degree_zero_cochains, trace_space};
use hopf_cyclic::{Field, Q};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(a: i64) -> Q {
    Q::from_i64(a)
}

fn sparse_matrix() -> impl Strategy<Value = SparseMatrix<Q>> {
    (1usize..10, 1usize..10).prop_flat_map(|(r, c)| {
        prop::collection::vec((0..r, 0..c, -4i64..=4, 1i64..=3), 0..(r * c)).prop_map(move |t| {
            SparseMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, a, b)| (i, j, Q::from_ratio(a, b))))
        })
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_the_column_count(a in sparse_matrix()) {
        let r = rank(&a);
        let k = kernel(&a);
        prop_assert_eq!(r + k.dim(), a.ncols());
        for v in k.basis() {
            prop_assert!(a.apply(v).is_zero());
        }
        prop_assert_eq!(r, rank_naive(a.to_dense()));
    }

    #[test]
    fn solve_reproduces_the_target(a in sparse_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = SparseVec::from_dense(&(0..a.ncols()).map(|_| q(rng.gen_range(-3..=3))).collect::<Vec<_>>());
        let b = a.apply(&x);
        let y = solve(&a, &b);
        prop_assert!(y.is_some(), "consistent system reported unsolvable");
        prop_assert_eq!(a.apply(&y.unwrap()), b);
        let b2 = SparseVec::from_dense(&(0..a.nrows()).map(|_| q(rng.gen_range(-3..=3))).collect::<Vec<_>>());
        if let Some(y2) = solve(&a, &b2) {
            prop_assert_eq!(a.apply(&y2), b2);
        }
    }

    #[test]
    fn nerve_dimension_matches_the_closed_form(dims in prop::collection::vec(0usize..3, 4), n in 0usize..4) {
        // Two objects with random Hom dimensions; composition is irrelevant to the count.
        let mut b = HCategory::<Q>::linear_builder(vec!["X".into(), "Y".into()]);
        for (p, &d) in dims.iter().enumerate() {
            b = b.hom(p / 2, p % 2, (0..d).map(|i| format!("f{p}_{i}")).collect());
        }
        let c = b.build().unwrap();
        // Σ over loops X_0 ← X_1 ← … ← X_n ← X_0 of the product of Hom dimensions.
        let mut expected = 0;
        for mask in 0..(1usize << (n + 1)) {
            let o: Vec<usize> = (0..=n).map(|i| (mask >> i) & 1).collect();
            let mut prod = 1;
            for i in 0..=n {
                let (src, tgt) = if i == n { (o[0], o[n]) } else { (o[i + 1], o[i]) };
                prod *= dims[src * 2 + tgt];
            }
            expected += prod;
        }
        prop_assert_eq!(NerveBasis::new(&c, n).dim(), expected);
        prop_assert_eq!(NerveBasis::count(&c, n), expected);
    }

    #[test]
    fn conjugation_is_recognised_as_inner(a in -3i64..=3, b in -3i64..=3, c in 1i64..=3) {
        let k = fixtures::k::<Q>();
        let l = linearize(&fixtures::a2(&k), 2);
        // η(X) = c E11 + a E12 + E22 and η(Y) = E11 + b E21 + E22 are invertible.
        let ex = SparseVec::from_entries(4, [(0, q(c)), (1, q(a)), (3, q(1))]);
        let ex_inv = SparseVec::from_entries(4, [(0, Q::from_ratio(1, c)), (1, Q::from_ratio(-a, c)), (3, q(1))]);
        let ey = SparseVec::from_entries(4, [(0, q(1)), (2, q(b)), (3, q(1))]);
        let ey_inv = SparseVec::from_entries(4, [(0, q(1)), (2, q(-b)), (3, q(1))]);
        let phi = conjugation_functor(&l, &[ex.clone(), ey.clone()], &[ex_inv.clone(), ey_inv.clone()]);
        prop_assert!(certify_inner(&l, &phi, &[ex, ey], &[ex_inv, ey_inv]));
        let s = inner_automorphism_solve(&l, &phi).unwrap();
        prop_assert!(s.found());
        prop_assert!(certify_inner(&l, &phi, s.eta.as_ref().unwrap(), s.eta_inv.as_ref().unwrap()));
    }
}

#[test]
fn bareiss_and_naive_ranks_agree_on_100_sparse_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..100 {
        let density = rng.gen_range(0.05..0.4);
        let a: Vec<Vec<Q>> = (0..20)
            .map(|_| {
                (0..20)
                    .map(|_| if rng.gen_bool(density) { Q::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)) } else { q(0) })
                    .collect()
            })
            .collect();
        let sparse = SparseMatrix::from_dense(&a, 20);
        let r = rank_bareiss(a.clone());
        assert_eq!(r, rank_naive(a));
        assert_eq!(r, rank(&sparse));
    }
}

#[test]
fn non_inner_functor_is_not_found() {
    let k = fixtures::k::<Q>();
    let l = linearize(&fixtures::d1(&k), 2);
    let zero = LinearFunctor { maps: vec![SparseMatrix::zeros(4, 4)], ..LinearFunctor::identity(&l) };
    let s = inner_automorphism_solve(&l, &zero).unwrap();
    assert!(!s.found());
}

fn all_pairs() -> Vec<(HopfAlgebra<Q>, ModularPair<Q>)> {
    let mut out = Vec::new();
    for name in fixtures::HOPF_NAMES {
        let h = fixtures::hopf_by_name::<Q>(name).unwrap();
        let n = h.dim();
        // δ = ε with every basis vector as candidate σ, and the sign character on kC2.
        for s in 0..n {
            out.push((h.clone(), ModularPair { delta: h.counit_vec().to_vec(), sigma: h.basis(s) }));
        }
        if name == "kC2" {
            out.push((h.clone(), ModularPair { delta: vec![q(1), q(-1)], sigma: h.unit().clone() }));
        }
    }
    out
}

#[test]
fn twisted_antipode_squared_is_conjugation_by_sigma() {
    let mut validated = 0;
    for (h, p) in all_pairs() {
        if !validate_modular_pair(&h, &p).passed() {
            continue;
        }
        validated += 1;
        let sd = twisted_antipode(&h, &p.delta);
        let sigma_inv = h.antipode(&p.sigma);
        let conj = h.left_mul_matrix(&p.sigma).compose(&h.right_mul_matrix(&sigma_inv));
        assert_eq!(sd.compose(&sd), conj, "{} with σ = {:?}", h.name, p.sigma);
        // ^σk_δ is a SAYD module whenever the pair is valid.
        let m = sigma_k_delta(&h, &p).unwrap();
        assert!(validate_sayd(&h, &m).passed(), "{}", h.name);
    }
    // (ε,1) on every algebra, (ε,g) on H4, (ε,g) and (sign,1) on kC2, and the central elements of the groups.
    assert!(validated >= 8, "{validated}");
}

#[test]
fn antipode_is_an_anti_coalgebra_map() {
    for name in fixtures::HOPF_NAMES {
        let h = fixtures::hopf_by_name::<Q>(name).unwrap();
        assert!(validate_hopf(&h).passed(), "{name}");
        let n = h.dim();
        for i in 0..n {
            let lhs = h.comul(&h.antipode(&h.basis(i)));
            let mut rhs = SparseVec::zero(n * n);
            for (k, c) in h.comul_basis(i).iter() {
                let (a, b) = (k / n, k % n);
                rhs = rhs.add_scaled(c, &h.antipode(&h.basis(b)).kron(&h.antipode(&h.basis(a))));
            }
            assert_eq!(lhs, rhs, "{name} at {}", h.label(i));
        }
    }
}

fn categories(h: &HopfAlgebra<Q>) -> Vec<HCategory<Q>> {
    vec![fixtures::d1(h), fixtures::a2(h), fixtures::d3(h)]
}

#[test]
fn linearizations_are_h_categories() {
    for name in ["k", "kC2", "H4"] {
        let h = fixtures::hopf_by_name::<Q>(name).unwrap();
        for d in categories(&h) {
            for r in 1..=3 {
                let rep = validate_hcategory(&h, &linearize(&d, r));
                assert!(rep.passed(), "{name}, r={r}: {rep}");
            }
        }
    }
}

#[test]
fn convolution_categories_are_associative() {
    let h = fixtures::kc2::<Q>();
    let c = HModuleCoalgebra::regular(&h);
    for d in categories(&h) {
        let conv = convolution_category(&h, &c, &d).unwrap();
        let k = fixtures::k::<Q>();
        let rep = validate_hcategory(&k, &conv.category);
        assert!(rep.check("associativity").is_some_and(|c| c.passed() && c.instances > 0), "{rep}");
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn nerves_are_cyclic_and_lambda_is_preserved() {
    let k = fixtures::k::<Q>();
    for d in categories(&k) {
        let c = cyclic_nerve(&d, 4, DEFAULT_MAX_BASIS).unwrap();
        assert!(certify_cyclic(&c).passed());
        assert!(lambda_complex(&c.dual()).is_ok());
    }
    let h = fixtures::kc2::<Q>();
    let x = hopf_cyclic_cochain(&h, &fixtures::d3(&h), &trivial(&h), 4, DEFAULT_MAX_BASIS).unwrap();
    assert!(lambda_complex(&x.restricted).is_ok());
}

#[test]
fn restricted_subspaces_are_coinvariant_on_fixtures() {
    for name in ["kC2", "kC3", "H4"] {
        let h = fixtures::hopf_by_name::<Q>(name).unwrap();
        for d in categories(&h) {
            let m = trivial(&h);
            let x = hopf_cyclic_cochain(&h, &d, &m, 3, DEFAULT_MAX_BASIS).unwrap();
            let rep = certify_coinvariance(&h, &d, &m, &x, 3);
            assert!(rep.passed(), "{name}: {rep}");
        }
    }
}

#[test]
fn trace_space_dimension_is_hc0() {
    let h = fixtures::kc2::<Q>();
    let p = ModularPair::trivial(&h);
    for d in categories(&h) {
        let x = degree_zero_cochains(&h, &d, &p, DEFAULT_MAX_BASIS).unwrap();
        let l = lambda_complex(&x.restricted).unwrap();
        let z = kernel(&l.diffs[0]).dim();
        assert_eq!(trace_space(&h, &d, &p).unwrap().len(), z);
    }
}

#[test]
fn gamma_sends_cyclic_cocycles_to_cyclic_cocycles() {
    let h = fixtures::kc2::<Q>();
    let p = ModularPair::trivial(&h);
    let d = fixtures::d3(&h);
    let cm = cm_complex(&h, &p, 3, DEFAULT_MAX_BASIS).unwrap();
    for t in trace_space(&h, &d, &p).unwrap() {
        let g = char_map_gamma(&h, &d, &p, &t, 3, DEFAULT_MAX_BASIS).unwrap();
        assert!(g.report.passed());
        let mut c = Check::new("γ(c) is a cyclic cocycle");
        for n in 0..3 {
            for z in cyclic_cocycles(&cm, n).unwrap() {
                record_cyclic_cocycle(&mut c, &g.target, n, &g.maps[n].apply(&z));
            }
        }
        assert!(c.passed() && c.instances > 0, "{c:?}");
    }
}

#[test]
fn dg_tensor_in_degree_zero_is_the_tensor_category() {
    let k = fixtures::k::<Q>();
    let (a2, d3) = (fixtures::a2(&k), fixtures::d3(&k));
    let t = dg_tensor(&DgSemicategory::concentrated(&a2, 1), &DgSemicategory::concentrated(&d3, 1), DEFAULT_MAX_BASIS).unwrap();
    let tc = hopf_cyclic::category::tensor_categories(&a2, &d3);
    let d0 = t.degree0();
    assert_eq!(d0.n_obj(), tc.n_obj());
    for x in 0..tc.n_obj() {
        for y in 0..tc.n_obj() {
            for z in 0..tc.n_obj() {
                for g in 0..tc.hom_dim(y, z) {
                    for f in 0..tc.hom_dim(x, y) {
                        assert_eq!(d0.compose_basis(x, y, z, g, f), tc.compose_basis(x, y, z, g, f));
                    }
                }
            }
        }
    }
}
