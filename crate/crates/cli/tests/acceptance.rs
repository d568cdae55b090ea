//! Acceptance criteria. Each prints one PASS/FAIL line; the test fails if any
//! criterion fails. Run with `cargo test --release --test acceptance -- --nocapture`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use hopf_cyclic::builders::{cm_complex, cyclic_nerve, hopf_cyclic_cochain, NerveBasis, DEFAULT_MAX_BASIS};
use hopf_cyclic::category::{
    conjugation_functor, linearize, tensor_categories, validate_hcategory, HCategory, LinearFunctor,
};
use hopf_cyclic::cyclic::{
    certify, certify_para, cohomology_table, cyclic_cocycles, is_coboundary, record_cyclic_cocycle, CocyclicModule,
};
use hopf_cyclic::dg::{cocycle_to_cycle, cycle_character, cyclic_cup};
use hopf_cyclic::fixtures;
use hopf_cyclic::hopf::{validate_hopf, validate_modular_pair, HModuleCoalgebra, ModularPair};
use hopf_cyclic::category::CoalgebraAction;
use hopf_cyclic::linalg::dense::rank_bareiss;
use hopf_cyclic::linalg::{SparseMatrix, SparseVec};
use hopf_cyclic::morita::{homotopy_family, morita_compare};
use hopf_cyclic::report::{Check, ValidationReport};
use hopf_cyclic::sayd::{sigma_k_delta, trivial, validate_sayd};
use hopf_cyclic::traces::{char_map_gamma, cocycle_to_trace, degree_zero_cochains, gamma_m, psi_map, trace_space, trace_to_cocycle};
use hopf_cyclic::vanish::inner_identity_check;
use hopf_cyclic::{Field, Q};

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    title: &'static str,
    tolerance: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn q(a: i64) -> Q {
    Q::from_i64(a)
}

fn need(rep: &ValidationReport) -> Result<usize, String> {
    match rep.first_failure() {
        None => Ok(rep.checks.iter().map(|c| c.instances).sum()),
        Some(c) => Err(format!("{}: {} ({})", rep.subject, c.identity, c.witness.clone().unwrap_or_default())),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget() -> usize {
    DEFAULT_MAX_BASIS
}

fn c1_axioms() -> Outcome {
    let mut identities = 0;
    let mut subjects = 0;
    for name in fixtures::HOPF_NAMES {
        let h = fixtures::hopf_by_name::<Q>(name).unwrap();
        identities += need(&validate_hopf(&h))?;
        // S² is conjugation by g on H4, so (ε,1) is not in involution there.
        let pairs = if name == "H4" { vec![fixtures::sweedler_pair(&h)] } else { vec![ModularPair::trivial(&h)] };
        for p in &pairs {
            identities += need(&validate_modular_pair(&h, p))?;
            let m = sigma_k_delta(&h, p).map_err(|e| e.to_string())?;
            identities += need(&validate_sayd(&h, &m))?;
            subjects += 2;
        }
        let cats = if ["k", "kC2", "H4"].contains(&name) {
            let (d1, d3) = (fixtures::d1(&h), fixtures::d3(&h));
            vec![d1.clone(), fixtures::a2(&h), d3.clone(), linearize(&d1, 2), linearize(&d3, 2)]
        } else {
            vec![fixtures::d1(&h), fixtures::a2(&h)]
        };
        for d in &cats {
            identities += need(&validate_hcategory(&h, d))?;
        }
        subjects += 1 + cats.len();
    }
    Ok(format!("{subjects} structures, {identities} identity instances, 0 failures"))
}

fn c2_cocyclic() -> Outcome {
    let h = fixtures::kc2::<Q>();
    let x = hopf_cyclic_cochain(&h, &fixtures::d3(&h), &trivial(&h), 4, budget()).map_err(|e| e.to_string())?;
    let a = need(&certify(&x.restricted))?;
    let b = need(&certify_para(&x.full))?;
    let tau = x.restricted.checks_tau();
    Ok(format!("restricted dims {:?}, {a} restricted + {b} full instances, τ^(n+1)=id in {tau} degrees", x.restricted.dims()))
}

trait TauCount {
    fn checks_tau(&self) -> usize;
}

impl TauCount for CocyclicModule<Q> {
    /// Independent re-check of `τ^{n+1} = id` degree by degree.
    fn checks_tau(&self) -> usize {
        (0..=self.max_degree()).filter(|&n| self.cyclic[n].power(n + 1) == SparseMatrix::identity(self.dim(n))).count()
    }
}

fn c3_recovery() -> Outcome {
    let k = fixtures::k::<Q>();
    let mut maps = 0;
    for (name, d) in [("D1", fixtures::d1(&k)), ("A2", fixtures::a2(&k))] {
        let x = hopf_cyclic_cochain(&k, &d, &trivial(&k), 4, budget()).map_err(|e| e.to_string())?.restricted;
        let y = cyclic_nerve(&d, 4, budget()).map_err(|e| e.to_string())?.dual();
        ensure(x.dims() == y.dims(), || format!("{name}: dimensions {:?} vs {:?}", x.dims(), y.dims()))?;
        for n in 0..=4 {
            ensure(x.cyclic[n] == y.cyclic[n], || format!("{name}: τ_{n} differs"))?;
            for (i, (a, b)) in x.faces[n].iter().zip(&y.faces[n]).enumerate() {
                ensure(a == b, || format!("{name}: δ_{i} in degree {n} differs"))?;
            }
            maps += 1 + x.faces[n].len();
            if n < 4 {
                for (i, (a, b)) in x.degeneracies[n].iter().zip(&y.degeneracies[n]).enumerate() {
                    ensure(a == b, || format!("{name}: σ_{i} in degree {n} differs"))?;
                }
                maps += x.degeneracies[n].len();
            }
        }
    }
    Ok(format!("{maps} structure maps identical"))
}

fn dense(m: &SparseMatrix<Q>) -> Vec<Vec<Q>> {
    m.to_dense()
}

fn stack(a: &SparseMatrix<Q>, b: &SparseMatrix<Q>) -> Vec<Vec<Q>> {
    let mut out = dense(a);
    out.extend(dense(b));
    out
}

/// Betti numbers from dense fraction-free ranks only:
/// `dim Z^n = c_n − rank[b_n; 1−λ_n]` and `dim B^n = rank[1−λ_{n−1}; b_{n−1}] − rank(1−λ_{n−1})`.
fn oracle_betti(x: &CocyclicModule<Q>) -> Vec<usize> {
    let one_minus = |n: usize| SparseMatrix::identity(x.dim(n)).sub(&x.lambda(n));
    let rk = |rows: Vec<Vec<Q>>, cols: usize| if rows.is_empty() || cols == 0 { 0 } else { rank_bareiss(rows) };
    (0..x.max_degree())
        .map(|n| {
            let z = x.dim(n) - rk(stack(&x.coboundary(n), &one_minus(n)), x.dim(n));
            let b = if n == 0 {
                0
            } else {
                let c = x.dim(n - 1);
                rk(stack(&one_minus(n - 1), &x.coboundary(n - 1)), c) - rk(dense(&one_minus(n - 1)), c)
            };
            z - b
        })
        .collect()
}

fn c4_betti() -> Outcome {
    let k = fixtures::k::<Q>();
    let nerve = cyclic_nerve(&fixtures::d1(&k), 4, budget()).map_err(|e| e.to_string())?.dual();
    let cm = cm_complex(&k, &ModularPair::trivial(&k), 4, budget()).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (name, x) in [("HC(D1)", nerve), ("HC_(ε,1)(k)", cm)] {
        let engine: Vec<usize> = cohomology_table(&x).map_err(|e| e.to_string())?.iter().map(|e| e.betti).collect();
        let oracle = oracle_betti(&x);
        ensure(engine == vec![1, 0, 1, 0], || format!("{name}: engine gives {engine:?}"))?;
        ensure(oracle == engine, || format!("{name}: oracle {oracle:?} vs engine {engine:?}"))?;
        out.push(format!("{name} = {engine:?}"));
    }
    Ok(format!("{}, dense oracle agrees", out.join(", ")))
}

fn c5_traces() -> Outcome {
    let k = fixtures::k::<Q>();
    let kc2 = fixtures::kc2::<Q>();
    let cases = [
        ("D1/k", k.clone(), fixtures::d1(&k)),
        ("A2/k", k.clone(), fixtures::a2(&k)),
        ("D3/k", k.clone(), fixtures::d3(&k)),
        ("D1/kC2", kc2.clone(), fixtures::d1(&kc2)),
        ("A2/kC2", kc2.clone(), fixtures::a2(&kc2)),
        ("D3/kC2", kc2.clone(), fixtures::d3(&kc2)),
    ];
    let mut dims = Vec::new();
    for (name, h, d) in cases {
        let p = ModularPair::trivial(&h);
        let err = |e: hopf_cyclic::Error| format!("{name}: {e}");
        let basis = trace_space(&h, &d, &p).map_err(err)?;
        let x = degree_zero_cochains(&h, &d, &p, budget()).map_err(err)?;
        let hc0 = cohomology_table(&x.restricted).map_err(err)?[0].betti;
        ensure(basis.len() == hc0, || format!("{name}: {} traces vs HC^0 = {hc0}", basis.len()))?;
        for t in &basis {
            let phi = trace_to_cocycle(&x, t).map_err(err)?;
            ensure(cocycle_to_trace(&h, &d, &p, &x, &phi).map_err(err)? == *t, || format!("{name}: trace round trip"))?;
        }
        for z in cyclic_cocycles(&x.restricted, 0).map_err(err)? {
            let t = cocycle_to_trace(&h, &d, &p, &x, &z).map_err(err)?;
            ensure(trace_to_cocycle(&x, &t).map_err(err)? == z, || format!("{name}: cocycle round trip"))?;
        }
        dims.push(format!("{name}:{hc0}"));
    }
    Ok(format!("dim traces = dim HC^0 ({}), both round trips identities", dims.join(" ")))
}

fn c6_gamma() -> Outcome {
    let h = fixtures::kc2::<Q>();
    let p = ModularPair::trivial(&h);
    let mut inst = 0;
    let mut traces = 0;
    for d in [fixtures::d1(&h), fixtures::a2(&h), fixtures::d3(&h)] {
        for t in trace_space(&h, &d, &p).map_err(|e| e.to_string())? {
            let g = char_map_gamma(&h, &d, &p, &t, 3, budget()).map_err(|e| e.to_string())?;
            inst += need(&g.report)?;
            traces += 1;
        }
    }
    Ok(format!("{traces} traces, {inst} face/degeneracy/cyclic identity instances, n ≤ 3"))
}

fn c7_gamma_m_psi() -> Outcome {
    let h = fixtures::kc2::<Q>();
    let m = trivial(&h);
    let c = HModuleCoalgebra::regular(&h);
    let mut inst = 0;
    for d in [fixtures::d1(&h), fixtures::a2(&h), fixtures::d3(&h)] {
        let act = CoalgebraAction::from_h_action(&d);
        let x = hopf_cyclic_cochain(&h, &d, &m, 1, budget()).map_err(|e| e.to_string())?;
        for rep in &cohomology_table(&x.restricted).map_err(|e| e.to_string())?[0].representatives {
            let phi0 = x.subspaces[0].expand(rep);
            let g = gamma_m(&h, &c, &act, &d, &m, &phi0, 2, budget()).map_err(|e| e.to_string())?;
            ensure(g.report.check("γ_M vanishes on ⊗_H relations").is_some(), || "no well-definedness check".into())?;
            inst += need(&g.report)?;
        }
        let (psi, _) = psi_map(&h, &c, &m, &d, 2, budget()).map_err(|e| e.to_string())?;
        inst += need(&psi.report)?;
    }
    Ok(format!("{inst} identity instances for γ_M and Ψ, n ≤ 2"))
}

fn c8_round_trip() -> Outcome {
    let h = fixtures::kc2::<Q>();
    let d = fixtures::d3(&h);
    let m = trivial(&h);
    let x = hopf_cyclic_cochain(&h, &d, &m, 3, budget()).map_err(|e| e.to_string())?;
    let mut count = 0;
    let mut inst = 0;
    for n in 0..=2 {
        let mut cocycles = cyclic_cocycles(&x.restricted, n).map_err(|e| e.to_string())?;
        cocycles.extend(cohomology_table(&x.restricted).map_err(|e| e.to_string())?[n].representatives.clone());
        for phi in cocycles {
            let (cycle, rep) = cocycle_to_cycle(&h, &d, &m, &x, n, &phi, budget()).map_err(|e| e.to_string())?;
            inst += need(&rep)?;
            let ch = cycle_character(&d, m.dim(), &cycle).map_err(|e| e.to_string())?;
            ensure(ch == x.subspaces[n].expand(&phi), || format!("character differs from the cocycle in degree {n}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cocycles (n ≤ 2) round trip bit-exactly, {inst} gt instances"))
}

fn c9_morita() -> Outcome {
    let k = fixtures::k::<Q>();
    let kc2 = fixtures::kc2::<Q>();
    let mut out = Vec::new();
    for (name, h, d) in
        [("D1/k", k.clone(), fixtures::d1(&k)), ("D3/k", k.clone(), fixtures::d3(&k)), ("D3/kC2", kc2.clone(), fixtures::d3(&kc2))]
    {
        let m = trivial(&h);
        let fam = homotopy_family(&h, &d, &m, 2, 3, budget()).map_err(|e| e.to_string())?;
        need(&fam.report)?;
        let mc = morita_compare(&h, &d, &m, 2, 3, budget()).map_err(|e| e.to_string())?;
        need(&mc.report)?;
        ensure(mc.report.check("tr∘inc₁=id").is_some_and(Check::passed), || "tr∘inc₁=id missing".into())?;
        ensure(mc.betti == mc.betti_lin, || format!("{name}: {:?} vs {:?}", mc.betti, mc.betti_lin))?;
        out.push(format!("{name} HC {:?}", mc.betti));
    }
    Ok(format!("homotopy relations, tr∘inc₁=id and equal Betti numbers: {}", out.join(", ")))
}

fn z(c: &HCategory<Q>, n: usize) -> Result<(CocyclicModule<Q>, Vec<SparseVec<Q>>), String> {
    let x = cyclic_nerve(c, n + 1, budget()).map_err(|e| e.to_string())?.dual();
    let zs = cyclic_cocycles(&x, n).map_err(|e| e.to_string())?;
    Ok((x, zs))
}

/// `(φ∪φ')(f⊗f') = φ(f)φ'(f')` on `CN_0(C⊗C')`.
fn pointwise(c: &HCategory<Q>, c2: &HCategory<Q>, a: &SparseVec<Q>, b: &SparseVec<Q>) -> SparseVec<Q> {
    let (n0, n0b) = (NerveBasis::new(c, 0), NerveBasis::new(c2, 0));
    let cc = tensor_categories(c, c2);
    let nb = NerveBasis::new(&cc, 0);
    let n2 = c2.n_obj();
    let entries = nb.iter().map(|(k, objs, mors)| {
        let (x, x2) = (objs[0] / n2, objs[0] % n2);
        let d2 = c2.hom_dim(x2, x2);
        let (f, f2) = (mors[0] / d2, mors[0] % d2);
        let i = n0.index(&[x], &[f]).unwrap();
        let j = n0b.index(&[x2], &[f2]).unwrap();
        (k, a.value(i).mul_ref(&b.value(j)))
    });
    SparseVec::from_entries(nb.dim(), entries.collect::<Vec<_>>())
}

fn c10_cup() -> Outcome {
    let k = fixtures::k::<Q>();
    let cats = [("D1", fixtures::d1(&k)), ("A2", fixtures::a2(&k)), ("M2", linearize(&fixtures::d1(&k), 2))];
    let mut cert = Check::new("φ∪φ' is a cyclic cocycle");
    let mut pairs = 0;
    for (p, qq) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        for (na, a) in &cats {
            for (nb, b) in &cats {
                // Keep the tensor product small: M2 pairs only with D1.
                if na == &"M2" && nb != &"D1" || nb == &"M2" && na != &"D1" {
                    continue;
                }
                let (_, za) = z(a, p)?;
                let (_, zb) = z(b, qq)?;
                let target = cyclic_nerve(&tensor_categories(a, b), p + qq + 1, budget()).map_err(|e| e.to_string())?.dual();
                for u in &za {
                    for v in &zb {
                        let (cup, rep) = cyclic_cup(a, u, p, b, v, qq, budget()).map_err(|e| e.to_string())?;
                        need(&rep)?;
                        record_cyclic_cocycle(&mut cert, &target, p + qq, &cup);
                        if (p, qq) == (0, 0) {
                            ensure(cup == pointwise(a, b, u, v), || format!("{na}⊗{nb}: not the pointwise product"))?;
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    ensure(cert.passed(), || format!("{}: {}", cert.identity, cert.witness.clone().unwrap_or_default()))?;
    // Cupping with the point trace is the identity on classes.
    let point = SparseVec::unit(1, 0);
    let d1 = fixtures::d1(&k);
    let mut classes = 0;
    for (na, a) in &cats {
        for p in 0..=2 {
            let (x, za) = z(a, p)?;
            for u in &za {
                let (cup, rep) = cyclic_cup(a, u, p, &d1, &point, 0, budget()).map_err(|e| e.to_string())?;
                need(&rep)?;
                let diff = cup.sub(u);
                let cob = is_coboundary(&x, p, &diff).map_err(|e| e.to_string())?;
                ensure(cob.is_some(), || format!("{na}, degree {p}: φ∪1 − φ is not a coboundary"))?;
                classes += 1;
            }
        }
    }
    Ok(format!("{pairs} cups certified cyclic cocycles, (0,0) pointwise, {classes} point-trace cups cohomologous to φ"))
}

fn c11_inner() -> Outcome {
    let k = fixtures::k::<Q>();
    let l = linearize(&fixtures::d1(&k), 2);
    let mut inst = 0;
    // η = [[a, b], [c, d]] with ad − bc ≠ 0; matrix unit E_ij has index 2i + j.
    for [a, b, c, d] in [[1, 1, 0, 1], [2, 0, 0, 1], [1, 2, 3, 4], [0, 1, 1, 0], [1, 0, 0, 1]] {
        let det = Q::from_i64(a * d - b * c);
        let eta = SparseVec::from_dense(&[q(a), q(b), q(c), q(d)]);
        let inv = SparseVec::from_dense(&[q(d), q(-b), q(-c), q(a)]).scale(&det.inv());
        let phi = conjugation_functor(&l, &[eta], &[inv]);
        let rep = inner_identity_check(&k, &l, &trivial(&k), &phi, 3, budget()).map_err(|e| e.to_string())?;
        ensure(rep.check("φ∘Φ−φ is a coboundary").is_some_and(|c| c.instances > 0), || "no classes checked".into())?;
        inst += need(&rep)?;
    }
    ensure(inner_identity_check(&k, &l, &trivial(&k), &LinearFunctor::identity(&l), 3, budget()).is_ok(), || "identity".into())?;
    Ok(format!("5 conjugations on linearize(D1,2), {inst} coboundary certificates in degrees ≤ 2"))
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn c12_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hcyc");
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let commands: &[&[&str]] = &[
        &["validate"],
        &["cohomology", "--complex", "nerve", "--max-degree", "3"],
        &["cohomology", "--complex", "hopf-cat", "--max-degree", "3"],
        &["traces"],
        &["omega", "--max-degree", "2"],
        &["vanish", "--max-degree", "2"],
        &["morita", "--r", "2", "--max-degree", "2"],
    ];
    let mut runs = 0;
    for f in &files {
        for cmd in commands {
            let go = |format: &str| {
                let out = Command::new(bin)
                    .arg(cmd[0])
                    .arg(f)
                    .args(&cmd[1..])
                    .args(["--format", format])
                    .output()
                    .expect("hcyc runs");
                (out.status.code(), out.stdout)
            };
            for format in ["json", "table"] {
                let (c1, a) = go(format);
                let (c2, b) = go(format);
                ensure(c1 == c2 && a == b, || format!("{} {} differs between runs", cmd.join(" "), f.display()))?;
                ensure(c1.is_some_and(|c| c <= 2), || format!("{} {} crashed", cmd.join(" "), f.display()))?;
                if format == "json" && c1 != Some(2) {
                    let v: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
                    ensure(numbers_are_exact(&v), || format!("{} {}: non-string number", cmd.join(" "), f.display()))?;
                }
                runs += 2;
            }
        }
    }
    Ok(format!("{runs} runs over {} fixtures, byte-identical in pairs", files.len()))
}

/// Every JSON number must be a count (an integer); scalars travel as strings.
fn numbers_are_exact(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_u64(),
        serde_json::Value::Array(a) => a.iter().all(numbers_are_exact),
        serde_json::Value::Object(o) => o.values().all(numbers_are_exact),
        _ => true,
    }
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { id: 1, title: "axiom certification on all fixtures", tolerance: "exact, 0 failures", limit: Some(Duration::from_secs(10)), run: c1_axioms },
        Criterion { id: 2, title: "cocyclic certification (kC2, D3, k) up to N=4", tolerance: "exact", limit: Some(Duration::from_secs(60)), run: c2_cocyclic },
        Criterion { id: 3, title: "H=k=M recovers the dual cyclic nerve", tolerance: "bit-exact", limit: None, run: c3_recovery },
        Criterion { id: 4, title: "sanity Betti numbers with dense oracle", tolerance: "exact", limit: Some(Duration::from_secs(10)), run: c4_betti },
        Criterion { id: 5, title: "traces versus HC^0", tolerance: "exact", limit: None, run: c5_traces },
        Criterion { id: 6, title: "γ satisfies the Λ-identities", tolerance: "exact", limit: None, run: c6_gamma },
        Criterion { id: 7, title: "γ_M well defined, γ_M and Ψ commute with structure maps", tolerance: "exact", limit: None, run: c7_gamma_m_psi },
        Criterion { id: 8, title: "cocycle → closed graded trace → character", tolerance: "bit-exact", limit: Some(Duration::from_secs(120)), run: c8_round_trip },
        Criterion { id: 9, title: "matrix homotopy and Betti comparison, r=2", tolerance: "exact", limit: None, run: c9_morita },
        Criterion { id: 10, title: "cup products", tolerance: "exact", limit: Some(Duration::from_secs(120)), run: c10_cup },
        Criterion { id: 11, title: "inner automorphisms act trivially", tolerance: "exact", limit: None, run: c11_inner },
        Criterion { id: 12, title: "CLI determinism", tolerance: "byte-identical", limit: None, run: c12_determinism },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS [{}] {} ({}; {took:.2?}{limit}): {detail}", c.id, c.title, c.tolerance),
            Err(why) => {
                println!("FAIL [{}] {} ({}; {took:.2?}{limit}): {why}", c.id, c.title, c.tolerance);
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
