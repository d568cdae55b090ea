use hopf_cyclic::builders::{
    certify_coinvariance, cm_complex, coalgebra_cochain, cyclic_nerve, diagonal_complex, hopf_cyclic_cochain,
};
use hopf_cyclic::category::{validate_coalgebra_action, validate_functor, validate_hcategory, HCategory};
use hopf_cyclic::cyclic::{certify, cohomology, cohomology_table, cyclic_cocycles, record_cyclic_cocycle, CocyclicModule};
use hopf_cyclic::dg::{cyclic_cup, omega, validate_dg};
use hopf_cyclic::hopf::{validate_hopf, validate_modular_pair, validate_module_coalgebra};
use hopf_cyclic::io::Scenario;
use hopf_cyclic::morita::morita_compare;
use hopf_cyclic::report::{Check, ValidationReport};
use hopf_cyclic::sayd::{unchecked_sigma_k_delta, validate_sayd, SaydModule};
use hopf_cyclic::traces::{
    char_map_gamma, cocycle_to_trace, degree_zero_cochains, gamma_m, psi_map, trace_space, trace_to_cocycle,
    validate_trace,
};
use hopf_cyclic::vanish::{inner_identity_check, vanishing_criterion_check};
use hopf_cyclic::{Error, Field, Result, Q};

use crate::output::{join, render_vec, Output, Table};
use crate::{CharKind, Coefficients, ComplexKind};

type Sc = Scenario<Q>;

pub fn validate(sc: &Sc, out: &mut Output) {
    let h = &sc.hopf;
    out.reports.push(validate_hopf(h));
    out.reports.push(validate_modular_pair(h, &sc.pair));
    out.reports.push(validate_sayd(h, &sc.sayd));
    if let Some(d) = &sc.category {
        out.reports.push(validate_hcategory(h, d));
    }
    if let Some(c) = &sc.coalgebra {
        out.reports.push(validate_module_coalgebra(h, c));
        if let (Some(d), Some(a)) = (&sc.category, &sc.coalgebra_action) {
            out.reports.push(validate_coalgebra_action(h, c, d, a));
        }
    }
    for (name, f) in &sc.functors {
        match sc.functor_domain(f) {
            Ok(dom) => {
                let mut r = validate_functor(&dom, &dom, &f.functor);
                r.subject = format!("functor {name}");
                out.reports.push(r);
            }
            Err(e) => {
                out.failed = true;
                out.notes.push(format!("functor {name}: {e}"));
            }
        }
    }
}

fn coefficients(sc: &Sc, c: Coefficients) -> SaydModule<Q> {
    match c {
        Coefficients::Pair => unchecked_sigma_k_delta(&sc.hopf, &sc.pair),
        Coefficients::Sayd => sc.sayd.clone(),
    }
}

fn coalgebra(sc: &Sc) -> Result<&hopf_cyclic::hopf::HModuleCoalgebra<Q>> {
    sc.coalgebra.as_ref().ok_or_else(|| Error::Parse("scenario has no \"coalgebra\" section".into()))
}

fn betti_table(title: &str, x: &CocyclicModule<Q>) -> Result<(Table, Vec<usize>)> {
    let mut t = Table::new(title, &["n", "dim C^n", "dim HC^n", "representatives"]);
    let mut betti = Vec::new();
    for e in cohomology_table(x)? {
        let labels = &x.spaces[e.degree].labels;
        let reps: Vec<String> = e.representatives.iter().map(|v| render_vec(v, labels)).collect();
        t.row(vec![e.degree.to_string(), x.dim(e.degree).to_string(), e.betti.to_string(), reps.join(" ; ")]);
        betti.push(e.betti);
    }
    Ok((t, betti))
}

pub fn cohomology_cmd(sc: &Sc, kind: ComplexKind, n: usize, coeff: Coefficients, budget: usize, out: &mut Output) -> Result<()> {
    if n == 0 {
        return Err(Error::Parse("--max-degree must be at least 1".into()));
    }
    let h = &sc.hopf;
    let m = coefficients(sc, coeff);
    let x = match kind {
        ComplexKind::Cm => cm_complex(h, &sc.pair, n, budget)?,
        ComplexKind::Nerve => cyclic_nerve(sc.category()?, n, budget)?.dual(),
        ComplexKind::HopfCat => {
            let x = hopf_cyclic_cochain(h, sc.category()?, &m, n, budget)?;
            out.reports.push(certify_coinvariance(h, sc.category()?, &m, &x, n));
            x.restricted
        }
        ComplexKind::Coalgebra => coalgebra_cochain(h, coalgebra(sc)?, &m, n, budget)?.module,
        ComplexKind::Diagonal => diagonal_complex(h, coalgebra(sc)?, &m, sc.category()?, n, budget)?,
    };
    out.reports.push(certify(&x));
    let (t, betti) = betti_table("cyclic cohomology", &x)?;
    out.tables.push(t);
    out.notes.push(format!("betti {}", join(&betti)));
    Ok(())
}

pub fn traces(sc: &Sc, budget: usize, out: &mut Output) -> Result<()> {
    let (h, d) = (&sc.hopf, sc.category()?);
    let basis = trace_space(h, d, &sc.pair)?;
    let x = degree_zero_cochains(h, d, &sc.pair, budget)?;
    let hc0 = cohomology(&x.restricted, 0)?.betti;
    let mut t = Table::new("σ-twisted traces", &["trace", "object", "values", "cocycle"]);
    let mut rt = Check::new("trace → cocycle → trace = id");
    let mut dim = Check::new("dim traces = dim HC^0");
    dim.record(basis.len() == hc0, || format!("{} traces, HC^0 has dimension {hc0}", basis.len()));
    for (i, tr) in basis.iter().enumerate() {
        let mut r = validate_trace(h, d, &sc.pair, tr);
        r.subject = format!("trace {i}");
        out.reports.push(r);
        let phi = trace_to_cocycle(&x, tr)?;
        let back = cocycle_to_trace(h, d, &sc.pair, &x, &phi)?;
        rt.record(back == *tr, || format!("trace {i}"));
        let cocycle = render_vec(&phi, &x.restricted.spaces[0].labels);
        for (o, vals) in tr.values.iter().enumerate() {
            let labels: Vec<String> =
                vals.iter().enumerate().map(|(f, c)| format!("{}·{}", c.to_exact_string(), d.hom_label(o, o, f))).collect();
            let cell = if o == 0 { cocycle.clone() } else { String::new() };
            t.row(vec![i.to_string(), d.objects[o].clone(), labels.join(" + "), cell]);
        }
    }
    let mut rep = ValidationReport::new("traces and degree-zero cocycles");
    rep.push(dim);
    rep.push(rt);
    out.reports.push(rep);
    out.tables.push(t);
    out.notes.push(format!("{} basis traces", basis.len()));
    Ok(())
}

fn charmap_table(title: &str, maps: &[hopf_cyclic::linalg::SparseMatrix<Q>]) -> Table {
    let mut t = Table::new(title, &["n", "source dim", "target dim", "nonzeros"]);
    for (n, m) in maps.iter().enumerate() {
        t.row(vec![n.to_string(), m.ncols().to_string(), m.nrows().to_string(), m.nnz().to_string()]);
    }
    t
}

pub fn charmap(sc: &Sc, kind: CharKind, n: usize, budget: usize, out: &mut Output) -> Result<()> {
    let (h, d) = (&sc.hopf, sc.category()?);
    match kind {
        CharKind::Gamma => {
            for (i, tr) in trace_space(h, d, &sc.pair)?.iter().enumerate() {
                let cm = char_map_gamma(h, d, &sc.pair, tr, n, budget)?;
                out.tables.push(charmap_table(&format!("γ for trace {i}"), &cm.maps));
                out.reports.push(cm.report);
            }
        }
        CharKind::GammaM => {
            let c = coalgebra(sc)?;
            let act = sc
                .coalgebra_action
                .as_ref()
                .ok_or_else(|| Error::Parse("scenario has no \"coalgebra_action\" section".into()))?;
            let x = hopf_cyclic_cochain(h, d, &sc.sayd, 1, budget)?;
            for (i, rep) in cohomology(&x.restricted, 0)?.representatives.iter().enumerate() {
                let phi0 = x.subspaces[0].expand(rep);
                let cm = gamma_m(h, c, act, d, &sc.sayd, &phi0, n, budget)?;
                out.tables.push(charmap_table(&format!("γ_M for degree-zero class {i}"), &cm.maps));
                out.reports.push(cm.report);
            }
        }
        CharKind::Psi => {
            let (cm, _) = psi_map(h, coalgebra(sc)?, &sc.sayd, d, n, budget)?;
            out.tables.push(charmap_table("Ψ", &cm.maps));
            out.reports.push(cm.report);
        }
    }
    Ok(())
}

pub fn cup(sc: &Sc, p: usize, q: usize, budget: usize, out: &mut Output) -> Result<()> {
    let c = sc.category()?;
    if sc.hopf.dim() != 1 {
        return Err(Error::Precondition("cup needs H = k".into()));
    }
    let zp = cyclic_cocycles(&cyclic_nerve(c, p + 1, budget)?.dual(), p)?;
    let zq = cyclic_cocycles(&cyclic_nerve(c, q + 1, budget)?.dual(), q)?;
    let cc = hopf_cyclic::category::tensor_categories(c, c);
    let target = cyclic_nerve(&cc, p + q + 1, budget)?.dual();
    let mut t = Table::new(format!("cup products Z^{p} × Z^{q} → Z^{}", p + q), &["i", "j", "cup"]);
    let mut cert = Check::at_degree("φ∪φ' is a cyclic cocycle", p + q);
    for (i, a) in zp.iter().enumerate() {
        for (j, b) in zq.iter().enumerate() {
            let (v, mut rep) = cyclic_cup(c, a, p, c, b, q, budget)?;
            record_cyclic_cocycle(&mut cert, &target, p + q, &v);
            rep.subject = format!("cup trace ({i},{j})");
            out.reports.push(rep);
            t.row(vec![i.to_string(), j.to_string(), render_vec(&v, &target.spaces[p + q].labels)]);
        }
    }
    let mut rep = ValidationReport::new("cup product");
    rep.push(cert);
    out.reports.push(rep);
    out.tables.push(t);
    out.notes.push(format!("{} × {} cyclic cocycles", zp.len(), zq.len()));
    Ok(())
}

pub fn morita(sc: &Sc, r: usize, n: usize, budget: usize, out: &mut Output) -> Result<()> {
    let mc = morita_compare(&sc.hopf, sc.category()?, &sc.sayd, r, n, budget)?;
    let mut t = Table::new(format!("D versus D⊗M_{r}"), &["n", "HC^n(D)", "HC^n(D⊗M_r)", "HH^n(D)", "HH^n(D⊗M_r)"]);
    for k in 0..mc.betti.len() {
        t.row(vec![
            k.to_string(),
            mc.betti[k].to_string(),
            mc.betti_lin[k].to_string(),
            mc.hochschild[k].to_string(),
            mc.hochschild_lin[k].to_string(),
        ]);
    }
    out.tables.push(t);
    out.reports.push(mc.report);
    Ok(())
}

pub fn omega_cmd(sc: &Sc, n: usize, budget: usize, out: &mut Output) -> Result<()> {
    let d = sc.category()?;
    let om = omega(&sc.hopf, d, n, budget)?;
    let k = d.n_obj();
    let mut t = Table::new("dim Ω^n(X,Y)", &["n", "X", "Y", "dim"]);
    for deg in 0..=n {
        for x in 0..k {
            for y in 0..k {
                t.row(vec![deg.to_string(), d.objects[x].clone(), d.objects[y].clone(), om.dg.hom_dim(deg, x, y).to_string()]);
            }
        }
    }
    out.tables.push(t);
    out.reports.push(validate_dg(Some(&sc.hopf), &om.dg));
    Ok(())
}

fn eta_cells(d: &HCategory<Q>, eta: &[hopf_cyclic::linalg::SparseVec<Q>]) -> String {
    eta.iter()
        .enumerate()
        .map(|(x, v)| format!("η({}) = {}", d.objects[x], render_vec(v, &d.hom(x, x).labels)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn vanish(sc: &Sc, n: usize, budget: usize, out: &mut Output) -> Result<()> {
    let d = sc.category()?;
    let mut t = Table::new("inner automorphisms", &["functor", "on", "inner", "η"]);
    for (name, f) in &sc.functors {
        if name == "upsilon" {
            continue;
        }
        let dom = sc.functor_domain(f)?;
        let on = f.linearize.map(|r| format!("D⊗M_{r}")).unwrap_or_else(|| "D".into());
        let search = hopf_cyclic::category::inner_automorphism_solve(&dom, &f.functor)?;
        let eta = search.eta.as_deref().map(|e| eta_cells(&dom, e)).unwrap_or_default();
        t.row(vec![name.clone(), on, search.status().into(), eta]);
        if search.found() {
            let mut rep = inner_identity_check(&sc.hopf, &dom, &sc.sayd, &f.functor, n, budget)?;
            rep.subject = format!("{name}: {}", rep.subject);
            out.reports.push(rep);
        } else {
            out.failed = true;
            out.notes.push(format!("{name} is not certified inner"));
        }
    }
    out.tables.push(t);
    if let (Some(u), Some(phi)) = (sc.functors.get("upsilon"), sc.functors.get("Phi")) {
        if u.linearize.is_some() || phi.linearize != Some(2) {
            return Err(Error::Parse("upsilon must act on D and Phi on D⊗M_2".into()));
        }
        let v = vanishing_criterion_check(&sc.hopf, d, &sc.sayd, &u.functor, &phi.functor, n, budget)?;
        out.notes.push(format!("υ(id)=id: {}", v.upsilon_unital));
        if let Some(b) = &v.betti {
            out.notes.push(format!("betti {}", join(b)));
        } else {
            out.notes.push("criterion not applicable: a hypothesis fails".into());
        }
        out.reports.push(v.report);
    }
    Ok(())
}
