//! The five subcommands. Each returns a report whose status encodes the
//! outcome of its checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use modsuper::error::{Error, Result};
use modsuper::exactlin::{Field, Fq};
use modsuper::grading::{build_m, centralizer_dims_by_partition, grading_from_element, verify_grading};
use modsuper::pbw::{baby_verma, eta_character, lambda_set, ModuleRep, Triangular};
use modsuper::reduction::{jordan_decomp_chi, levi_parabolic, morita_desk_check};
use modsuper::repkit::{composition_factors, freeness_check, kw_audit, pim_dim_sum, pim_dims_by_reciprocity, reduced_dim_of, simple_subquotients, Catalog, CompSeries};
use modsuper::superlie::{check_restricted, element_from_chi, root_decomposition, super_kw_divisor, Elem, Family, LieSuperAlgebra, PChar};

use crate::config::{ChiSpec, RunConfig};
use crate::output::{Report, Status};
use crate::setup;

/// Restricted-structure samples drawn by `algebra`.
const RESTRICTED_SAMPLES: usize = 24;

pub fn fq_json(f: &Field, x: Fq) -> Value {
    match f.to_prime(x) {
        Some(n) => json!(n),
        None => json!(f.coeffs(x)),
    }
}

pub fn weight_json(f: &Field, w: &[Fq]) -> Value {
    Value::Array(w.iter().map(|&x| fq_json(f, x)).collect())
}

fn dims_of(g: &LieSuperAlgebra, basis: &[Elem]) -> [usize; 2] {
    let odd = basis.iter().filter(|b| g.elem_parity(b) == Some(1)).count();
    [basis.len() - odd, odd]
}

fn report(command: &str, cfg: &RunConfig, result: Value, status: Status) -> Report {
    Report { command: command.into(), config: cfg.to_json(), result, status }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn cmd_algebra(cfg: &RunConfig) -> Result<Report> {
    let f = setup::field(cfg)?;
    let g = setup::algebra(cfg, &f)?;
    let structure = g.check_structure();
    let restricted = check_restricted(&g, RESTRICTED_SAMPLES, &mut ChaCha8Rng::seed_from_u64(cfg.seed));
    let form_nondegenerate = g.form_nondegenerate();
    let degenerate_allowed = g.family == Family::Sl && g.shape.0 == g.shape.1;
    let rd = root_decomposition(&g, &g.cartan)?;
    let mut roots: Vec<Value> = rd
        .roots
        .iter()
        .map(|r| json!({ "coords": r.coords, "parity": r.parity, "multiplicity": r.basis.len() }))
        .collect();
    roots.sort_by_key(|v| v.to_string());
    let ok = structure.is_ok() && restricted.passed() && (form_nondegenerate || degenerate_allowed);
    let result = json!({
        "family": g.family.to_string(),
        "shape": [g.shape.0, g.shape.1],
        "dim": [g.dim_even(), g.dim_odd()],
        "labels": g.labels,
        "structure": match &structure { Ok(()) => Value::Null, Err(e) => json!(e.to_string()) },
        "restricted": to_value(&restricted),
        "form_nondegenerate": form_nondegenerate,
        "roots": {
            "cartan_dim": rd.cartan_dim,
            "even": rd.even_roots(),
            "odd": rd.odd_roots(),
            "zero_weight": [rd.zero_even.len(), rd.zero_odd.len()],
            "list": roots,
        },
    });
    Ok(report("algebra", cfg, result, Status::from_checks(ok)))
}

/// The element behind a nilpotent χ.
fn nilpotent_element(g: &LieSuperAlgebra, chi: &PChar, given: Option<Elem>) -> Result<Elem> {
    let x = match given {
        Some(x) => x,
        None => element_from_chi(g, chi)?,
    };
    let m = g.element_matrix(&x).ok_or_else(|| Error::Usage("algebra has no matrix model".into()))?;
    if !m.pow(m.rows() as u64).is_zero() {
        return Err(Error::Usage("this command needs a nilpotent χ".into()));
    }
    Ok(x)
}

pub fn cmd_grading(cfg: &RunConfig) -> Result<Report> {
    let f = setup::field(cfg)?;
    let g = setup::algebra(cfg, &f)?;
    let tri = setup::triangular(&g)?;
    let (chi, given) = setup::chi(&g, &tri, &cfg.chi)?;
    let x = nilpotent_element(&g, &chi, given)?;
    let gr = grading_from_element(&g, &x, &mut ChaCha8Rng::seed_from_u64(cfg.seed))?;
    let rep = verify_grading(&g, &x, &gr);
    let pair = build_m(&g, &gr, &chi)?;
    let kernel = [rep.centralizer_dims.0, rep.centralizer_dims.1];
    let graded = [rep.degree_zero_one_dims.0, rep.degree_zero_one_dims.1];
    let partition = match &cfg.chi {
        ChiSpec::Partitions(a, b) => {
            let (e, o) = centralizer_dims_by_partition(a, b);
            Some([e, o])
        }
        _ => None,
    };
    let routes_agree = kernel == graded && partition.map_or(true, |p| p == kernel);
    let divisor = if g.form_nondegenerate() { Some(super_kw_divisor(&g, &chi)?) } else { None };
    let result = json!({
        "degrees": to_value(&gr.table()),
        "properties": to_value(&rep),
        "centralizer": { "kernel": kernel, "graded": graded, "partition": partition, "agree": routes_agree },
        "m": pair.dims(&g, false),
        "m_prime": pair.dims(&g, true),
        "g_minus1_odd": pair.r_odd,
        "dim_u_m_prime": pair.reduced_dim_prime(&g).to_string(),
        "kw_divisor": divisor.map(|d| d.to_string()),
    });
    Ok(report("grading", cfg, result, Status::from_checks(rep.passed() && routes_agree)))
}

/// Whether χ is nilpotent, i.e. its semisimple part vanishes.
fn chi_is_nilpotent(g: &LieSuperAlgebra, chi: &PChar, spec: &ChiSpec) -> Result<bool> {
    match spec {
        ChiSpec::Zero | ChiSpec::NilRegular | ChiSpec::Partitions(..) => Ok(true),
        ChiSpec::SsRegular => Ok(false),
        ChiSpec::Explicit(_) if chi.is_zero() => Ok(true),
        ChiSpec::Explicit(_) if g.form_nondegenerate() => Ok(jordan_decomp_chi(g, chi)?.chi_s.is_zero()),
        ChiSpec::Explicit(_) => Ok(false),
    }
}

/// Composition series of every baby Verma module over one catalog.
pub struct VermaFamily {
    pub weights: Vec<Vec<Fq>>,
    pub modules: Vec<ModuleRep>,
    pub catalog: Catalog,
    pub series: Vec<CompSeries>,
}

pub fn verma_family(g: &LieSuperAlgebra, chi: &PChar, tri: &Triangular, seed: u64, dim_bound: usize) -> Result<VermaFamily> {
    let weights = lambda_set(g, chi, &tri.cartan, dim_bound)?.points;
    let mut catalog = Catalog::new(&g.parity);
    let mut modules = Vec::new();
    let mut series = Vec::new();
    for lam in &weights {
        let z = baby_verma(g, chi, tri, lam, dim_bound)?;
        series.push(composition_factors(&z.module, &mut catalog, seed)?);
        modules.push(z.module);
    }
    Ok(VermaFamily { weights, modules, catalog, series })
}

pub fn cmd_kw(cfg: &RunConfig) -> Result<Report> {
    let f = setup::field(cfg)?;
    let g = setup::algebra(cfg, &f)?;
    let tri = setup::triangular(&g)?;
    let (chi, given) = setup::chi(&g, &tri, &cfg.chi)?;
    let divisor = super_kw_divisor(&g, &chi)?;
    let nilpotent = chi_is_nilpotent(&g, &chi, &cfg.chi)?;
    // m is built from the element X with (X, ·) = χ, which needs a nondegenerate form.
    let m_data = if nilpotent && g.form_nondegenerate() {
        let x = nilpotent_element(&g, &chi, given)?;
        let gr = grading_from_element(&g, &x, &mut ChaCha8Rng::seed_from_u64(cfg.seed))?;
        let m = build_m(&g, &gr, &chi)?.m_basis;
        let eta = eta_character(&g, &chi, &m)?;
        Some((m, eta))
    } else {
        None
    };
    let weights = lambda_set(&g, &chi, &tri.cartan, cfg.dim_bound)?.points;
    let mut vermas = Vec::new();
    let mut pieces: Vec<(usize, ModuleRep)> = Vec::new();
    for (i, lam) in weights.iter().enumerate() {
        let z = baby_verma(&g, &chi, &tri, lam, cfg.dim_bound)?;
        let subs = simple_subquotients(&z.module, cfg.seed)?;
        let mut dims: Vec<usize> = subs.iter().map(|s| s.dim).collect();
        dims.sort();
        vermas.push(json!({ "lambda": weight_json(&f, lam), "dim": z.module.dim, "simple": subs.len() == 1, "factor_dims": dims }));
        pieces.extend(subs.into_iter().map(|s| (i, s)));
    }
    // Classes up to isomorphism, when the intertwiner systems are small enough.
    let mut catalog = Catalog::new(&g.parity);
    let mut series: Vec<Vec<(usize, usize)>> = vec![Vec::new(); weights.len()];
    let mut classified = true;
    for (i, s) in &pieces {
        match catalog.classify(s) {
            Ok(c) => match series[*i].iter_mut().find(|x| x.0 == c) {
                Some(x) => x.1 += 1,
                None => series[*i].push((c, 1)),
            },
            Err(Error::Unsupported(_)) => {
                classified = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut audited: Vec<(String, usize)> = Vec::new();
    let mut simples = Vec::new();
    let mut pim_identity = Value::Null;
    let mut freeness = Vec::new();
    let representatives: Vec<&ModuleRep> = if classified { catalog.classes.iter().map(|c| &c.module).collect() } else { pieces.iter().map(|p| &p.1).collect() };
    if classified {
        let vf: Vec<(usize, CompSeries)> = series
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut factors = s.clone();
                factors.sort();
                (pieces.iter().filter(|p| p.0 == i).map(|p| p.1.dim).sum(), CompSeries { factors })
            })
            .collect();
        let pims = pim_dims_by_reciprocity(&vf, &catalog);
        let dim_u = reduced_dim_of(&g, &(0..g.dim()).map(|i| g.basis_elem(i)).collect::<Vec<_>>());
        pim_identity = json!(pim_dim_sum(&catalog, &pims) as u128 == dim_u);
        for (c, cl) in catalog.classes.iter().enumerate() {
            audited.push((format!("L{c}"), cl.module.dim));
            audited.push((format!("P{c}"), pims[c]));
            simples.push(json!({ "class": c, "dim": [cl.module.dim_even(), cl.module.dim_odd()], "type": to_value(&cl.endo.schur), "pim_dim": pims[c] }));
        }
    } else {
        for (i, s) in pieces.iter().enumerate() {
            audited.push((format!("S{i}"), s.1.dim));
        }
    }
    if let Some((m, eta)) = &m_data {
        for s in &representatives {
            freeness.push(to_value(&freeness_check(&g, s, m, eta)));
        }
    }
    let kw = kw_audit(divisor, &audited);
    let freeness_ok = freeness.iter().all(|r| r["holds"] == json!(true));
    let ok = kw.violations == 0 && freeness_ok && pim_identity != json!(false);
    let result = json!({
        "divisor": divisor.to_string(),
        "nilpotent": nilpotent,
        "m_dim": m_data.as_ref().map(|(m, _)| dims_of(&g, m)),
        "freeness_checked": m_data.is_some(),
        "baby_vermas": vermas,
        "classified": classified,
        "simples": simples,
        "pim_identity": pim_identity,
        "kw": { "violations": kw.violations, "checked": kw.entries.len() },
        "freeness": freeness,
    });
    Ok(report("kw", cfg, result, Status::from_checks(ok)))
}

pub fn cmd_morita(cfg: &RunConfig) -> Result<Report> {
    let f = setup::field(cfg)?;
    let g = setup::algebra(cfg, &f)?;
    let tri = setup::triangular(&g)?;
    let (chi, _) = setup::chi(&g, &tri, &cfg.chi)?;
    let j = jordan_decomp_chi(&g, &chi)?;
    let levi = levi_parabolic(&g, &j.chi_s)?;
    let r = morita_desk_check(&g, &chi, &levi, cfg.seed, cfg.dim_bound)?;
    let result = json!({
        "chi_s_zero": j.chi_s.is_zero(),
        "chi_n_zero": j.chi_n.is_zero(),
        "levi": to_value(&levi),
        "report": to_value(&r),
    });
    Ok(report("morita", cfg, result, Status::from_checks(r.holds)))
}

pub use crate::osp12::cmd_osp12;
