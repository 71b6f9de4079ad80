use modsuper::exactlin::{FieldCtx, Fq, Matrix};
use modsuper::pbw::{baby_verma, eta_character, lambda_set, Triangular};
use modsuper::repkit::{analyze_regular, composition_factors, endo_superalgebra, freeness_check, hom_space, kw_audit, simple_subquotients, Catalog, SchurType};
use modsuper::grading::{build_m, grading_from_element};
use modsuper::superlie::{element_from_chi, gl, osp12, super_kw_divisor, LieSuperAlgebra, PChar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// m from the grading of the element of a nilpotent χ.
fn m_of(g: &LieSuperAlgebra, chi: &PChar) -> Vec<Vec<Fq>> {
    let x = element_from_chi(g, chi).unwrap();
    let gr = grading_from_element(g, &x, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    build_m(g, &gr, chi).unwrap().m_basis
}

/// (name, algebra, nilpotent χ)
fn targets() -> Vec<(String, LieSuperAlgebra, PChar)> {
    let mut out = Vec::new();
    for p in [3u32, 5] {
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        out.push((format!("osp(1|2) nilpotent p={p}"), g.clone(), PChar::on_label(&g, "f", Fq::ONE).unwrap()));
        out.push((format!("osp(1|2) restricted p={p}"), g.clone(), PChar::zero(&g)));
    }
    let f = FieldCtx::new(3, 1).unwrap();
    let g = gl(&f, 1, 1).unwrap();
    out.push(("gl(1|1) restricted p=3".into(), g.clone(), PChar::zero(&g)));
    let g = gl(&f, 2, 1).unwrap();
    out.push(("gl(2|1) restricted p=3".into(), g.clone(), PChar::zero(&g)));
    out.push(("gl(2|1) nilpotent p=3".into(), g.clone(), PChar::on_label(&g, "E2,1", Fq::ONE).unwrap()));
    out
}

fn simples(g: &LieSuperAlgebra, chi: &PChar, seed: u64) -> Vec<(Vec<Fq>, Catalog, Vec<modsuper::repkit::CompSeries>)> {
    let tri = Triangular::standard(g).unwrap();
    let mut cat = Catalog::new(&g.parity);
    let mut out = Vec::new();
    let mut series = Vec::new();
    let pts = lambda_set(g, chi, &tri.cartan, 600).unwrap().points;
    for lam in &pts {
        let z = baby_verma(g, chi, &tri, lam, 600).unwrap();
        series.push(composition_factors(&z.module, &mut cat, seed).unwrap());
    }
    out.push((pts.concat(), cat, series));
    out
}

#[test]
fn schur_dichotomy() {
    for (name, g, chi) in targets() {
        let (_, cat, _) = simples(&g, &chi, 1).remove(0);
        for c in &cat.classes {
            let e = endo_superalgebra(&c.module, &g.parity).unwrap();
            assert!(matches!((e.dim_even, e.dim_odd), (1, 0) | (1, 1)), "{name}: {e:?}");
            if e.dim_odd == 1 {
                let j = &hom_space(&c.module, &c.module, &g.parity, 1).unwrap()[0];
                let j2 = j.mul(j);
                let s = j2.get(0, 0);
                assert!(!s.is_zero() && j2 == Matrix::scalar(&g.field, c.module.dim, s), "{name}");
                assert_eq!(e.schur, SchurType::Q);
            }
        }
    }
}

#[test]
fn composition_factors_are_seed_stable() {
    for (name, g, chi) in targets() {
        let runs: Vec<Vec<Vec<(modsuper::repkit::Fingerprint, usize)>>> = [3u64, 17, 99]
            .iter()
            .map(|&s| {
                let (_, cat, series) = simples(&g, &chi, s).remove(0);
                series.iter().map(|cs| cs.summary(&cat)).collect()
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{name}");
        assert_eq!(runs[1], runs[2], "{name}");
    }
}

#[test]
fn kw_and_freeness_on_simples() {
    for (name, g, chi) in targets() {
        let divisor = super_kw_divisor(&g, &chi).unwrap();
        let (_, cat, _) = simples(&g, &chi, 5).remove(0);
        let dims: Vec<(String, usize)> = cat.classes.iter().enumerate().map(|(i, c)| (format!("S{i}"), c.module.dim)).collect();
        assert_eq!(kw_audit(divisor, &dims).violations, 0, "{name}");
        {
            let m = m_of(&g, &chi);
            let eta = eta_character(&g, &chi, &m).unwrap();
            for c in &cat.classes {
                assert!(freeness_check(&g, &c.module, &m, &eta).holds, "{name}");
            }
        }
    }
}

#[test]
fn regular_module_identities() {
    let f = FieldCtx::new(3, 1).unwrap();
    let g = osp12(&f).unwrap();
    for chi in [PChar::on_label(&g, "f", Fq::ONE).unwrap(), PChar::zero(&g)] {
        let a = analyze_regular(&g, &chi, 9, 600).unwrap();
        assert!(a.data.pim_identity);
        let total: usize = a.summands.iter().map(|s| s.dim).sum();
        assert_eq!(total, a.data.dim_u);
        let divisor = super_kw_divisor(&g, &chi).unwrap();
        let mut dims: Vec<(String, usize)> = a.data.simples.iter().map(|s| ("simple".to_string(), s.dim)).collect();
        dims.extend(a.summands.iter().map(|s| ("pim".to_string(), s.dim)));
        assert_eq!(kw_audit(divisor, &dims).violations, 0);
        for s in &a.summands {
            let heads = simple_subquotients(s, 9).unwrap();
            assert!(!heads.is_empty());
        }
    }
}
