use modsuper::exactlin::{Field, FieldCtx, Span};
use modsuper::superlie::{centralizer, check_restricted, chi_from_element, element_centralizer, gl, osp, sl, LieSuperAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;

fn families(f: &Field) -> Vec<(String, LieSuperAlgebra)> {
    let mut out = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        out.push((format!("gl({m}|{n})"), gl(f, m, n).unwrap()));
    }
    for (m, n) in [(2, 1), (3, 1)] {
        if let Ok(g) = sl(f, m, n) {
            out.push((format!("sl({m}|{n})"), g));
        }
    }
    for (m, n) in [(1, 2), (1, 4), (2, 2), (3, 2)] {
        out.push((format!("osp({m}|{n})"), osp(f, m, n).unwrap()));
    }
    out
}

#[test]
fn structure_form_and_restrictedness() {
    for p in [3u32, 5, 7] {
        let f = FieldCtx::new(p, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        for (name, g) in families(&f) {
            g.check_structure().unwrap_or_else(|e| panic!("{name} at p = {p}: {e}"));
            let rep = check_restricted(&g, 50, &mut rng);
            assert!(rep.passed(), "{name} at p = {p}: {:?}", rep.failure);
        }
    }
}

fn nilpotent_for(g: &LieSuperAlgebra, name: &str, rng: &mut ChaCha8Rng) -> Vec<modsuper::superlie::Elem> {
    if name.starts_with("gl") {
        let (m, n) = g.shape;
        let pi0 = common::random_partition(m, rng);
        let pi1 = common::random_partition(n, rng);
        vec![common::gl_nilpotent_of_type(g, &pi0, &pi1, rng)]
    } else {
        vec![common::random_positive_nilpotent(g, rng)]
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn centralizer_of_chi_is_centralizer_of_element(p in prop::sample::select(vec![3u32, 5, 7]), seed in any::<u64>()) {
        let f = FieldCtx::new(p, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, g) in families(&f) {
            for x in nilpotent_for(&g, &name, &mut rng) {
                let chi = chi_from_element(&g, &x).unwrap();
                let c = centralizer(&g, &chi).unwrap();
                let a = Span::from_vectors(&f, g.dim(), &c.basis());
                let b = Span::from_vectors(&f, g.dim(), &element_centralizer(&g, &x));
                prop_assert_eq!(a.dim(), b.dim(), "{}", name);
                prop_assert!(b.basis().iter().all(|v| a.contains(v)), "{}", name);
                prop_assert_eq!(c.kw.d0 % 2, 0);
            }
        }
    }

    #[test]
    fn d0_even_for_arbitrary_chi(p in prop::sample::select(vec![3u32, 5, 7]), seed in any::<u64>()) {
        let f = FieldCtx::new(p, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, g) in families(&f) {
            let x = common::random_even(&g, &mut rng);
            let c = centralizer(&g, &chi_from_element(&g, &x).unwrap());
            prop_assert!(c.is_ok(), "{}: {:?}", name, c.err());
            prop_assert_eq!(c.unwrap().kw.d0 % 2, 0);
        }
    }
}
