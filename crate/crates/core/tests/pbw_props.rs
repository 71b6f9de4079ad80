use modsuper::exactlin::{FieldCtx, Fq};
use modsuper::pbw::{baby_verma, induced_module, lambda_set, one_dim_module, osp12_engine_in_closed_basis, osp12_verma_closed_form, Triangular, UAlgebraCtx};
use modsuper::superlie::{gl, osp12, sl, toral_value, LieSuperAlgebra, PChar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn confluence_case(g: &LieSuperAlgebra, chi: &PChar, seed: u64) {
    let ctx = UAlgebraCtx::standard(g, chi).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let len = rng.gen_range(0..=6);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..g.dim())).collect();
        assert_eq!(ctx.normal_form(&w), ctx.normal_form_left_to_right(&w), "word {w:?}");
    }
}

#[test]
fn straightening_is_confluent() {
    for p in [3u32, 5] {
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        confluence_case(&g, &PChar::zero(&g), 1);
        confluence_case(&g, &PChar::on_label(&g, "f", Fq::ONE).unwrap(), 2);
        let g = gl(&f, 1, 1).unwrap();
        confluence_case(&g, &PChar::zero(&g), 3);
        confluence_case(&g, &PChar::on_label(&g, &g.labels[0].clone(), Fq::ONE).unwrap(), 4);
    }
}

/// p^{c0} · 2^{c1} for the complement of the inducing subalgebra.
fn complement_factor(g: &LieSuperAlgebra, sub_dims: (usize, usize)) -> usize {
    (g.field.p() as usize).pow((g.dim_even() - sub_dims.0) as u32) * 2usize.pow((g.dim_odd() - sub_dims.1) as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn baby_vermas_are_modules(case in 0usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, chi) = match case {
            0 => {
                let f = FieldCtx::new(3, 1).unwrap();
                let g = osp12(&f).unwrap();
                let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
                (g, chi)
            }
            1 => {
                let f = FieldCtx::new(5, 1).unwrap();
                let g = osp12(&f).unwrap();
                (g.clone(), PChar::zero(&g))
            }
            2 => {
                let f = FieldCtx::new(3, 2).unwrap();
                let g = sl(&f, 1, 1).unwrap();
                let chi = PChar::on_label(&g, "h1", toral_value(&f).unwrap()).unwrap();
                (g, chi)
            }
            _ => {
                let f = FieldCtx::new(3, 1).unwrap();
                let g = gl(&f, 2, 1).unwrap();
                (g.clone(), PChar::zero(&g))
            }
        };
        // sl(1|1) has no roots: its Cartan acts by zero on the odd part
        let tri = match g.index_of("h1") {
            Some(_) => Triangular { cartan: g.cartan.clone(), positive: vec![g.basis_elem(g.index_of("E1,2").unwrap())], negative: vec![g.basis_elem(g.index_of("E2,1").unwrap())] },
            None => Triangular::standard(&g).unwrap(),
        };
        let pts = lambda_set(&g, &chi, &tri.cartan, 600).unwrap().points;
        let lam = &pts[rng.gen_range(0..pts.len())];
        let z = baby_verma(&g, &chi, &tri, lam, 600).unwrap();
        prop_assert!(z.module.check(&g, &chi).is_ok());
        let b = tri.borel();
        let odd = b.iter().filter(|x| g.elem_parity(x) == Some(1)).count();
        prop_assert_eq!(z.module.dim, complement_factor(&g, (b.len() - odd, odd)));
    }

    #[test]
    fn induced_from_characters_of_m(p in prop::sample::select(vec![3u32, 5]), c in 1i64..3) {
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "f", f.from_i64(c)).unwrap();
        let m = vec![g.basis_elem(g.index_of("f").unwrap())];
        let eta = modsuper::pbw::eta_character(&g, &chi, &m).unwrap();
        let q = induced_module(&g, &chi, &m, &one_dim_module(&g, &eta), 600).unwrap();
        prop_assert!(q.module.check(&g, &chi).is_ok());
        prop_assert_eq!(q.module.dim, complement_factor(&g, (1, 0)));
    }
}

#[test]
fn closed_form_matches_engine() {
    for p in [3u32, 5] {
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        let tri = Triangular::standard(&g).unwrap();
        for chi_f in [Fq::ZERO, Fq::ONE] {
            let chi = PChar::on_label(&g, "f", chi_f).unwrap();
            for lam in lambda_set(&g, &chi, &tri.cartan, 600).unwrap().points {
                let z = baby_verma(&g, &chi, &tri, &lam, 600).unwrap();
                let closed = osp12_verma_closed_form(&g, lam[0], chi_f).unwrap();
                let engine = osp12_engine_in_closed_basis(&z.module).unwrap();
                assert_eq!(engine.action, closed.action, "p = {p}, λ = {:?}", lam[0]);
            }
        }
    }
}
