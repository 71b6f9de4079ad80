use std::collections::BTreeSet;

use modsuper::exactlin::{FieldCtx, Fq, Matrix};
use modsuper::reduction::{enumerate_phi_u, levi_parabolic, odd_reflection, LeviSide, PositiveSystem, Root, RootSystem};
use modsuper::superlie::{chi_from_element, gl, osp, LieSuperAlgebra};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn neg(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

fn algebras() -> Vec<LieSuperAlgebra> {
    let f = FieldCtx::new(5, 1).unwrap();
    vec![gl(&f, 2, 1).unwrap(), gl(&f, 2, 2).unwrap(), gl(&f, 3, 1).unwrap(), osp(&f, 1, 4).unwrap(), osp(&f, 3, 2).unwrap(), osp(&f, 2, 2).unwrap()]
}

/// A random walk of reflections from the standard system.
fn walk(rs: &RootSystem, steps: usize, rng: &mut ChaCha8Rng) -> PositiveSystem {
    let mut ps = PositiveSystem::standard(rs).unwrap();
    for _ in 0..steps {
        let d = ps.simple[rng.gen_range(0..ps.simple.len())].clone();
        ps = odd_reflection(rs, &ps, &d).unwrap();
    }
    ps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reflection_is_an_involution(which in 0usize..6, steps in 0usize..6, seed in any::<u64>()) {
        let g = &algebras()[which];
        let rs = RootSystem::from_algebra(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = walk(&rs, steps, &mut rng);
        for d in &ps.simple {
            let r = odd_reflection(&rs, &ps, d).unwrap();
            let back = odd_reflection(&rs, &r, &neg(d)).unwrap();
            prop_assert_eq!(&back.positive, &ps.positive);
        }
    }

    #[test]
    fn phi_u_sequences(which in 0usize..6, steps in 0usize..6, mask in any::<u32>(), seed in any::<u64>()) {
        let g = &algebras()[which];
        let rs = RootSystem::from_algebra(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = walk(&rs, steps, &mut rng);
        let levi: BTreeSet<Root> = ps
            .positive
            .iter()
            .filter(|r| ps.coefficients(r).unwrap().iter().enumerate().all(|(i, &c)| c == 0 || mask >> i & 1 == 1))
            .cloned()
            .collect();
        let u: BTreeSet<Root> = ps.positive.difference(&levi).cloned().collect();
        let seq = enumerate_phi_u(&rs, &levi, &u, LeviSide::Positive).unwrap();
        prop_assert!(seq.holds());
        let lines = rs.lines.iter().filter(|l| u.contains(&l.delta) || u.contains(&neg(&l.delta))).count();
        prop_assert_eq!(seq.stars.len(), lines);
        for (i, sys) in seq.systems.iter().enumerate() {
            prop_assert!(sys.simple.contains(&seq.stars[i][0]));
            prop_assert!(PositiveSystem::from_positive(&rs, sys.positive.clone()).is_ok());
        }
    }

    #[test]
    fn levi_of_random_diagonal(m in 1usize..4, n in 1usize..3, seed in any::<u64>()) {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = gl(&f, m, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // few distinct values so that Levi subalgebras are large
        let d: Vec<Fq> = (0..m + n).map(|_| f.from_i64(rng.gen_range(0..2))).collect();
        let s = Matrix::from_fn(&f, m + n, m + n, |r, c| if r == c { d[r] } else { Fq::ZERO });
        let chi_s = chi_from_element(&g, &g.model.as_ref().unwrap().coords(&s).unwrap()).unwrap();
        let lv = levi_parabolic(&g, &chi_s).unwrap();
        prop_assert!(lv.chi_vanishes_on_u(&g, &chi_s));
        prop_assert_eq!(lv.l_basis.len() + lv.u_basis.len() + lv.u_minus_basis.len(), g.dim());
        prop_assert!(lv.levi(&g).is_ok());
        let expected_l: usize = (0..m + n).flat_map(|a| (0..m + n).map(move |b| (a, b))).filter(|&(a, b)| d[a] == d[b]).count();
        prop_assert_eq!(lv.l_basis.len(), expected_l);
    }
}
