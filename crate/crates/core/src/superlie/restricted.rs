//! Verification of the restricted-structure axioms.

use rand::Rng;
use serde::Serialize;

use super::algebra::{Elem, LieSuperAlgebra};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RestrictedFailure {
    /// 'a' semilinearity, 'b' adjoint compatibility, 'c' sum formula.
    pub axiom: char,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedReport {
    pub semilinear_samples: usize,
    pub adjoint_pairs: usize,
    pub sum_samples: usize,
    pub failure: Option<RestrictedFailure>,
}

impl RestrictedReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn random_even<R: Rng + ?Sized>(g: &LieSuperAlgebra, rng: &mut R) -> Elem {
    let mut x = g.zero();
    for i in g.even_indices() {
        x[i] = g.field.random(rng);
    }
    x
}

fn show(g: &LieSuperAlgebra, x: &[crate::exactlin::Fq]) -> String {
    let terms: Vec<String> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*{}", c.0, g.labels[i]))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Checks (a) on random scalar multiples, (b) on every even basis element
/// against every basis element, and (c) on `samples` random even pairs.
/// When a matrix model is present, (c) compares against the matrix p-th power.
pub fn check_restricted<R: Rng + ?Sized>(g: &LieSuperAlgebra, samples: usize, rng: &mut R) -> RestrictedReport {
    let f = &g.field;
    let p = f.p() as u64;
    let mut rep = RestrictedReport { semilinear_samples: 0, adjoint_pairs: 0, sum_samples: 0, failure: None };
    let even = g.even_indices();

    for _ in 0..samples {
        let x = random_even(g, rng);
        let c = f.random(rng);
        let lhs = g.p_power(&g.scale(&x, c));
        let rhs = g.scale(&g.p_power(&x), f.pow(c, p));
        rep.semilinear_samples += 1;
        if lhs != rhs {
            rep.failure = Some(RestrictedFailure { axiom: 'a', witness: format!("x = {}, c = {}", show(g, &x), c.0) });
            return rep;
        }
    }

    for &i in &even {
        let adp = g.ad(&g.basis_elem(i)).pow(p);
        let xp = g.pmap[i].as_ref().expect("pmap populated on even basis");
        let adxp = g.ad(xp);
        for j in 0..g.dim() {
            rep.adjoint_pairs += 1;
            if adxp.column(j) != adp.column(j) {
                rep.failure = Some(RestrictedFailure {
                    axiom: 'b',
                    witness: format!("x = {}, y = {}: [x^[p], y] = {} but (ad x)^p y = {}", g.labels[i], g.labels[j], show(g, &adxp.column(j)), show(g, &adp.column(j))),
                });
                return rep;
            }
        }
    }

    for _ in 0..samples {
        let x = random_even(g, rng);
        let y = random_even(g, rng);
        let s = g.add(&x, &y);
        let lhs = g.model_p_power(&s).unwrap_or_else(|| g.p_power(&s));
        let rhs = g.add(&g.add(&g.p_power(&x), &g.p_power(&y)), &g.jacobson_sum(&x, &y));
        rep.sum_samples += 1;
        if lhs != rhs {
            rep.failure = Some(RestrictedFailure { axiom: 'c', witness: format!("x = {}, y = {}", show(g, &x), show(g, &y)) });
            return rep;
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::superlie::families::{gl, osp, osp12, sl};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructed_algebras_are_restricted() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [3u32, 5, 7] {
            let f = FieldCtx::new(p, 1).unwrap();
            let algebras = vec![gl(&f, 1, 1).unwrap(), gl(&f, 2, 1).unwrap(), sl(&f, 1, 1).unwrap(), sl(&f, 2, 1).unwrap(), osp12(&f).unwrap(), osp(&f, 1, 4).unwrap(), osp(&f, 3, 2).unwrap()];
            for g in &algebras {
                let r = check_restricted(g, 20, &mut rng);
                assert!(r.passed(), "{g:?} p={p}: {:?}", r.failure);
            }
        }
    }

    #[test]
    fn gl_p_power_is_matrix_power() {
        // oracle: ad(x^p) = (ad x)^p computed directly from the model matrices
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let x = random_even(&g, &mut rng);
            let xp = g.model_p_power(&x).unwrap();
            assert_eq!(g.p_power(&x), xp);
            assert_eq!(g.ad(&xp), g.ad(&x).pow(3));
        }
    }

    #[test]
    fn corrupted_pmap_fails_axiom_b() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 1, 1).unwrap();
        let h = g.index_of("E1,1").unwrap();
        let bad = g.with_pmap_entry(h, g.zero());
        let r = check_restricted(&bad, 10, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(r.failure.map(|x| x.axiom), Some('b'));
    }
}
