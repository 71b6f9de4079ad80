//! Dimension audits: invariants under m, freeness over U_χ(m), divisibility
//! and the commutant of the induced module Q_m.

use serde::Serialize;

use crate::error::Result;
use crate::exactlin::{Fq, Matrix};
use crate::pbw::{eta_character, induced_module, one_dim_module, ModuleRep};
use crate::superlie::{Elem, LieSuperAlgebra, PChar};

use super::endo::hom_space;

/// Common kernel of ρ(x) − η(x) over a basis of m.
pub fn m_invariants(m: &ModuleRep, m_basis: &[Elem], eta: &[Fq]) -> Vec<Vec<Fq>> {
    let f = &m.field;
    if m_basis.is_empty() {
        return Matrix::identity(f, m.dim).data().chunks(m.dim.max(1)).take(m.dim).map(|r| r.to_vec()).collect();
    }
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    for (x, &e) in m_basis.iter().zip(eta) {
        let a = m.act(x).sub(&Matrix::scalar(f, m.dim, e));
        for r in 0..m.dim {
            rows.push(a.row(r).to_vec());
        }
    }
    Matrix::from_rows(f, &rows).unwrap().kernel_basis()
}

/// p^{dim m_0} · 2^{dim m_1}.
pub fn reduced_dim_of(g: &LieSuperAlgebra, basis: &[Elem]) -> u128 {
    let odd = basis.iter().filter(|x| g.elem_parity(x) == Some(1)).count() as u32;
    let even = basis.len() as u32 - odd;
    (g.field.p() as u128).pow(even) * 2u128.pow(odd)
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub dim: usize,
    pub dim_u_m: u128,
    pub dim_invariants: usize,
    pub holds: bool,
}

pub fn freeness_check(g: &LieSuperAlgebra, m: &ModuleRep, m_basis: &[Elem], eta: &[Fq]) -> FreenessReport {
    let inv = m_invariants(m, m_basis, eta).len();
    let du = reduced_dim_of(g, m_basis);
    FreenessReport { dim: m.dim, dim_u_m: du, dim_invariants: inv, holds: m.dim as u128 == du * inv as u128 }
}

#[derive(Clone, Debug, Serialize)]
pub struct KwEntry {
    pub label: String,
    pub dim: usize,
    pub quotient: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KwReport {
    pub divisor: u128,
    pub entries: Vec<KwEntry>,
    pub violations: usize,
}

/// Divisibility of each listed dimension by the KW divisor.
pub fn kw_audit(divisor: u128, modules: &[(String, usize)]) -> KwReport {
    let entries: Vec<KwEntry> = modules
        .iter()
        .map(|(label, d)| KwEntry { label: label.clone(), dim: *d, quotient: (*d as u128 % divisor == 0).then(|| *d as u128 / divisor) })
        .collect();
    let violations = entries.iter().filter(|e| e.quotient.is_none()).count();
    KwReport { divisor, entries, violations }
}

#[derive(Clone, Debug, Serialize)]
pub struct WDimReport {
    pub dim_u: u128,
    pub delta: u128,
    pub q_dim: usize,
    pub end_even: usize,
    pub end_odd: usize,
    /// dim of the η-eigenvectors of m in Q_m (Frobenius reciprocity).
    pub reciprocity_dim: usize,
    pub expected: u128,
    pub holds: bool,
}

/// dim End(Q_m) against dim U_χ(g)/δ², δ = dim U_χ(m).
pub fn w_dim_check(g: &LieSuperAlgebra, chi: &PChar, m_basis: &[Elem], dim_bound: usize) -> Result<WDimReport> {
    let eta = eta_character(g, chi, m_basis)?;
    let k = one_dim_module(g, &eta);
    let q = induced_module(g, chi, m_basis, &k, dim_bound)?;
    let even = hom_space(&q.module, &q.module, &g.parity, 0)?.len();
    let odd = hom_space(&q.module, &q.module, &g.parity, 1)?.len();
    let dim_u = q.ctx.reduced_dim();
    let delta = reduced_dim_of(g, m_basis);
    let expected = dim_u / (delta * delta);
    let reciprocity_dim = m_invariants(&q.module, m_basis, &eta).len();
    Ok(WDimReport {
        dim_u,
        delta,
        q_dim: q.module.dim,
        end_even: even,
        end_odd: odd,
        reciprocity_dim,
        expected,
        holds: dim_u % (delta * delta) == 0 && (even + odd) as u128 == expected && reciprocity_dim as u128 == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::pbw::{baby_verma, Triangular};
    use crate::superlie::{osp12, sl};

    #[test]
    fn osp12_nilpotent_invariants_and_freeness() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
        let tri = Triangular::standard(&g).unwrap();
        let m = vec![g.basis_elem(g.index_of("f").unwrap())];
        let eta = eta_character(&g, &chi, &m).unwrap();
        for lam in 0..3 {
            let z = baby_verma(&g, &chi, &tri, &[f.from_i64(lam)], 600).unwrap();
            assert_eq!(m_invariants(&z.module, &m, &eta).len(), 2);
            let r = freeness_check(&g, &z.module, &m, &eta);
            assert!(r.holds);
            assert_eq!((r.dim, r.dim_u_m, r.dim_invariants), (6, 3, 2));
        }
    }

    #[test]
    fn trivial_m_keeps_everything() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let z = baby_verma(&g, &PChar::zero(&g), &Triangular::standard(&g).unwrap(), &[Fq(1)], 600).unwrap();
        assert_eq!(m_invariants(&z.module, &[], &[]).len(), 6);
        assert!(freeness_check(&g, &z.module, &[], &[]).holds);
    }

    #[test]
    fn w_dim_osp12_p3() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
        let m = vec![g.basis_elem(g.index_of("f").unwrap())];
        let r = w_dim_check(&g, &chi, &m, 600).unwrap();
        assert_eq!((r.dim_u, r.delta, r.q_dim, r.expected), (108, 3, 36, 12));
        assert_eq!(r.end_even + r.end_odd, 12);
        assert!(r.holds);
    }

    #[test]
    fn w_dim_trivial_m_is_regular() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = sl(&f, 1, 1).unwrap();
        let h = g.index_of("h1").unwrap();
        let chi = PChar::on_label(&g, "h1", Fq::ONE).unwrap();
        assert!(g.parity[h] == 0);
        let r = w_dim_check(&g, &chi, &[], 600).unwrap();
        assert_eq!((r.q_dim, r.expected), (12, 12));
        assert!(r.holds);
    }

    #[test]
    fn kw_reports_violations() {
        let r = kw_audit(6, &[("a".into(), 6), ("b".into(), 12), ("c".into(), 9)]);
        assert_eq!(r.violations, 1);
        assert_eq!(r.entries[1].quotient, Some(2));
    }
}
