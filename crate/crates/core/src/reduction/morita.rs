//! u-invariants of simple modules and the simple-module bijection between
//! U_χ(g) and U_χ(l).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::Fq;
use crate::pbw::{baby_verma, lambda_set, ModuleRep, Triangular};
use crate::repkit::{composition_factors, homogeneous_basis, is_simple, m_invariants, Catalog, SchurType, Simplicity};
use crate::superlie::{LieSuperAlgebra, PChar};

use super::levi::LeviData;

/// Every simple U_χ(g)-module, from the composition factors of all baby
/// Verma modules for a Borel on whose even positive part χ vanishes.
pub fn simples_via_baby_vermas(g: &LieSuperAlgebra, chi: &PChar, tri: &Triangular, seed: u64, dim_bound: usize) -> Result<Catalog> {
    let mut catalog = Catalog::new(&g.parity);
    for lam in lambda_set(g, chi, &tri.cartan, dim_bound)?.points {
        let z = baby_verma(g, chi, tri, &lam, dim_bound)?;
        composition_factors(&z.module, &mut catalog, seed)?;
    }
    Ok(catalog)
}

/// M^u as a module over l, on a homogeneous basis.
pub fn u_invariants(m: &ModuleRep, levi: &LeviData) -> Result<ModuleRep> {
    let zeros = vec![Fq::ZERO; levi.u_basis.len()];
    let inv = homogeneous_basis(m, &m_invariants(m, &levi.u_basis, &zeros));
    let labels = (0..levi.l_basis.len()).map(|i| format!("l{i}")).collect();
    m.restrict(&levi.l_basis, labels).on_subspace(&inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct UInvariantsReport {
    pub dim: usize,
    pub dim_invariants: usize,
    pub scale: u128,
    pub simple_over_l: bool,
    pub holds: bool,
}

pub fn u_invariants_check(g: &LieSuperAlgebra, m: &ModuleRep, levi: &LeviData, seed: u64) -> Result<UInvariantsReport> {
    let inv = u_invariants(m, levi)?;
    let simple_over_l = match is_simple(&inv, seed)? {
        Simplicity::Simple(_) => true,
        Simplicity::NotSimple(_) => false,
        Simplicity::Unknown { attempts } => return Err(Error::Unknown(format!("irreducibility of M^u undecided after {attempts} elements"))),
    };
    let scale = levi.scale(g);
    Ok(UInvariantsReport { dim: m.dim, dim_invariants: inv.dim, scale, simple_over_l, holds: simple_over_l && m.dim as u128 == scale * inv.dim as u128 })
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaPair {
    pub g_class: usize,
    pub l_class: Option<usize>,
    pub g_dim: usize,
    pub l_dim: usize,
    pub g_type: SchurType,
    pub l_type: Option<SchurType>,
    pub invariants: UInvariantsReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct MoritaReport {
    pub scale: u128,
    pub l_dims: (usize, usize),
    pub u_dims: (usize, usize),
    pub g_simples: usize,
    pub l_simples: usize,
    pub pairs: Vec<MoritaPair>,
    pub bijective: bool,
    pub dims_scale: bool,
    pub types_match: bool,
    pub holds: bool,
}

/// Simples of g and of l computed independently, then matched through
/// S ↦ S^u.
pub fn morita_desk_check(g: &LieSuperAlgebra, chi: &PChar, levi: &LeviData, seed: u64, dim_bound: usize) -> Result<MoritaReport> {
    if !levi.chi_vanishes_on_u(g, chi) {
        return Err(Error::Precondition("χ does not vanish on u".into()));
    }
    let l = levi.levi(g)?;
    let chi_l = chi.restrict(g, &levi.l_basis);
    let g_cat = simples_via_baby_vermas(g, chi, &levi.triangular(g)?, seed, dim_bound)?;
    let mut l_cat = simples_via_baby_vermas(&l, &chi_l, &levi.levi_triangular(&l)?, seed, dim_bound)?;
    let l_known = l_cat.classes.len();
    let scale = levi.scale(g);
    let mut pairs = Vec::new();
    for (i, c) in g_cat.classes.iter().enumerate() {
        let invariants = u_invariants_check(g, &c.module, levi, seed)?;
        let inv = u_invariants(&c.module, levi)?;
        let (l_class, l_type) = if invariants.simple_over_l {
            let k = l_cat.classify(&inv)?;
            (Some(k), Some(l_cat.classes[k].endo.schur))
        } else {
            (None, None)
        };
        pairs.push(MoritaPair { g_class: i, l_class, g_dim: c.module.dim, l_dim: inv.dim, g_type: c.endo.schur, l_type, invariants });
    }
    let mut hit: Vec<usize> = pairs.iter().filter_map(|p| p.l_class).collect();
    hit.sort();
    hit.dedup();
    let bijective = l_cat.classes.len() == l_known && pairs.iter().all(|p| p.l_class.is_some()) && hit.len() == pairs.len() && hit.len() == l_known;
    let dims_scale = pairs.iter().all(|p| p.g_dim as u128 == scale * p.l_dim as u128);
    let types_match = pairs.iter().all(|p| p.l_type == Some(p.g_type));
    let invariants_hold = pairs.iter().all(|p| p.invariants.holds);
    Ok(MoritaReport {
        scale,
        l_dims: levi.l_dims(g),
        u_dims: levi.u_dims(g),
        g_simples: g_cat.classes.len(),
        l_simples: l_known,
        pairs,
        bijective,
        dims_scale,
        types_match,
        holds: bijective && dims_scale && types_match && invariants_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{FieldCtx, Matrix};
    use crate::reduction::{jordan_decomp_chi, levi_parabolic};
    use crate::superlie::{chi_from_element, gl, osp12, toral_value};

    #[test]
    fn osp12_regular_semisimple_p3() {
        let f = FieldCtx::new(3, 2).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "h", toral_value(&f).unwrap()).unwrap();
        let j = jordan_decomp_chi(&g, &chi).unwrap();
        assert!(j.chi_n.is_zero());
        let lv = levi_parabolic(&g, &j.chi_s).unwrap();
        assert_eq!(lv.l_basis.len(), 1);
        let r = morita_desk_check(&g, &chi, &lv, 5, 600).unwrap();
        assert_eq!((r.scale, r.g_simples, r.l_simples), (6, 3, 3));
        assert!(r.pairs.iter().all(|p| p.g_dim == 6 && p.l_dim == 1 && p.g_type == SchurType::M));
        assert!(r.holds);
    }

    #[test]
    fn restricted_levi_is_everything() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::zero(&g);
        let lv = levi_parabolic(&g, &chi).unwrap();
        let r = morita_desk_check(&g, &chi, &lv, 5, 600).unwrap();
        assert_eq!((r.scale, r.g_simples, r.l_simples), (1, 3, 3));
        assert!(r.pairs.iter().all(|p| p.g_dim == p.l_dim));
        assert!(r.holds);
    }

    #[test]
    fn gl11_regular_semisimple() {
        let f = FieldCtx::new(3, 2).unwrap();
        let g = gl(&f, 1, 1).unwrap();
        let c = toral_value(&f).unwrap();
        let s = Matrix::from_fn(&f, 2, 2, |r, col| if r == 0 && col == 0 { c } else { Fq::ZERO });
        let chi = chi_from_element(&g, &g.model.as_ref().unwrap().coords(&s).unwrap()).unwrap();
        let lv = levi_parabolic(&g, &jordan_decomp_chi(&g, &chi).unwrap().chi_s).unwrap();
        let r = morita_desk_check(&g, &chi, &lv, 5, 600).unwrap();
        assert_eq!((r.scale, r.g_simples, r.l_simples), (2, 9, 9));
        assert!(r.pairs.iter().all(|p| p.g_dim == 2 && p.invariants.dim_invariants == 1));
        assert!(r.holds);
    }

    #[test]
    fn gl21_mixed_jordan() {
        let f = FieldCtx::new(3, 2).unwrap();
        let g = gl(&f, 2, 1).unwrap();
        let c = toral_value(&f).unwrap();
        let x = Matrix::from_fn(&f, 3, 3, |r, col| match (r, col) {
            (0, 0) | (1, 1) => c,
            (0, 1) => Fq::ONE,
            _ => Fq::ZERO,
        });
        let chi = chi_from_element(&g, &g.model.as_ref().unwrap().coords(&x).unwrap()).unwrap();
        let j = jordan_decomp_chi(&g, &chi).unwrap();
        assert!(!j.chi_n.is_zero());
        let lv = levi_parabolic(&g, &j.chi_s).unwrap();
        assert_eq!((lv.l_dims(&g), lv.u_dims(&g)), ((5, 0), (0, 2)));
        let r = morita_desk_check(&g, &chi, &lv, 5, 600).unwrap();
        assert_eq!(r.scale, 4);
        assert_eq!(r.g_simples, r.l_simples);
        assert!(r.pairs.iter().all(|p| p.g_dim == 12 && p.l_dim == 3));
        assert!(r.holds);
    }
}
