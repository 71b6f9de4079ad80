//! Jordan decomposition of χ and the Levi/parabolic pair it determines.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{jordan_chevalley, Fq, Span};
use crate::pbw::Triangular;
use crate::superlie::{chi_from_element, element_centralizer, element_from_chi, Elem, LieSuperAlgebra, PChar};

use super::roots::{indecomposable, neg, odd_reflection, PositiveSystem, Root, RootSystem};

/// Largest number of positive systems visited by the parabolic search.
pub const MAX_SYSTEMS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct JordanChi {
    pub s: Elem,
    pub n: Elem,
    pub chi_s: PChar,
    pub chi_n: PChar,
}

/// χ = χ_s + χ_n from the Jordan decomposition of the element X with
/// (X, ·) = χ.
pub fn jordan_decomp_chi(g: &LieSuperAlgebra, chi: &PChar) -> Result<JordanChi> {
    let x = element_from_chi(g, chi)?;
    let model = g.model.as_ref().ok_or_else(|| Error::Unsupported("Jordan decomposition needs a matrix model".into()))?;
    let (sm, nm) = jordan_chevalley(&g.element_matrix(&x).unwrap());
    let s = model.coords(&sm).ok_or_else(|| Error::Violation("semisimple part leaves the algebra".into()))?;
    let n = model.coords(&nm).ok_or_else(|| Error::Violation("nilpotent part leaves the algebra".into()))?;
    let chi_s = chi_from_element(g, &s)?;
    let chi_n = chi_from_element(g, &n)?;
    if chi_s.add(g, &chi_n) != *chi {
        return Err(Error::Violation("χ_s + χ_n differs from χ".into()));
    }
    Ok(JordanChi { s, n, chi_s, chi_n })
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviData {
    #[serde(skip)]
    pub roots: RootSystem,
    pub positive: PositiveSystem,
    /// Φ(l): roots vanishing on s.
    pub levi_roots: BTreeSet<Root>,
    #[serde(skip)]
    pub l_basis: Vec<Elem>,
    #[serde(skip)]
    pub u_basis: Vec<Elem>,
    #[serde(skip)]
    pub u_minus_basis: Vec<Elem>,
    #[serde(skip)]
    pub p_basis: Vec<Elem>,
    /// Positive systems visited before one compatible with l was found.
    pub visited: usize,
}

impl LeviData {
    pub fn l_dims(&self, g: &LieSuperAlgebra) -> (usize, usize) {
        parity_dims(g, &self.l_basis)
    }

    pub fn u_dims(&self, g: &LieSuperAlgebra) -> (usize, usize) {
        parity_dims(g, &self.u_basis)
    }

    /// p^{dim u_0} · 2^{dim u_1}.
    pub fn scale(&self, g: &LieSuperAlgebra) -> u128 {
        let (e, o) = self.u_dims(g);
        (g.field.p() as u128).pow(e as u32) * 2u128.pow(o as u32)
    }

    pub fn chi_vanishes_on_u(&self, g: &LieSuperAlgebra, chi: &PChar) -> bool {
        self.u_basis.iter().all(|x| chi.eval(g, x).is_zero())
    }

    pub fn levi(&self, g: &LieSuperAlgebra) -> Result<LieSuperAlgebra> {
        g.subalgebra(&self.l_basis, self.l_basis.iter().map(|x| label_of(g, x)).collect())
    }

    /// Borel of g inside p.
    pub fn triangular(&self, g: &LieSuperAlgebra) -> Result<Triangular> {
        Triangular::from_positive(g, |r| r.coords.as_ref().is_some_and(|c| self.positive.is_positive(c)))
    }

    /// Borel of l from the positive roots of l.
    pub fn levi_triangular(&self, l: &LieSuperAlgebra) -> Result<Triangular> {
        Triangular::from_positive(l, |r| r.coords.as_ref().is_some_and(|c| self.positive.is_positive(c)))
    }
}

fn parity_dims(g: &LieSuperAlgebra, basis: &[Elem]) -> (usize, usize) {
    let odd = basis.iter().filter(|x| g.elem_parity(x) == Some(1)).count();
    (basis.len() - odd, odd)
}

fn label_of(g: &LieSuperAlgebra, x: &[Fq]) -> String {
    let nz: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
    match nz.as_slice() {
        [i] if x[*i] == Fq::ONE => g.labels[*i].clone(),
        _ => format!("x{}", nz.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("_")),
    }
}

/// Positive roots of Φ(l) in `ps` have the simple roots Π ∩ Φ(l).
fn compatible(ps: &PositiveSystem, levi_roots: &BTreeSet<Root>) -> bool {
    let lp: BTreeSet<Root> = ps.positive.intersection(levi_roots).cloned().collect();
    let inside: BTreeSet<Root> = ps.simple.iter().filter(|r| levi_roots.contains(*r)).cloned().collect();
    indecomposable(&lp).into_iter().collect::<BTreeSet<_>>() == inside
        && lp.iter().all(|r| ps.coefficients(r).is_some_and(|c| c.iter().zip(&ps.simple).all(|(&k, s)| k == 0 || inside.contains(s))))
}

/// l = g_s and p = l ⊕ u for the semisimple part of χ, searching positive
/// systems breadth-first by reflections from the standard one.
pub fn levi_parabolic(g: &LieSuperAlgebra, chi_s: &PChar) -> Result<LeviData> {
    let f = &g.field;
    let s = element_from_chi(g, chi_s)?;
    let cartan = Span::from_vectors(f, g.dim(), &g.cartan);
    if !cartan.contains(&s) {
        return Err(Error::Unsupported("the semisimple part must lie in the standard Cartan subalgebra".into()));
    }
    let rs = RootSystem::from_algebra(g)?;
    let mut levi_roots = BTreeSet::new();
    for (r, basis) in &rs.spaces {
        if g.bracket(&s, &basis[0]).iter().all(|c| c.is_zero()) {
            levi_roots.insert(r.clone());
        }
    }
    let mut seen: BTreeSet<BTreeSet<Root>> = BTreeSet::new();
    let mut queue = VecDeque::from([PositiveSystem::standard(&rs)?]);
    let mut found = None;
    while let Some(ps) = queue.pop_front() {
        if !seen.insert(ps.positive.clone()) {
            continue;
        }
        if compatible(&ps, &levi_roots) {
            found = Some(ps);
            break;
        }
        if seen.len() >= MAX_SYSTEMS {
            break;
        }
        for d in &ps.simple {
            queue.push_back(odd_reflection(&rs, &ps, d)?);
        }
    }
    let positive = found.ok_or_else(|| Error::Violation(format!("no positive system among {} visited restricts to a simple system of l", seen.len())))?;
    let mut l_basis = g.cartan.clone();
    let mut u_basis = Vec::new();
    let mut u_minus_basis = Vec::new();
    for (r, basis) in &rs.spaces {
        if levi_roots.contains(r) {
            l_basis.extend(basis.iter().cloned());
        } else if positive.is_positive(r) {
            u_basis.extend(basis.iter().cloned());
        } else {
            u_minus_basis.extend(basis.iter().cloned());
        }
    }
    if element_centralizer(g, &s).len() != l_basis.len() {
        return Err(Error::Violation("l differs from the centralizer of s".into()));
    }
    let p_basis: Vec<Elem> = l_basis.iter().chain(&u_basis).cloned().collect();
    for (name, b) in [("l", &l_basis), ("u", &u_basis), ("p", &p_basis)] {
        g.subalgebra(b, vec![String::new(); b.len()]).map_err(|e| Error::Violation(format!("{name} is not a restricted subalgebra: {e}")))?;
    }
    let up: BTreeSet<Root> = rs.spaces.keys().filter(|r| !levi_roots.contains(*r) && positive.is_positive(r)).cloned().collect();
    if up.iter().any(|r| !rs.contains(&neg(r))) {
        return Err(Error::Violation("u⁻ is not opposite to u".into()));
    }
    Ok(LeviData { roots: rs, positive, levi_roots, l_basis, u_basis, u_minus_basis, p_basis, visited: seen.len() })
}


/// Sum of the root vectors of the even simple roots of the standard
/// positive system: a regular nilpotent element of g_0.
pub fn regular_nilpotent(g: &LieSuperAlgebra) -> Result<Elem> {
    let rs = RootSystem::from_algebra(g)?;
    let ps = PositiveSystem::standard(&rs)?;
    let even: BTreeSet<Root> = ps.positive.iter().filter(|r| rs.parity(r) == Some(0)).cloned().collect();
    let mut x = g.zero();
    for r in indecomposable(&even) {
        for b in &rs.spaces[&r] {
            x = g.add(&x, b);
        }
    }
    Ok(x)
}
