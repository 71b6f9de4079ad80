//! Induced modules, baby Verma modules, the regular module and the
//! characters they are built from.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactlin::{Fq, Matrix, Span};
use crate::superlie::{root_decomposition, Elem, LieSuperAlgebra, PChar, RootSpace};

use super::ctx::{Mono, UAlgebraCtx};
use super::module::ModuleRep;

/// Default cap on constructed module dimensions.
pub const DEFAULT_DIM_BOUND: usize = 600;

/// Triangular decomposition n⁻ ⊕ h ⊕ n⁺ with homogeneous root vectors.
#[derive(Clone, Debug)]
pub struct Triangular {
    pub cartan: Vec<Elem>,
    pub positive: Vec<Elem>,
    pub negative: Vec<Elem>,
}

impl Triangular {
    /// Splits the root spaces of the standard Cartan by a positivity test.
    pub fn from_positive(g: &LieSuperAlgebra, is_positive: impl Fn(&RootSpace) -> bool) -> Result<Triangular> {
        let rd = root_decomposition(g, &g.cartan)?;
        if !rd.zero_odd.is_empty() || rd.zero_even.len() != g.cartan.len() {
            return Err(Error::Unsupported("Cartan subalgebra is not self-centralizing".into()));
        }
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for r in &rd.roots {
            let side = if is_positive(r) { &mut positive } else { &mut negative };
            side.extend(r.basis.iter().cloned());
        }
        Ok(Triangular { cartan: g.cartan.clone(), positive, negative })
    }

    /// Roots whose integer coordinates are lexicographically positive.
    pub fn standard(g: &LieSuperAlgebra) -> Result<Triangular> {
        let lex_pos = |r: &RootSpace| r.coords.as_ref().and_then(|c| c.iter().find(|&&x| x != 0).copied()).unwrap_or(0) > 0;
        let rd = root_decomposition(g, &g.cartan)?;
        if rd.roots.iter().any(|r| r.coords.is_none()) {
            return Err(Error::Unsupported("roots have no integer coordinates".into()));
        }
        Triangular::from_positive(g, lex_pos)
    }

    pub fn borel(&self) -> Vec<Elem> {
        self.cartan.iter().chain(&self.positive).cloned().collect()
    }
}

/// Solutions λ of λ(h)^p − λ(h^[p]) = χ(h)^p on a Cartan basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    pub points: Vec<Vec<Fq>>,
}

/// Enumerates Λ_χ. Toral bases (h^[p] a multiple of h) are solved
/// coordinatewise; otherwise all of F_q^rank is searched up to `bound`
/// points.
pub fn lambda_set(g: &LieSuperAlgebra, chi: &PChar, cartan: &[Elem], bound: usize) -> Result<WeightSet> {
    let f = &g.field;
    let p = f.p() as u64;
    let span = Span::from_vectors(f, g.dim(), cartan);
    let r = cartan.len();
    let mut pcoords = Vec::with_capacity(r);
    for h in cartan {
        pcoords.push(span.coords(&g.p_power(h)).ok_or_else(|| Error::Precondition("Cartan subalgebra is not closed under the p-map".into()))?);
    }
    let targets: Vec<Fq> = cartan.iter().map(|h| f.pow(chi.eval(g, h), p)).collect();
    let diagonal = (0..r).all(|i| (0..r).all(|j| i == j || pcoords[i][j].is_zero()));
    if diagonal {
        let mut points = vec![Vec::new()];
        for i in 0..r {
            let sols: Vec<Fq> = f.elements().filter(|&l| f.sub(f.pow(l, p), f.mul(pcoords[i][i], l)) == targets[i]).collect();
            points = points.into_iter().flat_map(|pt: Vec<Fq>| sols.iter().map(move |&s| [pt.clone(), vec![s]].concat())).collect();
        }
        return Ok(WeightSet { points });
    }
    let q = f.order() as usize;
    if (q as f64).powi(r as i32) > bound as f64 {
        return Err(Error::Unsupported(format!("weight search over {q}^{r} points exceeds the bound {bound}")));
    }
    let elems: Vec<Fq> = f.elements().collect();
    let mut points = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let lam: Vec<Fq> = idx.iter().map(|&i| elems[i]).collect();
        if (0..r).all(|i| f.sub(f.pow(lam[i], p), f.dot(&pcoords[i], &lam)) == targets[i]) {
            points.push(lam);
        }
        let mut k = 0;
        while k < r && idx[k] + 1 == q {
            idx[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
        idx[k] += 1;
    }
    Ok(WeightSet { points })
}

/// Structure of an induced module: the PBW context and complement size.
pub struct Induced {
    pub module: ModuleRep,
    pub ctx: UAlgebraCtx,
    pub complement: usize,
    /// Complement monomials indexing the first tensor factor.
    pub monomials: Vec<Mono>,
}

/// U_χ(g) ⊗_{U_χ(s)} W, with basis (complement monomial) ⊗ (basis of W),
/// the W index varying fastest. `w` acts by one matrix per element of
/// `sub_basis`, in that order.
pub fn induced_module(g: &LieSuperAlgebra, chi: &PChar, sub_basis: &[Elem], w: &ModuleRep, dim_bound: usize) -> Result<Induced> {
    let f = &g.field;
    let sub = g.subalgebra(sub_basis, (0..sub_basis.len()).map(|i| format!("s{i}")).collect())?;
    w.check(&sub, &chi.restrict(g, sub_basis)).map_err(|e| Error::Precondition(format!("inducing module is not a U_χ-module: {e}")))?;
    let (ctx, ncomp) = UAlgebraCtx::for_induction(g, chi, sub_basis)?;
    let d = g.dim();
    // ordered position → index into sub_basis
    let mut sub_pos = vec![usize::MAX; d];
    for k in ncomp..d {
        let col = ctx.to_original.column(k);
        sub_pos[k] = sub_basis.iter().position(|b| *b == col).unwrap();
    }
    let monos = ctx.monomials_over(&(0..ncomp).collect::<Vec<_>>());
    let dim = monos.len() * w.dim;
    if dim > dim_bound {
        return Err(Error::Unsupported(format!("induced module has dimension {dim}, above the bound {dim_bound}")));
    }
    let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let comp_mask = full_mask(&ctx, ncomp);
    let mut sub_cache: HashMap<(Mono, usize), Vec<Fq>> = HashMap::new();
    let mut ordered = Vec::with_capacity(d);
    for i in 0..d {
        let mut m = Matrix::zeros(f, dim, dim);
        for (a, &u) in monos.iter().enumerate() {
            let terms = ctx.mul_gen(i, u);
            for b in 0..w.dim {
                let col = a * w.dim + b;
                for &(t, c) in &terms.terms {
                    let cpart = t & comp_mask;
                    let spart = t & !comp_mask;
                    let row0 = index[&cpart] * w.dim;
                    let v = sub_cache
                        .entry((spart, b))
                        .or_insert_with(|| {
                            let mut v = vec![Fq::ZERO; w.dim];
                            v[b] = Fq::ONE;
                            for k in (ncomp..d).rev() {
                                for _ in 0..ctx.exp(spart, k) {
                                    v = w.action[sub_pos[k]].mul_vec(&v);
                                }
                            }
                            v
                        })
                        .clone();
                    for (r, &x) in v.iter().enumerate() {
                        if !x.is_zero() {
                            let e = m.get(row0 + r, col);
                            m.set(row0 + r, col, f.add(e, f.mul(c, x)));
                        }
                    }
                }
            }
        }
        ordered.push(m);
    }
    let parity = monos.iter().flat_map(|&u| (0..w.dim).map(move |b| (u, b))).map(|(u, b)| ctx.mono_parity(u) ^ w.parity[b]).collect();
    let module = ModuleRep::new(f, parity, to_original_basis(&ctx, &ordered)?, g.labels.clone())?;
    Ok(Induced { module, ctx, complement: ncomp, monomials: monos })
}

/// Bits of the first n generators.
fn full_mask(ctx: &UAlgebraCtx, n: usize) -> u128 {
    (0..n).fold(0u128, |a, i| a | ctx.mask(i))
}

/// Action of the original basis from the action of the ordered basis.
fn to_original_basis(ctx: &UAlgebraCtx, ordered: &[Matrix]) -> Result<Vec<Matrix>> {
    let f = &ctx.g.field;
    let binv = ctx.to_original.inverse().ok_or_else(|| Error::Precondition("PBW order is not a basis".into()))?;
    let d = ordered.len();
    let n = ordered.first().map(|m| m.rows()).unwrap_or(0);
    Ok((0..d)
        .map(|k| {
            let mut m = Matrix::zeros(f, n, n);
            for (i, o) in ordered.iter().enumerate() {
                let c = binv.get(i, k);
                if !c.is_zero() {
                    m.add_scaled(c, o);
                }
            }
            m
        })
        .collect())
}

/// Z_χ(λ): induced from the one-dimensional module of the Borel on which
/// h acts by λ and n⁺ by zero.
pub fn baby_verma(g: &LieSuperAlgebra, chi: &PChar, tri: &Triangular, lambda: &[Fq], dim_bound: usize) -> Result<Induced> {
    let f = &g.field;
    if lambda.len() != tri.cartan.len() {
        return Err(Error::Dimension("weight length differs from the Cartan rank".into()));
    }
    if tri.positive.iter().any(|x| g.elem_parity(x) == Some(0) && !chi.eval(g, x).is_zero()) {
        return Err(Error::Precondition("χ must vanish on the even positive root vectors".into()));
    }
    let borel = tri.borel();
    let mut action: Vec<Matrix> = lambda.iter().map(|&l| Matrix::scalar(f, 1, l)).collect();
    action.extend(tri.positive.iter().map(|_| Matrix::zeros(f, 1, 1)));
    let w = ModuleRep::new(f, vec![0], action, (0..borel.len()).map(|i| format!("b{i}")).collect())?;
    induced_module(g, chi, &borel, &w, dim_bound)
}

/// U_χ(g) acting on itself by left multiplication, on all PBW monomials in
/// mixed-radix order.
pub fn regular_module(g: &LieSuperAlgebra, chi: &PChar, dim_bound: usize) -> Result<(ModuleRep, UAlgebraCtx)> {
    regular_module_in(UAlgebraCtx::standard(g, chi)?, dim_bound)
}

/// The regular module over an existing context, e.g. one with a warm cache.
pub fn regular_module_in(ctx: UAlgebraCtx, dim_bound: usize) -> Result<(ModuleRep, UAlgebraCtx)> {
    let g = &ctx.g.clone();
    let n = ctx.reduced_dim();
    if n > dim_bound as u128 {
        return Err(Error::Unsupported(format!("U_χ has dimension {n}, above the bound {dim_bound}")));
    }
    let f = &g.field;
    let monos = ctx.all_monomials();
    let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut ordered = Vec::with_capacity(g.dim());
    for i in 0..g.dim() {
        let mut m = Matrix::zeros(f, monos.len(), monos.len());
        for (a, &u) in monos.iter().enumerate() {
            for &(t, c) in &ctx.mul_gen(i, u).terms {
                m.set(index[&t], a, c);
            }
        }
        ordered.push(m);
    }
    let parity = monos.iter().map(|&u| ctx.mono_parity(u)).collect();
    let module = ModuleRep::new(f, parity, to_original_basis(&ctx, &ordered)?, g.labels.clone())?;
    Ok((module, ctx))
}

/// The one-dimensional character η of a p-nilpotent subalgebra m with
/// η(x)^p − η(x^[p]) = χ(x)^p, resolved starting from elements whose p-th
/// power vanishes. Fails when η does not vanish on [m, m].
pub fn eta_character(g: &LieSuperAlgebra, chi: &PChar, m_basis: &[Elem]) -> Result<Vec<Fq>> {
    let f = &g.field;
    let p = f.p() as u64;
    let span = Span::from_vectors(f, g.dim(), m_basis);
    let n = m_basis.len();
    let mut eta: Vec<Option<Fq>> = m_basis.iter().map(|x| if g.elem_parity(x) == Some(1) { Some(Fq::ZERO) } else { None }).collect();
    let pc: Vec<Option<Vec<Fq>>> = m_basis
        .iter()
        .map(|x| if g.elem_parity(x) == Some(0) { span.coords(&g.p_power(x)) } else { None })
        .collect();
    loop {
        let mut progress = false;
        for i in 0..n {
            if eta[i].is_some() {
                continue;
            }
            let c = pc[i].as_ref().ok_or_else(|| Error::Precondition("m is not closed under the p-map".into()))?;
            if (0..n).all(|j| c[j].is_zero() || eta[j].is_some()) {
                let ep = (0..n).fold(Fq::ZERO, |a, j| f.add(a, f.mul(c[j], eta[j].unwrap_or(Fq::ZERO))));
                let chi_p = f.pow(chi.eval(g, &m_basis[i]), p);
                eta[i] = Some(f.frobenius_root(f.add(chi_p, ep)));
                progress = true;
            }
        }
        if eta.iter().all(|e| e.is_some()) {
            break;
        }
        if !progress {
            return Err(Error::Precondition("m is not p-nilpotent".into()));
        }
    }
    let eta: Vec<Fq> = eta.into_iter().map(|e| e.unwrap()).collect();
    for a in 0..n {
        for b in a..n {
            let c = span.coords(&g.bracket(&m_basis[a], &m_basis[b])).ok_or_else(|| Error::Precondition("m is not a subalgebra".into()))?;
            if !f.dot(&c, &eta).is_zero() {
                return Err(Error::Violation("η does not vanish on [m, m]".into()));
            }
        }
    }
    Ok(eta)
}

/// One-dimensional even module K_η of m.
pub fn one_dim_module(g: &LieSuperAlgebra, eta: &[Fq]) -> ModuleRep {
    let f = &g.field;
    ModuleRep { field: f.clone(), dim: 1, parity: vec![0], action: eta.iter().map(|&e| Matrix::scalar(f, 1, e)).collect(), labels: (0..eta.len()).map(|i| format!("m{i}")).collect() }
}

/// Explicit formulas for the baby Verma module of osp(1|2) with highest
/// weight λ and χ(e) = 0, on v_i = F^i ⊗ 1 (0 ≤ i < 2p, parity i mod 2).
pub fn osp12_verma_closed_form(g: &LieSuperAlgebra, lambda: Fq, chi_f: Fq) -> Result<ModuleRep> {
    let f = &g.field;
    let p = f.p() as usize;
    let n = 2 * p;
    let cf = f.pow(chi_f, p as u64);
    let idx = |s: &str| g.index_of(s).ok_or_else(|| Error::Precondition(format!("algebra has no basis element {s}")));
    let fi = |k: usize| f.from_i64(k as i64);
    let mut e = Matrix::zeros(f, n, n);
    let mut h = Matrix::zeros(f, n, n);
    let mut fm = Matrix::zeros(f, n, n);
    let mut ee = Matrix::zeros(f, n, n);
    let mut ff = Matrix::zeros(f, n, n);
    for i in 0..n {
        h.set(i, i, f.sub(lambda, fi(i)));
        if i + 2 < n {
            fm.set(i + 2, i, f.neg(Fq::ONE));
        } else {
            fm.set(i + 2 - n, i, cf);
        }
        if i + 1 < n {
            ff.set(i + 1, i, Fq::ONE);
        } else {
            ff.set(0, i, f.neg(cf));
        }
        if i >= 2 {
            let c = if i % 2 == 0 {
                let a = fi(i / 2);
                f.neg(f.mul(a, f.sub(f.add(lambda, Fq::ONE), a)))
            } else {
                let a = fi((i - 1) / 2);
                f.neg(f.mul(a, f.sub(lambda, a)))
            };
            e.set(i - 2, i, c);
        }
        if i >= 1 {
            let c = if i % 2 == 0 { f.neg(fi(i / 2)) } else { f.sub(lambda, fi((i - 1) / 2)) };
            ee.set(i - 1, i, c);
        }
    }
    let mut action = vec![Matrix::zeros(f, n, n); g.dim()];
    action[idx("e")?] = e;
    action[idx("h")?] = h;
    action[idx("f")?] = fm;
    action[idx("E")?] = ee;
    action[idx("F")?] = ff;
    ModuleRep::new(f, (0..n).map(|i| (i % 2) as u8).collect(), action, g.labels.clone())
}

/// Rewrites an engine-built osp(1|2) baby Verma module (basis f^a F^b ⊗ 1,
/// index 2a + b) in the basis v_i = (−1)^⌊i/2⌋ f^⌊i/2⌋ F^{i mod 2} ⊗ 1.
pub fn osp12_engine_in_closed_basis(generic: &ModuleRep) -> Result<ModuleRep> {
    let f = &generic.field;
    let d = Matrix::from_fn(f, generic.dim, generic.dim, |r, c| if r != c { Fq::ZERO } else if (r / 2) % 2 == 0 { Fq::ONE } else { f.neg(Fq::ONE) });
    generic.change_basis(&d, generic.parity.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::superlie::{gl, osp12, sl};

    #[test]
    fn osp12_closed_form_matches_engine() {
        for p in [3, 5, 7] {
            let f = FieldCtx::new(p, 1).unwrap();
            let g = osp12(&f).unwrap();
            let tri = Triangular::standard(&g).unwrap();
            let fidx = g.index_of("f").unwrap();
            for cf in [Fq::ZERO, Fq::ONE, f.from_i64(2)] {
                let mut chi = g.zero();
                chi[fidx] = cf;
                let chi = PChar::new(&g, chi).unwrap();
                for lambda in lambda_set(&g, &chi, &tri.cartan, 1000).unwrap().points {
                    let z = baby_verma(&g, &chi, &tri, &lambda, 600).unwrap();
                    assert_eq!(z.module.dim, 2 * p as usize);
                    z.module.check(&g, &chi).unwrap();
                    let closed = osp12_verma_closed_form(&g, lambda[0], cf).unwrap();
                    closed.check(&g, &chi).unwrap();
                    let engine = osp12_engine_in_closed_basis(&z.module).unwrap();
                    assert_eq!(engine.action, closed.action, "p={p} λ={:?}", lambda[0]);
                }
            }
        }
    }

    #[test]
    fn regular_module_is_a_module() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
        let (m, _) = regular_module(&g, &chi, 600).unwrap();
        assert_eq!(m.dim, 108);
        m.check(&g, &chi).unwrap();
        let g = gl(&f, 1, 1).unwrap();
        let chi = PChar::zero(&g);
        let (m, _) = regular_module(&g, &chi, 600).unwrap();
        assert_eq!(m.dim, 36);
        m.check(&g, &chi).unwrap();
    }

    #[test]
    fn regular_module_respects_bound() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = gl(&f, 2, 1).unwrap();
        assert!(matches!(regular_module(&g, &PChar::zero(&g), 600), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sl11_reduced_dim() {
        for p in [3, 5] {
            let f = FieldCtx::new(p, 1).unwrap();
            let g = sl(&f, 1, 1).unwrap();
            let ctx = UAlgebraCtx::standard(&g, &PChar::zero(&g)).unwrap();
            assert_eq!(ctx.reduced_dim(), 4 * p as u128);
        }
    }

    #[test]
    fn lambda_set_restricted_is_prime_field() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = gl(&f, 2, 1).unwrap();
        let ws = lambda_set(&g, &PChar::zero(&g), &g.cartan, 1000).unwrap();
        assert_eq!(ws.points.len(), 125);
        assert!(ws.points.iter().all(|l| l.iter().all(|&c| f.in_prime_field(c))));
    }

    #[test]
    fn gl21_baby_verma_checks() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 2, 1).unwrap();
        let chi = PChar::zero(&g);
        let tri = Triangular::standard(&g).unwrap();
        assert_eq!(tri.positive.len(), 3);
        let z = baby_verma(&g, &chi, &tri, &[Fq(1), Fq(0), Fq(2)], 600).unwrap();
        assert_eq!(z.module.dim, 3 * 4);
        z.module.check(&g, &chi).unwrap();
    }

    #[test]
    fn eta_on_negative_part() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
        let m = vec![g.basis_elem(g.index_of("f").unwrap())];
        assert_eq!(eta_character(&g, &chi, &m).unwrap(), vec![Fq::ONE]);
    }
}
