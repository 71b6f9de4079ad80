//! The regular module: indecomposable summands, simple heads, radical and
//! Cartan bookkeeping.

use std::collections::HashMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{poly, Fq, Matrix, Span};
use crate::pbw::{regular_module_in, Mono, ModuleRep, UAlgebraCtx};
use crate::superlie::{LieSuperAlgebra, PChar};

use super::endo::{endo_superalgebra, hom_space, SchurType};
use super::meataxe::homogeneous_basis;
use super::series::{composition_factors, Catalog, CompSeries};

/// Settling weight before a summand counts as indecomposable: a round
/// whose characteristic polynomial is a power of one linear factor adds
/// `LINEAR_WEIGHT`, a power of one nonlinear factor adds 1.
const SETTLE_ROUNDS: usize = 48;
const LINEAR_WEIGHT: usize = 3;
const MAX_ROUNDS: usize = 400;

/// Right multiplication on U_χ(g) by a random even element, in the PBW
/// basis: column m is m·u.
struct RightMultiplier<'a> {
    ctx: &'a UAlgebraCtx,
    left: Vec<Matrix>,
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    /// (first generator, index of the remaining monomial), degree order.
    plan: Vec<(usize, usize, usize)>,
}

impl<'a> RightMultiplier<'a> {
    fn new(ctx: &'a UAlgebraCtx, regular: &ModuleRep) -> RightMultiplier<'a> {
        let monos = ctx.all_monomials();
        let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let left = (0..ctx.dim_g()).map(|i| regular.act(&ctx.to_original.column(i))).collect();
        let mut order: Vec<usize> = (0..monos.len()).collect();
        order.sort_by_key(|&i| ctx.word(monos[i]).len());
        let plan = order
            .into_iter()
            .filter(|&i| monos[i] != 0)
            .map(|i| {
                let m = monos[i];
                let j = (0..ctx.dim_g()).find(|&j| ctx.exp(m, j) > 0).unwrap();
                let rest = ctx.with_exp(m, j, ctx.exp(m, j) - 1);
                (i, j, index[&rest])
            })
            .collect();
        RightMultiplier { ctx, left, monos, index, plan }
    }

    fn random_even(&self, rng: &mut ChaCha8Rng) -> Vec<Fq> {
        let f = &self.ctx.g.field;
        self.monos.iter().map(|&m| if self.ctx.mono_parity(m) == 0 { f.random(rng) } else { Fq::ZERO }).collect()
    }

    /// Matrix of v ↦ v·u.
    fn matrix(&self, u: &[Fq]) -> Matrix {
        let n = self.monos.len();
        let mut cols: Vec<Vec<Fq>> = vec![Vec::new(); n];
        cols[self.index[&0]] = u.to_vec();
        for &(i, j, rest) in &self.plan {
            cols[i] = self.left[j].mul_vec(&cols[rest]);
        }
        Matrix::from_columns(&self.ctx.g.field, n, &cols)
    }
}

/// Summand bases of a decomposition of the regular module into graded
/// indecomposables.
pub fn decompose_regular(regular: &ModuleRep, ctx: &UAlgebraCtx, seed: u64) -> Result<Vec<Vec<Vec<Fq>>>> {
    let f = regular.field.clone();
    let n = regular.dim;
    let rm = RightMultiplier::new(ctx, regular);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // (basis columns, dual rows, settling weight)
    let mut blocks: Vec<(Vec<Vec<Fq>>, Matrix, usize)> =
        vec![((0..n).map(|i| (0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect()).collect(), Matrix::identity(&f, n), 0)];
    for _ in 0..MAX_ROUNDS {
        if blocks.iter().all(|b| b.2 >= SETTLE_ROUNDS || b.0.len() == 1) {
            return Ok(blocks.into_iter().map(|b| b.0).collect());
        }
        let r = rm.matrix(&rm.random_even(&mut rng));
        let mut next = Vec::new();
        for (basis, dual, settled) in blocks {
            if settled >= SETTLE_ROUNDS || basis.len() == 1 {
                next.push((basis, dual, settled));
                continue;
            }
            let d = basis.len();
            let images: Vec<Vec<Fq>> = basis.iter().map(|b| r.mul_vec(b)).collect();
            let phi = Matrix::from_fn(&f, d, d, |i, j| f.dot(dual.row(i), &images[j]));
            let factors = poly::factor(&f, &phi.charpoly(), &mut rng);
            if factors.len() == 1 {
                let inc = if factors[0].0.len() == 2 { LINEAR_WEIGHT } else { 1 };
                next.push((basis, dual, settled + inc));
                continue;
            }
            let mut pieces: Vec<Vec<Vec<Fq>>> = Vec::new();
            for (q, e) in &factors {
                let qe = (1..*e).fold(q.clone(), |acc, _| poly::mul(&f, &acc, q));
                let ker = phi.eval_poly(&qe).kernel_basis();
                let amb: Vec<Vec<Fq>> = ker
                    .iter()
                    .map(|k| {
                        let mut v = vec![Fq::ZERO; n];
                        for (t, &c) in k.iter().enumerate() {
                            f.axpy(&mut v, c, &basis[t]);
                        }
                        v
                    })
                    .collect();
                let hom = homogeneous_basis(regular, &amb);
                if hom.len() != amb.len() {
                    return Err(Error::Violation("generalized eigenspace of an even endomorphism is not graded".into()));
                }
                pieces.push(hom);
            }
            let coords: Vec<Vec<Fq>> = pieces.iter().flatten().map(|v| dual.mul_vec(v)).collect();
            let w = Matrix::from_columns(&f, d, &coords);
            let winv = w.inverse().ok_or_else(|| Error::Violation("Fitting pieces do not span the summand".into()))?;
            let new_dual = winv.mul(&dual);
            let mut at = 0;
            for piece in pieces {
                let k = piece.len();
                let rows: Vec<usize> = (at..at + k).collect();
                let cols: Vec<usize> = (0..n).collect();
                next.push((piece, new_dual.submatrix(&rows, &cols), 0));
                at += k;
            }
        }
        blocks = next;
    }
    Err(Error::Unknown(format!("regular module decomposition did not settle in {MAX_ROUNDS} rounds")))
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleSummary {
    pub dim: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub schur: SchurType,
    /// Composition multiplicity in the regular module.
    pub regular_multiplicity: usize,
    /// Number of summands with this head.
    pub pim_count: usize,
    pub pim_dim: usize,
    /// dim S / dim End(S).
    pub expected_pim_count: usize,
    pub pim_endo: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanData {
    pub dim_u: usize,
    pub simples: Vec<SimpleSummary>,
    /// dim of the image of U_χ(g) in ⊕ End(S).
    pub semisimple_quotient_dim: usize,
    /// Σ dim² / dim End(S) over the simples.
    pub wedderburn_sum: usize,
    pub semisimple: bool,
    /// Σ dim P · n = dim U.
    pub pim_identity: bool,
}

/// Regular module analysis: summands, their heads and composition
/// factors, and the radical.
pub struct RegularAnalysis {
    pub regular: ModuleRep,
    pub ctx: UAlgebraCtx,
    pub catalog: Catalog,
    pub summands: Vec<ModuleRep>,
    pub heads: Vec<usize>,
    pub series: Vec<CompSeries>,
    pub data: CartanData,
}

pub fn analyze_regular(g: &LieSuperAlgebra, chi: &PChar, seed: u64, dim_bound: usize) -> Result<RegularAnalysis> {
    analyze_regular_cached(g, chi, seed, dim_bound, None)
}

/// As `analyze_regular`, reading and then refreshing the PBW product cache
/// in `cache` when given.
pub fn analyze_regular_cached(g: &LieSuperAlgebra, chi: &PChar, seed: u64, dim_bound: usize, cache: Option<&Path>) -> Result<RegularAnalysis> {
    let ctx = UAlgebraCtx::standard(g, chi)?;
    if let Some(dir) = cache {
        ctx.load_cache(dir);
    }
    let (regular, ctx) = regular_module_in(ctx, dim_bound)?;
    if let Some(dir) = cache {
        ctx.save_cache(dir)?;
    }
    let bases = decompose_regular(&regular, &ctx, seed)?;
    let mut catalog = Catalog::new(&g.parity);
    let mut summands = Vec::new();
    let mut series = Vec::new();
    for b in &bases {
        let p = regular.on_subspace(b)?;
        series.push(composition_factors(&p, &mut catalog, seed)?);
        summands.push(p);
    }
    let mut heads = Vec::new();
    for p in &summands {
        let mut found = Vec::new();
        for (c, s) in catalog.classes.iter().enumerate() {
            let tops = hom_space(p, &s.module, &g.parity, 0)?.len() + hom_space(p, &s.module, &g.parity, 1)?.len();
            if tops > 0 {
                found.push(c);
            }
        }
        if found.len() != 1 {
            return Err(Error::Violation(format!("summand of dimension {} has {} simple heads", p.dim, found.len())));
        }
        heads.push(found[0]);
    }
    let mut simples = Vec::new();
    let mut pim_identity_sum = 0;
    for (c, s) in catalog.classes.iter().enumerate() {
        let mine: Vec<usize> = (0..summands.len()).filter(|&i| heads[i] == c).collect();
        let dims: Vec<usize> = mine.iter().map(|&i| summands[i].dim).collect();
        let pim_dim = dims.first().copied().unwrap_or(0);
        if dims.iter().any(|&d| d != pim_dim) {
            return Err(Error::Violation("summands with the same head have different dimensions".into()));
        }
        let pim_endo = match mine.first() {
            Some(&i) => {
                let e = endo_superalgebra(&summands[i], &g.parity)?;
                (e.dim_even, e.dim_odd)
            }
            None => (0, 0),
        };
        pim_identity_sum += pim_dim * mine.len();
        let m = &s.module;
        simples.push(SimpleSummary {
            dim: m.dim,
            dim_even: m.dim_even(),
            dim_odd: m.dim_odd(),
            schur: s.endo.schur,
            regular_multiplicity: series.iter().map(|cs| cs.multiplicity(c)).sum(),
            pim_count: mine.len(),
            pim_dim,
            expected_pim_count: m.dim / (s.endo.dim_even + s.endo.dim_odd),
            pim_endo,
        });
    }
    let wedderburn_sum = catalog.classes.iter().map(|c| c.module.dim * c.module.dim / (c.endo.dim_even + c.endo.dim_odd)).sum();
    let modules: Vec<&ModuleRep> = catalog.classes.iter().map(|c| &c.module).collect();
    let image = semisimple_quotient_dim(&ctx, &modules);
    let dim_u = regular.dim;
    let data = CartanData { dim_u, simples, semisimple_quotient_dim: image, wedderburn_sum, semisimple: image == dim_u, pim_identity: pim_identity_sum == dim_u };
    Ok(RegularAnalysis { regular, ctx, catalog, summands, heads, series, data })
}

/// dim of the image of U_χ(g) in ⊕ End(S); the radical is the kernel.
pub fn semisimple_quotient_dim(ctx: &UAlgebraCtx, simples: &[&ModuleRep]) -> usize {
    let f = &ctx.g.field;
    let total: usize = simples.iter().map(|s| s.dim * s.dim).sum();
    let gens: Vec<Vec<Matrix>> = simples.iter().map(|s| (0..ctx.dim_g()).map(|i| s.act(&ctx.to_original.column(i))).collect()).collect();
    let mut monos = ctx.all_monomials();
    monos.sort_by_key(|&m| ctx.word(m).len());
    let mut images: HashMap<Mono, Vec<Matrix>> = HashMap::new();
    let mut span = Span::new(f, total);
    for m in monos {
        let img: Vec<Matrix> = if m == 0 {
            simples.iter().map(|s| Matrix::identity(f, s.dim)).collect()
        } else {
            let j = (0..ctx.dim_g()).find(|&j| ctx.exp(m, j) > 0).unwrap();
            let rest = ctx.with_exp(m, j, ctx.exp(m, j) - 1);
            images[&rest].iter().zip(&gens).map(|(r, gs)| gs[j].mul(r)).collect()
        };
        let flat: Vec<Fq> = img.iter().flat_map(|x| x.data().to_vec()).collect();
        span.insert(&flat);
        images.insert(m, img);
        if span.dim() == total {
            break;
        }
    }
    span.dim()
}

/// dim P(L) = Σ_μ [Z(μ) : L] · dim Z(μ), over a complete family of baby
/// Verma modules with their composition series in one catalog, doubled for
/// type Q (P(L) then carries both Z(μ) and ΠZ(μ) filtrations).
pub fn pim_dims_by_reciprocity(vermas: &[(usize, CompSeries)], catalog: &Catalog) -> Vec<usize> {
    catalog
        .classes
        .iter()
        .enumerate()
        .map(|(c, cl)| {
            let base: usize = vermas.iter().map(|(d, cs)| cs.multiplicity(c) * d).sum();
            if cl.endo.schur == SchurType::Q {
                2 * base
            } else {
                base
            }
        })
        .collect()
}

/// Σ dim L · dim P(L) over type M plus Σ (dim L / 2) · dim P(L) over type Q.
pub fn pim_dim_sum(catalog: &Catalog, pim_dims: &[usize]) -> usize {
    catalog.classes.iter().zip(pim_dims).map(|(c, &d)| if c.endo.schur == SchurType::Q { c.module.dim / 2 * d } else { c.module.dim * d }).sum()
}

/// Semisimplicity of U_χ(g) from the regular module.
pub fn is_semisimple(g: &LieSuperAlgebra, chi: &PChar, seed: u64, dim_bound: usize) -> Result<bool> {
    Ok(analyze_regular(g, chi, seed, dim_bound)?.data.semisimple)
}
