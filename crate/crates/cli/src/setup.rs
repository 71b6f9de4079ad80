//! Field, algebra, triangular decomposition and p-character from a config.

use modsuper::error::{Error, Result};
use modsuper::exactlin::{Field, FieldCtx, Fq, Matrix};
use modsuper::pbw::Triangular;
use modsuper::reduction::regular_nilpotent;
use modsuper::superlie::{chi_from_element, construct, toral_value, Elem, Family, LieSuperAlgebra, PChar};

use crate::config::{ChiSpec, ExplicitValue, RunConfig};

pub fn field(cfg: &RunConfig) -> Result<Field> {
    FieldCtx::new(cfg.p, cfg.k)
}

pub fn algebra(cfg: &RunConfig, f: &Field) -> Result<LieSuperAlgebra> {
    construct(&cfg.family, cfg.dims.0, cfg.dims.1, f)
}

/// The standard decomposition, or h1 ⊕ E12 ⊕ E21 for sl(1|1), whose
/// Cartan has no roots.
pub fn triangular(g: &LieSuperAlgebra) -> Result<Triangular> {
    match Triangular::standard(g) {
        Ok(t) => Ok(t),
        Err(_) if g.family == Family::Sl && g.shape == (1, 1) => {
            let at = |l: &str| g.index_of(l).map(|i| g.basis_elem(i)).ok_or_else(|| Error::Violation(format!("sl(1|1) has no {l}")));
            Ok(Triangular { cartan: vec![at("h1")?], positive: vec![at("E1,2")?], negative: vec![at("E2,1")?] })
        }
        Err(e) => Err(e),
    }
}

/// Nilpotent element of gl or sl with the given Jordan types on V_0 and V_1.
pub fn nilpotent_of_type(g: &LieSuperAlgebra, pi0: &[usize], pi1: &[usize]) -> Result<Elem> {
    if !matches!(g.family, Family::Gl | Family::Sl) {
        return Err(Error::Usage("partition χ needs family gl or sl".into()));
    }
    let model = g.model.as_ref().ok_or_else(|| Error::Usage("algebra has no matrix model".into()))?;
    let n = model.vdim();
    let mut x = Matrix::zeros(&g.field, n, n);
    let mut at = 0;
    for &k in pi0.iter().chain(pi1) {
        for j in 0..k - 1 {
            x.set(at + j, at + j + 1, Fq::ONE);
        }
        at += k;
    }
    if at != n {
        return Err(Error::Usage(format!("partitions cover {at} of {n} basis vectors")));
    }
    model.coords(&x).ok_or_else(|| Error::Violation("nilpotent matrix outside the algebra".into()))
}

/// Small integer vectors a, ordered by max |a_i| and then lexicographically.
fn small_vectors(r: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=bound).flat_map(move |b| {
        let width = (2 * b + 1) as u64;
        (0..width.pow(r as u32)).filter_map(move |mut code| {
            let mut a = vec![0i64; r];
            for x in a.iter_mut() {
                *x = (code % width) as i64 - b;
                code /= width;
            }
            (a.iter().map(|x| x.abs()).max() == Some(b)).then_some(a)
        })
    })
}

/// χ = c·Σ a_i h_i^*: zero on root vectors, with the smallest integer
/// vector a for which χ([e, f]) ≠ 0 on every bracket of a positive with a
/// negative root vector landing in the Cartan.
pub fn regular_semisimple(g: &LieSuperAlgebra, tri: &Triangular) -> Result<PChar> {
    let f = &g.field;
    let c = toral_value(f).ok_or_else(|| Error::Usage("ssregular needs k ≥ 2: over the prime field λ^p − λ = c has no root for c ≠ 0".into()))?;
    let d = g.dim();
    let r = tri.cartan.len();
    let basis: Vec<Elem> = tri.cartan.iter().chain(&tri.positive).chain(&tri.negative).cloned().collect();
    let binv = Matrix::from_columns(f, d, &basis).inverse().ok_or_else(|| Error::Unsupported("Cartan and root vectors do not form a basis".into()))?;
    let mut coroots: Vec<Vec<Fq>> = Vec::new();
    for e in &tri.positive {
        for n in &tri.negative {
            let h = binv.mul_vec(&g.bracket(e, n));
            if h[r..].iter().all(|x| x.is_zero()) && h[..r].iter().any(|x| !x.is_zero()) {
                coroots.push(h[..r].to_vec());
            }
        }
    }
    let a = small_vectors(r, f.p() as i64)
        .map(|a| a.iter().map(|&x| f.from_i64(x)).collect::<Vec<Fq>>())
        .find(|a| a.iter().any(|x| !x.is_zero()) && coroots.iter().all(|h| !f.dot(a, h).is_zero()))
        .ok_or_else(|| Error::Unsupported("no regular semisimple character with small coefficients".into()))?;
    let values = (0..d).map(|j| f.mul(c, f.dot(&a, &binv.column(j)[..r]))).collect();
    PChar::new(g, values)
}

/// The p-character, and its element when it is built from one.
pub fn chi(g: &LieSuperAlgebra, tri: &Triangular, spec: &ChiSpec) -> Result<(PChar, Option<Elem>)> {
    let f = &g.field;
    match spec {
        ChiSpec::Zero => Ok((PChar::zero(g), Some(g.zero()))),
        ChiSpec::NilRegular => {
            let x = regular_nilpotent(g)?;
            Ok((chi_from_element(g, &x)?, Some(x)))
        }
        ChiSpec::SsRegular => Ok((regular_semisimple(g, tri)?, None)),
        ChiSpec::Explicit(items) => {
            let mut v = g.zero();
            for (label, val) in items {
                let i = g.index_of(label).ok_or_else(|| Error::Usage(format!("no basis element {label}; labels are {}", g.labels.join(" "))))?;
                v[i] = match val {
                    ExplicitValue::Int(n) => f.from_i64(*n),
                    ExplicitValue::Toral => toral_value(f).ok_or_else(|| Error::Usage("value t needs k ≥ 2".into()))?,
                };
            }
            Ok((PChar::new(g, v)?, None))
        }
        ChiSpec::Partitions(a, b) => {
            let x = nilpotent_of_type(g, a, b)?;
            Ok((chi_from_element(g, &x)?, Some(x)))
        }
    }
}
