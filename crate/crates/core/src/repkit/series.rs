//! Composition series and a catalog of simple modules up to isomorphism
//! and parity shift.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Fq, Matrix};
use crate::pbw::ModuleRep;

use super::endo::{endo_superalgebra, find_isomorphism, EndoData};
use super::meataxe::{is_simple, Simplicity};

const SAMPLE_SEED: u64 = 0x51_4d_50_4c_45;
const SAMPLE_SIZE: usize = 16;

/// Isomorphism invariants of a simple module (unchanged by parity shift).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// (min, max) of the even and odd dimensions.
    pub dims: (usize, usize),
    pub endo: (usize, usize),
    pub traces: Vec<Vec<u32>>,
}

/// Fixed sample of even elements of U(g): sums of products of at most
/// three basis elements.
fn trace_sample(parity_of_gen: &[u8], field: &crate::exactlin::Field) -> Vec<Vec<(Fq, Vec<usize>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let d = parity_of_gen.len();
    (0..SAMPLE_SIZE)
        .map(|_| {
            (0..3)
                .map(|_| loop {
                    let len = rng.gen_range(1..=3);
                    let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..d)).collect();
                    if w.iter().map(|&i| parity_of_gen[i] as usize).sum::<usize>() % 2 == 0 {
                        break (field.random_nonzero(&mut rng), w);
                    }
                })
                .collect()
        })
        .collect()
}

pub fn fingerprint(m: &ModuleRep, parity_of_gen: &[u8], endo: &EndoData) -> Fingerprint {
    let f = &m.field;
    let traces = trace_sample(parity_of_gen, f)
        .iter()
        .map(|terms| {
            let mut acc = Matrix::zeros(f, m.dim, m.dim);
            for (c, w) in terms {
                let mut prod = Matrix::identity(f, m.dim);
                for &i in w {
                    prod = prod.mul(&m.action[i]);
                }
                acc.add_scaled(*c, &prod);
            }
            f.coeffs(acc.trace())
        })
        .collect();
    let (e, o) = (m.dim_even(), m.dim_odd());
    Fingerprint { dim: m.dim, dims: (e.min(o), e.max(o)), endo: (endo.dim_even, endo.dim_odd), traces }
}

#[derive(Clone, Debug)]
pub struct SimpleClass {
    pub module: ModuleRep,
    pub endo: EndoData,
    pub fingerprint: Fingerprint,
}

/// Simple modules seen so far, one representative per class.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub parity_of_gen: Vec<u8>,
    pub classes: Vec<SimpleClass>,
}

impl Catalog {
    pub fn new(parity_of_gen: &[u8]) -> Catalog {
        Catalog { parity_of_gen: parity_of_gen.to_vec(), classes: Vec::new() }
    }

    /// Class index of a simple module, adding a class when it is new.
    pub fn classify(&mut self, s: &ModuleRep) -> Result<usize> {
        Ok(self.classify_with_parity(s)?.0)
    }

    /// Class index together with the parity of an isomorphism onto the
    /// representative; even is preferred, so type Q classes always report 0.
    pub fn classify_with_parity(&mut self, s: &ModuleRep) -> Result<(usize, u8)> {
        let endo = endo_superalgebra(s, &self.parity_of_gen)?;
        let fp = fingerprint(s, &self.parity_of_gen, &endo);
        for (i, c) in self.classes.iter().enumerate() {
            if c.fingerprint == fp {
                if let Some((par, _)) = find_isomorphism(s, &c.module, &self.parity_of_gen)? {
                    return Ok((i, par));
                }
            }
        }
        self.classes.push(SimpleClass { module: s.clone(), endo, fingerprint: fp });
        Ok((self.classes.len() - 1, 0))
    }
}

/// Multiplicities of simple classes in one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompSeries {
    /// (class index in the catalog, multiplicity), sorted by class index.
    pub factors: Vec<(usize, usize)>,
}

impl CompSeries {
    pub fn multiplicity(&self, class: usize) -> usize {
        self.factors.iter().find(|f| f.0 == class).map(|f| f.1).unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Seed-independent summary: (fingerprint, multiplicity), sorted.
    pub fn summary(&self, catalog: &Catalog) -> Vec<(Fingerprint, usize)> {
        let mut out: Vec<(Fingerprint, usize)> = self.factors.iter().map(|&(c, m)| (catalog.classes[c].fingerprint.clone(), m)).collect();
        out.sort();
        out
    }
}

/// Simple subquotients of M, found by recursive MeatAxe splitting.
pub fn simple_subquotients(m: &ModuleRep, seed: u64) -> Result<Vec<ModuleRep>> {
    let mut stack = vec![m.clone()];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        if x.dim == 0 {
            continue;
        }
        match is_simple(&x, seed)? {
            Simplicity::Simple(_) => out.push(x),
            Simplicity::NotSimple(sub) => {
                stack.push(x.quotient(&sub)?);
                stack.push(x.on_subspace(&sub)?);
            }
            Simplicity::Unknown { attempts } => {
                return Err(Error::Unknown(format!("irreducibility test inconclusive after {attempts} elements on a {}-dimensional module", x.dim)));
            }
        }
    }
    Ok(out)
}

pub fn composition_factors(m: &ModuleRep, catalog: &mut Catalog, seed: u64) -> Result<CompSeries> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    let mut total = 0;
    for s in simple_subquotients(m, seed)? {
        total += s.dim;
        let c = catalog.classify(&s)?;
        match counts.iter_mut().find(|x| x.0 == c) {
            Some(x) => x.1 += 1,
            None => counts.push((c, 1)),
        }
    }
    debug_assert_eq!(total, m.dim);
    counts.sort();
    Ok(CompSeries { factors: counts })
}

/// Multiplicities of (class, parity shift) pairs in one module.
pub fn graded_composition_factors(m: &ModuleRep, catalog: &mut Catalog, seed: u64) -> Result<Vec<((usize, u8), usize)>> {
    let mut counts: Vec<((usize, u8), usize)> = Vec::new();
    for s in simple_subquotients(m, seed)? {
        let c = catalog.classify_with_parity(&s)?;
        match counts.iter_mut().find(|x| x.0 == c) {
            Some(x) => x.1 += 1,
            None => counts.push((c, 1)),
        }
    }
    counts.sort();
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::pbw::{baby_verma, Triangular};
    use crate::superlie::{osp12, PChar};

    #[test]
    fn restricted_verma_factors() {
        let p = 5u32;
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::zero(&g);
        let tri = Triangular::standard(&g).unwrap();
        let mut cat = Catalog::new(&g.parity);
        let mut series = Vec::new();
        for lam in 0..p {
            let z = baby_verma(&g, &chi, &tri, &[f.from_i64(lam as i64)], 600).unwrap();
            series.push(composition_factors(&z.module, &mut cat, 11).unwrap());
        }
        assert_eq!(cat.classes.len(), p as usize);
        for lam in 0..p as usize {
            let mut dims: Vec<usize> = series[lam].factors.iter().flat_map(|&(c, m)| vec![cat.classes[c].module.dim; m]).collect();
            dims.sort();
            let mut want = vec![2 * lam + 1, 2 * (p as usize - lam - 1) + 1];
            want.sort();
            assert_eq!(dims, want);
        }
    }

    #[test]
    fn graded_factors_split_the_middle_weight() {
        let p = 5u32;
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::zero(&g);
        let tri = Triangular::standard(&g).unwrap();
        let mut cat = Catalog::new(&g.parity);
        let mid = (p as i64 - 1) / 2;
        let z = baby_verma(&g, &chi, &tri, &[f.from_i64(mid)], 600).unwrap();
        let graded = graded_composition_factors(&z.module, &mut cat, 5).unwrap();
        assert_eq!(cat.classes.len(), 1);
        assert_eq!(graded.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(graded[0].0 .1 ^ graded[1].0 .1, 1);
    }

    #[test]
    fn seed_stability() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::zero(&g);
        let tri = Triangular::standard(&g).unwrap();
        let z = baby_verma(&g, &chi, &tri, &[Fq(1)], 600).unwrap();
        let summaries: Vec<_> = [1u64, 2, 3]
            .iter()
            .map(|&s| {
                let mut cat = Catalog::new(&g.parity);
                let cs = composition_factors(&z.module, &mut cat, s).unwrap();
                cs.summary(&cat)
            })
            .collect();
        assert_eq!(summaries[0], summaries[1]);
        assert_eq!(summaries[1], summaries[2]);
    }
}
