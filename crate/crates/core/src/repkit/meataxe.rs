//! Randomized irreducibility testing of supermodules.
//!
//! The parity operator is added to the generating set, so every invariant
//! subspace found here is a graded submodule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactlin::{poly, Fq, Matrix, MatrixJson, Span};
use crate::pbw::ModuleRep;

/// Random algebra elements tried before giving up.
pub const MEATAXE_BUDGET: usize = 64;
/// Largest degree of a characteristic-polynomial factor tried.
const MAX_FACTOR_DEG: usize = 12;
/// Largest dimension checked by exhaustive spinning.
pub const EXHAUSTIVE_DIM: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub enum Certificate {
    /// A module of dimension at most one.
    Trivial,
    /// q(a) has kernel of dimension deg q, a kernel vector spins to the whole
    /// module and a kernel vector of q(a)^T spins to the whole dual.
    Norton { element: MatrixJson, factor: Vec<Vec<u32>>, kernel_vector: Vec<Vec<u32>>, dual_vector: Vec<Vec<u32>> },
    /// Every nonzero homogeneous vector spins to the whole module.
    Exhaustive { vectors: usize },
}

#[derive(Clone, Debug)]
pub enum Simplicity {
    Simple(Certificate),
    /// Homogeneous basis of a proper nonzero submodule.
    NotSimple(Vec<Vec<Fq>>),
    Unknown { attempts: usize },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple(_))
    }
}

/// Action matrices followed by the parity operator.
pub fn generators(m: &ModuleRep) -> Vec<Matrix> {
    let f = &m.field;
    let mut gens: Vec<Matrix> = m.action.iter().filter(|a| !a.is_zero()).cloned().collect();
    gens.push(Matrix::from_fn(f, m.dim, m.dim, |r, c| if r != c { Fq::ZERO } else if m.parity[r] == 0 { Fq::ONE } else { f.neg(Fq::ONE) }));
    gens
}

/// Smallest subspace containing `start` and stable under `gens`.
pub fn spin(gens: &[Matrix], start: &[Vec<Fq>]) -> Span {
    let n = gens.first().map(|g| g.rows()).unwrap_or_else(|| start.first().map(|v| v.len()).unwrap_or(0));
    let f = gens[0].field();
    let mut span = Span::new(f, n);
    let mut queue = Vec::new();
    for v in start {
        if span.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if span.dim() == n {
            break;
        }
        for g in gens {
            let w = g.mul_vec(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span
}

/// Even and odd components of each vector, reduced to a basis.
pub fn homogeneous_basis(m: &ModuleRep, vecs: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    let mut span = Span::new(&m.field, m.dim);
    for v in vecs {
        for par in 0..2u8 {
            let part: Vec<Fq> = v.iter().enumerate().map(|(i, &c)| if m.parity[i] == par { c } else { Fq::ZERO }).collect();
            span.insert(&part);
        }
    }
    span.basis().to_vec()
}

/// Annihilator in M of a subspace of the dual.
fn annihilator(f: &crate::exactlin::Field, n: usize, dual: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    Matrix::from_fn(f, dual.len(), n, |r, c| dual[r][c]).kernel_basis()
}

/// Pool of random algebra elements built from products of generators.
pub struct RandomElements {
    pool: Vec<Matrix>,
    rng: ChaCha8Rng,
}

impl RandomElements {
    pub fn new(gens: &[Matrix], seed: u64) -> RandomElements {
        RandomElements { pool: gens.to_vec(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next(&mut self) -> Matrix {
        let f = self.pool[0].field().clone();
        let n = self.pool.len();
        let (i, j) = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
        let prod = self.pool[i].mul(&self.pool[j]);
        let mut a = prod.clone();
        for _ in 0..4 {
            let k = self.rng.gen_range(0..n);
            let c = f.random(&mut self.rng);
            a.add_scaled(c, &self.pool[k]);
        }
        if self.pool.len() < 40 {
            self.pool.push(prod);
        } else {
            let k = self.rng.gen_range(0..self.pool.len());
            self.pool[k] = prod;
        }
        a
    }
}

/// Norton's irreducibility test with a seeded element sequence.
pub fn is_simple(m: &ModuleRep, seed: u64) -> Result<Simplicity> {
    is_simple_with_budget(m, seed, MEATAXE_BUDGET)
}

pub fn is_simple_with_budget(m: &ModuleRep, seed: u64, budget: usize) -> Result<Simplicity> {
    let f = m.field.clone();
    let n = m.dim;
    if n <= 1 {
        return Ok(if n == 1 { Simplicity::Simple(Certificate::Trivial) } else { Simplicity::NotSimple(vec![]) });
    }
    let gens = generators(m);
    let gens_t: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let mut elements = RandomElements::new(&gens, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut tried = 0;
    while tried < budget {
        tried += 1;
        let a = elements.next();
        let mut factors = poly::factor(&f, &a.charpoly(), &mut rng);
        factors.sort_by_key(|(q, _)| q.len());
        for (q, _) in factors.iter().filter(|(q, _)| q.len() <= MAX_FACTOR_DEG + 1).take(6) {
            let qa = a.eval_poly(q);
            let ker = qa.kernel_basis();
            let sub = spin(&gens, &ker[..1]);
            if sub.dim() < n {
                return Ok(Simplicity::NotSimple(homogeneous_basis(m, sub.basis())));
            }
            if ker.len() != q.len() - 1 {
                continue;
            }
            let ker_t = qa.transpose().kernel_basis();
            let dual = spin(&gens_t, &ker_t[..1]);
            if dual.dim() < n {
                return Ok(Simplicity::NotSimple(homogeneous_basis(m, &annihilator(&f, n, dual.basis()))));
            }
            let coeffs = |v: &[Fq]| v.iter().map(|&c| f.coeffs(c)).collect::<Vec<Vec<u32>>>();
            return Ok(Simplicity::Simple(Certificate::Norton { element: a.to_json(), factor: coeffs(q), kernel_vector: coeffs(&ker[0]), dual_vector: coeffs(&ker_t[0]) }));
        }
    }
    if n <= EXHAUSTIVE_DIM {
        return exhaustive(m, &gens);
    }
    Ok(Simplicity::Unknown { attempts: tried })
}

/// Spins every nonzero homogeneous vector with leading coefficient one.
fn exhaustive(m: &ModuleRep, gens: &[Matrix]) -> Result<Simplicity> {
    let f = &m.field;
    let q = f.order() as usize;
    let elems: Vec<Fq> = f.elements().collect();
    let mut count = 0;
    for par in 0..2u8 {
        let idx: Vec<usize> = (0..m.dim).filter(|&i| m.parity[i] == par).collect();
        let k = idx.len();
        for lead in 0..k {
            let free = k - lead - 1;
            for code in 0..q.pow(free as u32) {
                let mut v = vec![Fq::ZERO; m.dim];
                v[idx[lead]] = Fq::ONE;
                let mut c = code;
                for t in 0..free {
                    v[idx[lead + 1 + t]] = elems[c % q];
                    c /= q;
                }
                count += 1;
                let s = spin(gens, &[v]);
                if s.dim() < m.dim {
                    return Ok(Simplicity::NotSimple(homogeneous_basis(m, s.basis())));
                }
            }
        }
    }
    Ok(Simplicity::Simple(Certificate::Exhaustive { vectors: count }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::pbw::{baby_verma, lambda_set, Triangular};
    use crate::superlie::{osp12, PChar};

    #[test]
    fn one_dim_is_simple() {
        let f = FieldCtx::new(3, 1).unwrap();
        let m = ModuleRep::new(&f, vec![0], vec![Matrix::zeros(&f, 1, 1)], vec!["x".into()]).unwrap();
        assert!(is_simple(&m, 1).unwrap().is_simple());
    }

    #[test]
    fn restricted_verma_has_submodule_at_v_2l_plus_1() {
        let p = 5;
        let f = FieldCtx::new(p, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::zero(&g);
        let tri = Triangular::standard(&g).unwrap();
        for lam in 0..p as i64 {
            let l = f.from_i64(lam);
            let z = baby_verma(&g, &chi, &tri, &[l], 600).unwrap();
            let res = is_simple(&z.module, 7).unwrap();
            let Simplicity::NotSimple(sub) = res else { panic!("Z({lam}) reported simple") };
            // the submodule is spanned by v_i, i ≥ 2λ+1, in the closed-form basis
            assert_eq!(sub.len(), 2 * p as usize - (2 * lam as usize + 1));
            assert!(spin(&generators(&z.module), &sub).dim() == sub.len());
        }
        assert_eq!(lambda_set(&g, &chi, &tri.cartan, 100).unwrap().points.len(), p as usize);
    }

    #[test]
    fn exhaustive_agrees_with_norton() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
        let tri = Triangular::standard(&g).unwrap();
        let z = baby_verma(&g, &chi, &tri, &[Fq(0)], 600).unwrap();
        assert!(is_simple(&z.module, 3).unwrap().is_simple());
        assert!(exhaustive(&z.module, &generators(&z.module)).unwrap().is_simple());
    }
}
