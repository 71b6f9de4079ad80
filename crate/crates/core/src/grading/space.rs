//! Gradings of the defining space from Jordan chains, including chain bases
//! adapted to an invariant form.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{nilpotent_jordan, Field, Fq, JordanData, Matrix};

/// Degrees 2j + 1 − λ_i of X^j v_i, chain by chain (even chains first).
pub fn grade_defining_space(j0: &JordanData, j1: &JordanData) -> Vec<i64> {
    let mut out = Vec::with_capacity(j0.dim + j1.dim);
    for jd in [j0, j1] {
        for &len in &jd.partition {
            for j in 0..len {
                out.push(2 * j as i64 + 1 - len as i64);
            }
        }
    }
    out
}

/// Centralizer dimensions of a nilpotent element of gl(m|n) with Jordan
/// types π0 on V_0 and π1 on V_1.
pub fn centralizer_dims_by_partition(pi0: &[usize], pi1: &[usize]) -> (usize, usize) {
    let s = |a: &[usize], b: &[usize]| -> usize { a.iter().map(|&x| b.iter().map(|&y| x.min(y)).sum::<usize>()).sum() };
    (s(pi0, pi0) + s(pi1, pi1), 2 * s(pi0, pi1))
}

fn form(phi: &Matrix, u: &[Fq], w: &[Fq]) -> Fq {
    phi.field().dot(&phi.vec_mul(u), w)
}

fn apply_pow(x: &Matrix, v: &[Fq], s: usize) -> Vec<Fq> {
    let mut w = v.to_vec();
    for _ in 0..s {
        w = x.mul_vec(&w);
    }
    w
}

fn is_zero(v: &[Fq]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// v + a·X^s w
fn shifted(f: &Field, x: &Matrix, v: &[Fq], a: Fq, w: &[Fq], s: usize) -> Vec<Fq> {
    let mut out = v.to_vec();
    f.axpy(&mut out, a, &apply_pow(x, w, s));
    out
}

/// Jordan chains of X on V such that, for the induced degrees,
/// φ(V(k), V(l)) = 0 unless k + l = 0. `sign` is +1 for a symmetric φ and
/// −1 for a skew one; X must satisfy φ(Xu, w) = −φ(u, Xw).
fn adapted_chains(x: &Matrix, phi: &Matrix, sign: i8, start: Vec<Vec<Fq>>) -> Result<JordanData> {
    let f = x.field().clone();
    let n = x.rows();
    let two = f.from_i64(2);
    let mut w_basis = start;
    let mut chains: Vec<(usize, Vec<Fq>)> = Vec::new();
    while !w_basis.is_empty() {
        let d = (1..=n + 1)
            .find(|&d| w_basis.iter().all(|w| is_zero(&apply_pow(x, w, d))))
            .ok_or_else(|| Error::Precondition("element is not nilpotent".into()))?;
        let beta = |u: &[Fq], w: &[Fq]| form(phi, u, &apply_pow(x, w, d - 1));
        let c = |u: &[Fq], m: usize, w: &[Fq]| form(phi, u, &apply_pow(x, w, m));
        let zeta = if (d - 1) % 2 == 0 { sign } else { -sign };
        let mut new_heads: Vec<Vec<Fq>> = Vec::new();
        if zeta == 1 {
            let mut v = w_basis.iter().find(|w| !beta(w, w).is_zero()).cloned();
            'search: for i in 0..w_basis.len() {
                if v.is_some() {
                    break;
                }
                for j in i + 1..w_basis.len() {
                    let s: Vec<Fq> = w_basis[i].iter().zip(&w_basis[j]).map(|(&a, &b)| f.add(a, b)).collect();
                    if !beta(&s, &s).is_zero() {
                        v = Some(s);
                        break 'search;
                    }
                }
            }
            let mut v = v.ok_or_else(|| Error::Violation("no anisotropic chain head; form is degenerate on the subspace".into()))?;
            let top = beta(&v, &v);
            for m in (0..d.saturating_sub(1)).rev() {
                let s = d - 1 - m;
                let cm = c(&v, m, &v);
                if cm.is_zero() {
                    continue;
                }
                if s % 2 == 1 {
                    return Err(Error::Violation("pairing that must vanish by symmetry is nonzero".into()));
                }
                let a = f.neg(f.div(cm, f.mul(two, top)).unwrap());
                v = shifted(&f, x, &v, a, &v.clone(), s);
            }
            new_heads.push(v);
        } else {
            let v1 = w_basis
                .iter()
                .find(|w| !is_zero(&apply_pow(x, w, d - 1)))
                .cloned()
                .ok_or_else(|| Error::Violation("no chain of maximal length".into()))?;
            let v2 = w_basis
                .iter()
                .find(|w| !beta(&v1, w).is_zero())
                .cloned()
                .ok_or_else(|| Error::Violation("skew pairing on top chains is degenerate".into()))?;
            let mut v1 = v1;
            let scale = f.inv(beta(&v1, &v2)).unwrap();
            let mut v2: Vec<Fq> = v2.iter().map(|&a| f.mul(a, scale)).collect();
            for m in (0..d.saturating_sub(1)).rev() {
                let s = d - 1 - m;
                let c11 = c(&v1, m, &v1);
                if !c11.is_zero() {
                    if s % 2 == 0 {
                        return Err(Error::Violation("pairing that must vanish by symmetry is nonzero".into()));
                    }
                    let a = f.neg(f.div(c11, two).unwrap());
                    v1 = shifted(&f, x, &v1, a, &v2, s);
                }
                let c22 = c(&v2, m, &v2);
                if !c22.is_zero() {
                    if s % 2 == 0 {
                        return Err(Error::Violation("pairing that must vanish by symmetry is nonzero".into()));
                    }
                    let a = f.div(c22, two).unwrap();
                    v2 = shifted(&f, x, &v2, a, &v1, s);
                }
                let c12 = c(&v1, m, &v2);
                if !c12.is_zero() {
                    v2 = shifted(&f, x, &v2, f.neg(c12), &v2.clone(), s);
                }
            }
            new_heads.push(v1);
            new_heads.push(v2);
        }
        let mut chain_vecs = Vec::new();
        for h in &new_heads {
            for j in 0..d {
                chain_vecs.push(apply_pow(x, h, j));
            }
            chains.push((d, h.clone()));
        }
        // W ← W ∩ C^⊥
        let m = Matrix::from_fn(&f, chain_vecs.len(), w_basis.len(), |r, s| form(phi, &chain_vecs[r], &w_basis[s]));
        let next: Vec<Vec<Fq>> = m
            .kernel_basis()
            .iter()
            .map(|k| {
                let mut v = vec![Fq::ZERO; n];
                for (t, &a) in k.iter().enumerate() {
                    f.axpy(&mut v, a, &w_basis[t]);
                }
                v
            })
            .collect();
        if next.len() + chain_vecs.len() != w_basis.len() {
            return Err(Error::Violation("chain span is degenerate for the form".into()));
        }
        w_basis = next;
    }
    chains.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(JordanData { partition: chains.iter().map(|c| c.0).collect(), chain_heads: chains.into_iter().map(|c| c.1).collect(), dim: n })
}

/// Checks φ(V(k), V(l)) = 0 unless k + l = 0 for a chain basis.
pub fn form_compatible(x: &Matrix, phi: &Matrix, jd: &JordanData) -> bool {
    let t = jd.chain_basis(x);
    let deg = grade_defining_space(jd, &JordanData { partition: vec![], chain_heads: vec![], dim: 0 });
    let g = t.transpose().mul(phi).mul(&t);
    (0..jd.dim).all(|a| (0..jd.dim).all(|b| deg[a] + deg[b] == 0 || g.get(a, b).is_zero()))
}

/// Chain bases of the two parity summands of X adapted to φ.
///
/// `x0`, `x1` are the blocks of X on V_0 and V_1, `phi0` (symmetric) and
/// `phi1` (skew) the blocks of the form. The first attempt starts from the
/// standard basis; later attempts start from random bases.
pub fn osp_compatible_basis<R: Rng + ?Sized>(x0: &Matrix, phi0: &Matrix, x1: &Matrix, phi1: &Matrix, retries: usize, rng: &mut R) -> Result<(JordanData, JordanData)> {
    let mut out = Vec::new();
    for (x, phi, sign) in [(x0, phi0, 1i8), (x1, phi1, -1i8)] {
        let n = x.rows();
        let f = x.field().clone();
        let mut found = None;
        for attempt in 0..=retries {
            let start: Vec<Vec<Fq>> = if attempt == 0 {
                Matrix::identity(&f, n).data().chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect()
            } else {
                loop {
                    let m = Matrix::from_fn(&f, n, n, |_, _| f.random(rng));
                    if m.rank() == n {
                        break (0..n).map(|j| m.column(j)).collect();
                    }
                }
            };
            if let Ok(jd) = adapted_chains(x, phi, sign, start) {
                if form_compatible(x, phi, &jd) && jd.partition.iter().sum::<usize>() == n {
                    found = Some(jd);
                    break;
                }
            }
        }
        out.push(found.ok_or_else(|| Error::Unknown(format!("no form-adapted chain basis found after {} attempts", retries + 1)))?);
    }
    let j1 = out.pop().unwrap();
    let j0 = out.pop().unwrap();
    Ok((j0, j1))
}

/// Plain Jordan chains of both parity blocks (gl-type models).
pub fn plain_chains(x0: &Matrix, x1: &Matrix) -> Result<(JordanData, JordanData)> {
    Ok((nilpotent_jordan(x0)?, nilpotent_jordan(x1)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jd(partition: Vec<usize>) -> JordanData {
        let dim = partition.iter().sum();
        JordanData { chain_heads: vec![vec![]; partition.len()], partition, dim }
    }

    #[test]
    fn gl32_example_degrees() {
        let mut d = grade_defining_space(&jd(vec![3]), &jd(vec![2]));
        // chain order: v, Xv, X²v, u, Xu
        assert_eq!(d, vec![-2, 0, 2, -1, 1]);
        d.sort();
        assert_eq!(d, vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn zero_element_degrees() {
        assert_eq!(grade_defining_space(&jd(vec![1, 1]), &jd(vec![1])), vec![0, 0, 0]);
        assert_eq!(grade_defining_space(&jd(vec![2]), &jd(vec![])), vec![-1, 1]);
    }

    #[test]
    fn partition_formula() {
        assert_eq!(centralizer_dims_by_partition(&[3], &[2]), (5, 4));
        assert_eq!(centralizer_dims_by_partition(&[1, 1, 1], &[1, 1]), (13, 12));
    }
}
