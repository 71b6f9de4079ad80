//! Jordan chains of nilpotent matrices and the Jordan–Chevalley decomposition.

use super::field::Fq;
use super::matrix::Matrix;
use super::poly;
use super::span::Span;
use crate::error::{Error, Result};

/// Jordan type and chain heads of a nilpotent endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    /// Weakly decreasing chain lengths.
    pub partition: Vec<usize>,
    /// One head v_i per chain; the chain is v_i, X v_i, ..., X^{λ_i - 1} v_i.
    pub chain_heads: Vec<Vec<Fq>>,
    pub dim: usize,
}

impl JordanData {
    /// Columns X^j v_i, chain by chain, j ascending within a chain.
    pub fn chain_basis(&self, x: &Matrix) -> Matrix {
        let mut cols = Vec::with_capacity(self.dim);
        for (head, &len) in self.chain_heads.iter().zip(&self.partition) {
            let mut v = head.clone();
            for _ in 0..len {
                cols.push(v.clone());
                v = x.mul_vec(&v);
            }
        }
        Matrix::from_columns(x.field(), self.dim, &cols)
    }
}

/// Smallest d with X^d = 0, or an error if X is not nilpotent.
pub fn nilpotency_index(x: &Matrix) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::Dimension("nilpotent_jordan needs a square matrix".into()));
    }
    let n = x.rows();
    let mut pw = Matrix::identity(x.field(), n);
    for d in 0..=n {
        if pw.is_zero() {
            return Ok(d);
        }
        pw = pw.mul(x);
    }
    Err(Error::Precondition("matrix is not nilpotent".into()))
}

/// Jordan chains via the kernel filtration ker X ⊂ ker X^2 ⊂ ...
pub fn nilpotent_jordan(x: &Matrix) -> Result<JordanData> {
    let n = x.rows();
    let d = nilpotency_index(x)?;
    let f = x.field();
    let mut kernels: Vec<Vec<Vec<Fq>>> = vec![Vec::new()];
    let mut pw = Matrix::identity(f, n);
    for _ in 1..=d {
        pw = pw.mul(x);
        kernels.push(pw.kernel_basis());
    }
    let mut heads: Vec<(Vec<Fq>, usize)> = Vec::new();
    for j in (1..=d).rev() {
        let mut span = Span::new(f, n);
        for v in &kernels[j - 1] {
            span.insert(v);
        }
        for (h, len) in &heads {
            let mut v = h.clone();
            for _ in 0..(len - j) {
                v = x.mul_vec(&v);
            }
            span.insert(&v);
        }
        for w in &kernels[j] {
            if span.insert(w) {
                heads.push((w.clone(), j));
            }
        }
    }
    let data = JordanData {
        partition: heads.iter().map(|h| h.1).collect(),
        chain_heads: heads.into_iter().map(|h| h.0).collect(),
        dim: n,
    };
    if data.partition.iter().sum::<usize>() != n || data.chain_basis(x).rank() != n {
        return Err(Error::Violation("Jordan chains do not form a basis".into()));
    }
    Ok(data)
}

/// Minimal polynomial via the first linear dependency among I, A, A^2, ...
pub fn minimal_polynomial(a: &Matrix) -> poly::Poly {
    let f = a.field();
    let n = a.rows();
    let mut span = Span::new(f, n * n);
    let mut pw = Matrix::identity(f, n);
    loop {
        let v = pw.data().to_vec();
        if let Some(c) = span.coords(&v) {
            let mut m: poly::Poly = c.iter().map(|&x| f.neg(x)).collect();
            m.push(Fq::ONE);
            return m;
        }
        span.insert(&v);
        pw = pw.mul(a);
    }
}

/// A = S + N with S semisimple, N nilpotent, SN = NS, both polynomials in A.
///
/// S is the limit of the Newton iteration S ← S − g(S) g'(S)^{-1}, where g
/// is the square-free part of the characteristic polynomial.
pub fn jordan_chevalley(a: &Matrix) -> (Matrix, Matrix) {
    assert!(a.is_square());
    let f = a.field().clone();
    let g = poly::radical(&f, &a.charpoly());
    let dg = poly::derivative(&f, &g);
    let mut s = a.clone();
    loop {
        let gs = s.eval_poly(&g);
        if gs.is_zero() {
            break;
        }
        let dinv = s.eval_poly(&dg).inverse().expect("g' is invertible at S since g is square-free");
        s = s.sub(&gs.mul(&dinv));
    }
    let nmat = a.sub(&s);
    (s, nmat)
}
