#![allow(dead_code)]

use modsuper::exactlin::{Field, Fq, Matrix};
use modsuper::superlie::{Elem, LieSuperAlgebra};
use rand::Rng;

/// A random partition of n, weakly decreasing.
pub fn random_partition<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        parts.push(k);
        left -= k;
    }
    parts.sort_by(|a, b| b.cmp(a));
    parts
}

/// Every partition of n, each weakly decreasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Nilpotent matrix with Jordan blocks of the given sizes.
pub fn jordan_nilpotent(f: &Field, parts: &[usize]) -> Matrix {
    let n: usize = parts.iter().sum();
    let mut m = Matrix::zeros(f, n, n);
    let mut at = 0;
    for &k in parts {
        for j in 0..k.saturating_sub(1) {
            m.set(at + j + 1, at + j, Fq::ONE);
        }
        at += k;
    }
    m
}

pub fn random_invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let a = Matrix::from_fn(f, n, n, |_, _| f.random(rng));
        if a.rank() == n {
            return a;
        }
    }
}

/// Places the blocks on V_0 and V_1 of a matrix model.
pub fn block_element(g: &LieSuperAlgebra, x0: &Matrix, x1: &Matrix) -> Elem {
    let model = g.model.as_ref().unwrap();
    let i0: Vec<usize> = (0..model.vdim()).filter(|&i| model.v_parity[i] == 0).collect();
    let i1: Vec<usize> = (0..model.vdim()).filter(|&i| model.v_parity[i] == 1).collect();
    let mut full = Matrix::zeros(&g.field, model.vdim(), model.vdim());
    for (idx, x) in [(&i0, x0), (&i1, x1)] {
        for (r, &a) in idx.iter().enumerate() {
            for (c, &b) in idx.iter().enumerate() {
                full.set(a, b, x.get(r, c));
            }
        }
    }
    model.coords(&full).unwrap()
}

/// Conjugate of a Jordan-form nilpotent of the given type in gl(m|n).
pub fn gl_nilpotent_of_type<R: Rng>(g: &LieSuperAlgebra, pi0: &[usize], pi1: &[usize], rng: &mut R) -> Elem {
    let f = &g.field;
    let conj = |pi: &[usize], rng: &mut R| {
        let n: usize = pi.iter().sum();
        if n == 0 {
            return Matrix::zeros(f, 0, 0);
        }
        let a = random_invertible(f, n, rng);
        a.mul(&jordan_nilpotent(f, pi)).mul(&a.inverse().unwrap())
    };
    let x0 = conj(pi0, rng);
    let x1 = conj(pi1, rng);
    block_element(g, &x0, &x1)
}

/// Random linear combination of even basis elements of lexicographically
/// positive weight.
pub fn random_positive_nilpotent<R: Rng>(g: &LieSuperAlgebra, rng: &mut R) -> Elem {
    let mut x = g.zero();
    for i in g.even_indices() {
        let w = g.integer_weight(i).unwrap();
        if w.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            x[i] = g.field.random(rng);
        }
    }
    x
}

/// Random even element.
pub fn random_even<R: Rng>(g: &LieSuperAlgebra, rng: &mut R) -> Elem {
    let mut x = g.zero();
    for i in g.even_indices() {
        x[i] = g.field.random(rng);
    }
    x
}
