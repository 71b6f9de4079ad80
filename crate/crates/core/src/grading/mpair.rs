//! The p-nilpotent subalgebras m ⊂ m′ attached to a nilpotent character.

use crate::error::{Error, Result};
use crate::exactlin::{poly, Field, Fq, Matrix, Span};
use crate::superlie::{centralizer, element_from_chi, Elem, LieSuperAlgebra, PChar};

use super::zgrading::ZGrading;

#[derive(Clone, Debug)]
pub struct MPair {
    pub m_basis: Vec<Elem>,
    pub m_prime_basis: Vec<Elem>,
    /// Basis of g(−1): the even symplectic basis x_1..x_s, y_1..y_s, then
    /// the odd basis v_1..v_r with ⟨v_i, v_{r+1−i}⟩ = 1.
    pub g_minus1_basis: Vec<Elem>,
    /// Gram matrix of ⟨x, y⟩ = χ([x, y]) on `g_minus1_basis`.
    pub skew_gram: Matrix,
    /// The maximal isotropic part g(−1)′.
    pub g_minus1_iso: Vec<Elem>,
    pub r_odd: usize,
    /// ⟨v, v⟩ for the middle odd vector when r is odd (1 when a square root exists).
    pub middle_square: Option<Fq>,
}

impl MPair {
    pub fn dims(&self, g: &LieSuperAlgebra, prime: bool) -> (usize, usize) {
        let b = if prime { &self.m_prime_basis } else { &self.m_basis };
        let odd = b.iter().filter(|v| g.elem_parity(v) == Some(1)).count();
        (b.len() - odd, odd)
    }

    /// dim U_χ(m′) = p^{dim m′_0} 2^{dim m′_1}.
    pub fn reduced_dim_prime(&self, g: &LieSuperAlgebra) -> u128 {
        let (e, o) = self.dims(g, true);
        (g.field.p() as u128).pow(e as u32) * 2u128.pow(o as u32)
    }
}

fn bilinear(gram: &Matrix, u: &[Fq], w: &[Fq]) -> Fq {
    gram.field().dot(&gram.vec_mul(u), w)
}

fn orth_complement(f: &Field, gram: &Matrix, w: &[Vec<Fq>], against: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    let n = gram.rows();
    let m = Matrix::from_fn(f, against.len(), w.len(), |r, s| bilinear(gram, &against[r], &w[s]));
    m.kernel_basis()
        .iter()
        .map(|k| {
            let mut v = vec![Fq::ZERO; n];
            for (t, &a) in k.iter().enumerate() {
                f.axpy(&mut v, a, &w[t]);
            }
            v
        })
        .collect()
}

/// Symplectic basis x_1..x_s, y_1..y_s (⟨x_i, y_j⟩ = δ_ij) of a
/// nondegenerate skew form.
fn symplectic_split(f: &Field, gram: &Matrix) -> Result<(Vec<Vec<Fq>>, Vec<Vec<Fq>>)> {
    let n = gram.rows();
    let mut w: Vec<Vec<Fq>> = (0..n).map(|i| (0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect()).collect();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    while !w.is_empty() {
        let x = w[0].clone();
        let y = w.iter().find(|v| !bilinear(gram, &x, v).is_zero()).cloned().ok_or_else(|| Error::Violation("skew form on g(−1)_0 is degenerate".into()))?;
        let c = f.inv(bilinear(gram, &x, &y)).unwrap();
        let y: Vec<Fq> = y.iter().map(|&a| f.mul(a, c)).collect();
        w = orth_complement(f, gram, &w, &[x.clone(), y.clone()]);
        xs.push(x);
        ys.push(y);
    }
    Ok((xs, ys))
}

fn find_isotropic(f: &Field, gram: &Matrix, w: &[Vec<Fq>]) -> Option<Vec<Fq>> {
    let q = |v: &[Fq]| bilinear(gram, v, v);
    if let Some(v) = w.iter().find(|v| q(v).is_zero()) {
        return Some(v.clone());
    }
    let comb = |a: &[Fq], t: Fq, b: &[Fq]| -> Vec<Fq> {
        let mut v = a.to_vec();
        f.axpy(&mut v, t, b);
        v
    };
    // q(a + t b) = q(a) + 2t⟨a,b⟩ + t² q(b)
    let solve = |a: &[Fq], b: &[Fq]| -> Option<Vec<Fq>> {
        let pol = vec![q(a), f.mul(f.from_i64(2), bilinear(gram, a, b)), q(b)];
        poly::roots(f, &pol).first().map(|&t| comb(a, t, b))
    };
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if let Some(v) = solve(&w[i], &w[j]) {
                return Some(v);
            }
        }
    }
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            for k in j + 1..w.len() {
                for t in f.elements() {
                    if let Some(v) = solve(&comb(&w[i], t, &w[j]), &w[k]) {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

/// Basis v_1..v_r of a nondegenerate symmetric form with ⟨v_i, v_{r+1−i}⟩ = 1
/// and all other pairings zero, except that the middle vector (r odd) has
/// square c, normalized to 1 when c is a square.
fn orthogonal_split(f: &Field, gram: &Matrix) -> Result<(Vec<Vec<Fq>>, Option<(Vec<Fq>, Fq)>, Vec<Vec<Fq>>)> {
    let n = gram.rows();
    let mut w: Vec<Vec<Fq>> = (0..n).map(|i| (0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect()).collect();
    let (mut us, mut ws) = (Vec::new(), Vec::new());
    let half = f.inv(f.from_i64(2)).unwrap();
    while w.len() >= 2 {
        let u = find_isotropic(f, gram, &w).ok_or_else(|| {
            Error::Unsupported("the symmetric form on g(−1)_1 has an anisotropic plane over this field; use a larger extension degree".into())
        })?;
        let w0 = w.iter().find(|v| !bilinear(gram, &u, v).is_zero()).cloned().ok_or_else(|| Error::Violation("symmetric form on g(−1)_1 is degenerate".into()))?;
        let c = f.inv(bilinear(gram, &u, &w0)).unwrap();
        let mut v: Vec<Fq> = w0.iter().map(|&a| f.mul(a, c)).collect();
        let qq = bilinear(gram, &v, &v);
        f.axpy(&mut v, f.neg(f.mul(qq, half)), &u);
        w = orth_complement(f, gram, &w, &[u.clone(), v.clone()]);
        us.push(u);
        ws.push(v);
    }
    let middle = match w.pop() {
        None => None,
        Some(v) => {
            let c = bilinear(gram, &v, &v);
            if c.is_zero() {
                return Err(Error::Violation("symmetric form on g(−1)_1 is degenerate".into()));
            }
            match f.sqrt(c) {
                Some(s) => {
                    let inv = f.inv(s).unwrap();
                    Some((v.iter().map(|&a| f.mul(a, inv)).collect(), Fq::ONE))
                }
                None => Some((v, c)),
            }
        }
    };
    ws.reverse();
    Ok((us, middle, ws))
}

fn to_global(f: &Field, dim: usize, basis: &[Elem], local: &[Fq]) -> Elem {
    let mut v = vec![Fq::ZERO; dim];
    for (t, &a) in local.iter().enumerate() {
        if !a.is_zero() {
            f.axpy(&mut v, a, &basis[t]);
        }
    }
    v
}

/// Builds m = ⊕_{k≥2} g(−k) ⊕ g(−1)′ and m′ from a grading with X ∈ g(2).
pub fn build_m(g: &LieSuperAlgebra, gr: &ZGrading, chi: &PChar) -> Result<MPair> {
    let f = &g.field;
    let d = g.dim();
    let x = element_from_chi(g, chi)?;
    let span = Span::from_vectors(f, d, &gr.g_basis);
    let xc = span.coords(&x).unwrap();
    if (0..d).any(|i| !xc[i].is_zero() && gr.g_degrees[i] != 2) {
        return Err(Error::Precondition("the element of χ is not in g(2)".into()));
    }
    let e1 = gr.piece(-1, Some(0));
    let o1 = gr.piece(-1, Some(1));
    let skew = |b: &[Elem]| Matrix::from_fn(f, b.len(), b.len(), |i, j| chi.eval(g, &g.bracket(&b[i], &b[j])));
    let (xs, ys) = symplectic_split(f, &skew(&e1))?;
    let (us, middle, ws) = orthogonal_split(f, &skew(&o1))?;
    let glob_e = |v: &Vec<Fq>| to_global(f, d, &e1, v);
    let glob_o = |v: &Vec<Fq>| to_global(f, d, &o1, v);

    let mut iso: Vec<Elem> = xs.iter().map(glob_e).collect();
    iso.extend(us.iter().map(glob_o));
    let mut basis_m1: Vec<Elem> = xs.iter().chain(&ys).map(glob_e).collect();
    let mut odd_basis: Vec<Elem> = us.iter().map(glob_o).collect();
    if let Some((v, _)) = &middle {
        odd_basis.push(glob_o(v));
    }
    odd_basis.extend(ws.iter().map(glob_o));
    basis_m1.extend(odd_basis);
    let skew_gram = skew(&basis_m1);

    let (lo, _) = gr.degree_range();
    let mut m_basis = Vec::new();
    for k in lo..=-2 {
        m_basis.extend(gr.piece(k, Some(0)));
    }
    m_basis.extend(xs.iter().map(glob_e));
    for k in lo..=-2 {
        m_basis.extend(gr.piece(k, Some(1)));
    }
    m_basis.extend(us.iter().map(glob_o));
    let mut m_prime_basis = m_basis.clone();
    if let Some((v, _)) = &middle {
        m_prime_basis.push(glob_o(v));
    }
    let pair = MPair {
        m_basis,
        m_prime_basis,
        g_minus1_basis: basis_m1,
        skew_gram,
        g_minus1_iso: iso,
        r_odd: o1.len(),
        middle_square: middle.map(|(_, c)| c),
    };
    check_mpair(g, chi, &pair)?;
    Ok(pair)
}

/// Verifies isotropy, closure, p-nilpotency, vanishing of χ on [m, m] and on
/// p-th powers, and dim U_χ(m′) = super KW divisor.
pub fn check_mpair(g: &LieSuperAlgebra, chi: &PChar, pair: &MPair) -> Result<()> {
    for a in &pair.g_minus1_iso {
        for b in &pair.g_minus1_iso {
            if !chi.eval(g, &g.bracket(a, b)).is_zero() {
                return Err(Error::Violation("g(−1)′ is not isotropic".into()));
            }
        }
    }
    if pair.skew_gram.rank() != pair.skew_gram.rows() {
        return Err(Error::Violation("⟨·,·⟩ on g(−1) is degenerate".into()));
    }
    let labels = (0..pair.m_basis.len()).map(|i| format!("m{i}")).collect();
    let m = g.subalgebra(&pair.m_basis, labels)?;
    let labels = (0..pair.m_prime_basis.len()).map(|i| format!("m'{i}")).collect();
    g.subalgebra(&pair.m_prime_basis, labels)?;
    for a in &pair.m_basis {
        for b in &pair.m_basis {
            if !chi.eval(g, &g.bracket(a, b)).is_zero() {
                return Err(Error::Violation("χ does not vanish on [m, m]".into()));
            }
        }
    }
    for i in m.even_indices() {
        let mut v = pair.m_basis[i].clone();
        let mut steps = 0;
        while v.iter().any(|c| !c.is_zero()) {
            v = g.p_power(&v);
            if !chi.eval(g, &v).is_zero() {
                return Err(Error::Violation("χ does not vanish on p-th powers in m".into()));
            }
            steps += 1;
            if steps > g.dim() + 1 {
                return Err(Error::Violation("m is not p-nilpotent".into()));
            }
        }
    }
    let kw = centralizer(g, chi)?.kw;
    if pair.reduced_dim_prime(g) != kw.divisor {
        return Err(Error::Violation(format!("dim U_χ(m′) = {} differs from the KW divisor {}", pair.reduced_dim_prime(g), kw.divisor)));
    }
    Ok(())
}
