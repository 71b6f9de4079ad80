//! Simultaneous eigenspace decomposition of g under a torus.

use crate::error::{Error, Result};
use crate::exactlin::{poly, Fq, Matrix, Span};

use super::algebra::{Elem, LieSuperAlgebra};

#[derive(Clone, Debug)]
pub struct RootSpace {
    /// Eigenvalue of each Cartan basis element.
    pub weight: Vec<Fq>,
    /// Integer ε/δ coordinates when the space is spanned by model weight vectors.
    pub coords: Option<Vec<i64>>,
    pub parity: u8,
    pub basis: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub cartan_dim: usize,
    /// Zero-weight space, split by parity.
    pub zero_even: Vec<Elem>,
    pub zero_odd: Vec<Elem>,
    pub roots: Vec<RootSpace>,
}

impl RootDecomposition {
    pub fn even_roots(&self) -> usize {
        self.roots.iter().filter(|r| r.parity == 0).count()
    }

    pub fn odd_roots(&self) -> usize {
        self.roots.iter().filter(|r| r.parity == 1).count()
    }
}

/// Decomposes g under ad of the given commuting even elements.
pub fn root_decomposition(g: &LieSuperAlgebra, cartan: &[Elem]) -> Result<RootDecomposition> {
    let f = &g.field;
    let d = g.dim();
    let ads: Vec<Matrix> = cartan.iter().map(|h| g.ad(h)).collect();
    let mut out = RootDecomposition { cartan_dim: cartan.len(), zero_even: Vec::new(), zero_odd: Vec::new(), roots: Vec::new() };
    let mut total = 0;
    for par in 0..2u8 {
        let start: Vec<Elem> = (0..d).filter(|&i| g.parity[i] == par).map(|i| g.basis_elem(i)).collect();
        if start.is_empty() {
            continue;
        }
        let mut pieces: Vec<(Vec<Elem>, Vec<Fq>)> = vec![(start, Vec::new())];
        for ad in &ads {
            let mut next = Vec::new();
            for (basis, weight) in pieces {
                let span = Span::from_vectors(f, d, &basis);
                let sb = span.basis().to_vec();
                let k = sb.len();
                let cols: Vec<Vec<Fq>> = sb
                    .iter()
                    .map(|b| span.coords(&ad.mul_vec(b)).ok_or_else(|| Error::Precondition("Cartan elements do not commute".into())))
                    .collect::<Result<_>>()?;
                let r = Matrix::from_columns(f, k, &cols);
                let mut got = 0;
                for c in poly::roots(f, &r.charpoly()) {
                    let shifted = r.sub(&Matrix::scalar(f, k, c));
                    let ker = shifted.kernel_basis();
                    got += ker.len();
                    let vecs: Vec<Elem> = ker
                        .iter()
                        .map(|kv| {
                            let mut e = g.zero();
                            for (t, &a) in kv.iter().enumerate() {
                                f.axpy(&mut e, a, &sb[t]);
                            }
                            e
                        })
                        .collect();
                    let mut w = weight.clone();
                    w.push(c);
                    next.push((vecs, w));
                }
                if got != k {
                    return Err(Error::Precondition("adjoint action of the Cartan is not diagonalizable over this field".into()));
                }
            }
            pieces = next;
        }
        for (basis, weight) in pieces {
            total += basis.len();
            if weight.iter().all(|c| c.is_zero()) {
                if par == 0 {
                    out.zero_even = basis;
                } else {
                    out.zero_odd = basis;
                }
            } else {
                out.roots.extend(split_by_integer_weight(g, basis, weight, par));
            }
        }
    }
    if total != d {
        return Err(Error::Violation("root decomposition does not reconstruct g".into()));
    }
    out.roots.sort_by(|a, b| a.coords.cmp(&b.coords).then(a.parity.cmp(&b.parity)));
    Ok(out)
}

/// Splits an eigenspace into integer root spaces when it is spanned by
/// basis elements that are model weight vectors.
fn split_by_integer_weight(g: &LieSuperAlgebra, basis: Vec<Elem>, weight: Vec<Fq>, parity: u8) -> Vec<RootSpace> {
    let f = &g.field;
    let span = Span::from_vectors(f, g.dim(), &basis);
    let members: Vec<usize> = (0..g.dim()).filter(|&i| g.parity[i] == parity && span.contains(&g.basis_elem(i))).collect();
    let weights: Option<Vec<Vec<i64>>> = members.iter().map(|&i| g.integer_weight(i)).collect();
    match weights {
        Some(ws) if members.len() == basis.len() => {
            let mut groups: Vec<(Vec<i64>, Vec<Elem>)> = Vec::new();
            for (t, &i) in members.iter().enumerate() {
                match groups.iter_mut().find(|(w, _)| *w == ws[t]) {
                    Some((_, v)) => v.push(g.basis_elem(i)),
                    None => groups.push((ws[t].clone(), vec![g.basis_elem(i)])),
                }
            }
            groups
                .into_iter()
                .map(|(w, b)| RootSpace { weight: weight.clone(), coords: Some(w), parity, basis: b })
                .collect()
        }
        _ => vec![RootSpace { weight, coords: None, parity, basis }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::superlie::families::{gl, osp12};

    #[test]
    fn gl11_two_odd_roots() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 1, 1).unwrap();
        let rd = root_decomposition(&g, &g.cartan).unwrap();
        assert_eq!((rd.even_roots(), rd.odd_roots()), (0, 2));
        let coords: Vec<_> = rd.roots.iter().map(|r| r.coords.clone().unwrap()).collect();
        assert!(coords.contains(&vec![1, -1]) && coords.contains(&vec![-1, 1]));
        assert!(rd.roots.iter().all(|r| r.basis.len() == 1));
    }

    #[test]
    fn osp12_roots() {
        for p in [3, 5] {
            let f = FieldCtx::new(p, 1).unwrap();
            let g = osp12(&f).unwrap();
            let rd = root_decomposition(&g, &g.cartan).unwrap();
            let mut got: Vec<(Vec<i64>, u8)> = rd.roots.iter().map(|r| (r.coords.clone().unwrap(), r.parity)).collect();
            got.sort();
            assert_eq!(got, vec![(vec![-2], 0), (vec![-1], 1), (vec![1], 1), (vec![2], 0)]);
        }
    }

    #[test]
    fn gl21_root_counts() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = gl(&f, 2, 1).unwrap();
        let rd = root_decomposition(&g, &g.cartan).unwrap();
        assert_eq!((rd.even_roots(), rd.odd_roots()), (2, 4));
        assert_eq!(rd.zero_even.len(), 3);
    }
}
