//! p-characters, centralizers and the super Kac–Weisfeiler divisor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Fq, Matrix};

use super::algebra::{Elem, LieSuperAlgebra};

/// Even linear functional on g, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PChar {
    pub values: Vec<Fq>,
}

impl PChar {
    pub fn zero(g: &LieSuperAlgebra) -> PChar {
        PChar { values: g.zero() }
    }

    /// Values on the basis; entries on odd basis elements must be zero.
    pub fn new(g: &LieSuperAlgebra, values: Vec<Fq>) -> Result<PChar> {
        if values.len() != g.dim() {
            return Err(Error::Dimension("character length differs from dim g".into()));
        }
        if g.odd_indices().iter().any(|&i| !values[i].is_zero()) {
            return Err(Error::Precondition("a p-character vanishes on the odd part".into()));
        }
        Ok(PChar { values })
    }

    /// Character taking value c on the basis element with the given label.
    pub fn on_label(g: &LieSuperAlgebra, label: &str, c: Fq) -> Result<PChar> {
        let i = g.index_of(label).ok_or_else(|| Error::Usage(format!("no basis element {label}")))?;
        let mut v = g.zero();
        v[i] = c;
        PChar::new(g, v)
    }

    pub fn eval(&self, g: &LieSuperAlgebra, x: &[Fq]) -> Fq {
        g.field.dot(&self.values, x)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|c| c.is_zero())
    }

    /// Restriction to a subalgebra given by its basis in g-coordinates.
    pub fn restrict(&self, g: &LieSuperAlgebra, basis: &[Elem]) -> PChar {
        PChar { values: basis.iter().map(|b| self.eval(g, b)).collect() }
    }

    pub fn add(&self, g: &LieSuperAlgebra, other: &PChar) -> PChar {
        PChar { values: g.add(&self.values, &other.values) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KWData {
    pub d0: usize,
    pub d1: usize,
    pub divisor: u128,
}

impl KWData {
    pub fn new(p: u32, d0: usize, d1: usize) -> Result<KWData> {
        if d0 % 2 == 1 {
            return Err(Error::Violation(format!("even centralizer codimension d0 = {d0} is odd")));
        }
        let divisor = (p as u128).pow((d0 / 2) as u32) * 2u128.pow(d1.div_ceil(2) as u32);
        Ok(KWData { d0, d1, divisor })
    }
}

#[derive(Clone, Debug)]
pub struct Centralizer {
    pub even: Vec<Elem>,
    pub odd: Vec<Elem>,
    pub kw: KWData,
}

impl Centralizer {
    pub fn basis(&self) -> Vec<Elem> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }
}

/// g_χ = {y : χ([y, g]) = 0}, split by parity.
pub fn centralizer(g: &LieSuperAlgebra, chi: &PChar) -> Result<Centralizer> {
    let d = g.dim();
    let f = &g.field;
    let mut parts = [Vec::new(), Vec::new()];
    for par in 0..2u8 {
        let idx: Vec<usize> = (0..d).filter(|&i| g.parity[i] == par).collect();
        // row y, column k: χ([b_y, b_k])
        let c = Matrix::from_fn(f, idx.len(), idx.len(), |r, s| f.dot(&chi.values, g.bracket_basis(idx[r], idx[s])));
        for v in c.left_kernel_basis() {
            let mut e = g.zero();
            for (t, &i) in idx.iter().enumerate() {
                e[i] = v[t];
            }
            parts[par as usize].push(e);
        }
    }
    let [even, odd] = parts;
    let kw = KWData::new(f.p(), g.dim_even() - even.len(), g.dim_odd() - odd.len())?;
    Ok(Centralizer { even, odd, kw })
}

/// Usual centralizer {y : [X, y] = 0} of an even element.
pub fn element_centralizer(g: &LieSuperAlgebra, x: &[Fq]) -> Vec<Elem> {
    g.ad(x).kernel_basis()
}

/// χ = (X, ·).
pub fn chi_from_element(g: &LieSuperAlgebra, x: &[Fq]) -> Result<PChar> {
    if g.elem_parity(x) == Some(1) {
        return Err(Error::Precondition("characters come from even elements".into()));
    }
    PChar::new(g, g.form.vec_mul(x))
}

/// The even element X with (X, ·) = χ.
pub fn element_from_chi(g: &LieSuperAlgebra, chi: &PChar) -> Result<Elem> {
    let even = g.even_indices();
    let gram = g.form.submatrix(&even, &even);
    let rhs: Vec<Fq> = even.iter().map(|&i| chi.values[i]).collect();
    let sol = gram
        .transpose()
        .solve(&rhs)
        .ok_or_else(|| Error::Precondition("the form is singular on the even part".into()))?;
    if gram.rank() != even.len() {
        return Err(Error::Precondition("the form is singular on the even part".into()));
    }
    let mut x = g.zero();
    for (t, &i) in even.iter().enumerate() {
        x[i] = sol[t];
    }
    Ok(x)
}

/// A nonzero c with λ^p − λ = c^p solvable in the field: c = (λ0^p − λ0)^{1/p}
/// for the field generator λ0. None over the prime field.
pub fn toral_value(field: &crate::exactlin::FieldCtx) -> Option<Fq> {
    let l0 = field.generator();
    let c = field.frobenius_root(field.sub(field.pow(l0, field.p() as u64), l0));
    (!c.is_zero()).then_some(c)
}

pub fn super_kw_divisor(g: &LieSuperAlgebra, chi: &PChar) -> Result<u128> {
    Ok(centralizer(g, chi)?.kw.divisor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{FieldCtx, Span};
    use crate::superlie::families::{gl, osp12};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_character_centralizes_everything() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        let c = centralizer(&g, &PChar::zero(&g)).unwrap();
        assert_eq!((c.even.len(), c.odd.len()), (3, 2));
        assert_eq!(c.kw, KWData { d0: 0, d1: 0, divisor: 1 });
    }

    #[test]
    fn osp12_regular_nilpotent_divisor() {
        for p in [3u32, 5, 7] {
            let f = FieldCtx::new(p, 1).unwrap();
            let g = osp12(&f).unwrap();
            let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
            // oracle: brute-force kernel of y ↦ (χ([y, b_k]))_k over the full basis
            let full = Matrix::from_fn(&f, 5, 5, |y, k| f.dot(&chi.values, g.bracket_basis(y, k)));
            let ker = full.left_kernel_basis();
            let c = centralizer(&g, &chi).unwrap();
            assert_eq!(c.even.len() + c.odd.len(), ker.len());
            assert_eq!((c.kw.d0, c.kw.d1), (2, 1));
            assert_eq!(c.kw.divisor, 2 * p as u128);
        }
    }

    #[test]
    fn osp12_regular_semisimple_divisor() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        let chi = PChar::on_label(&g, "h", f.from_i64(2)).unwrap();
        let c = centralizer(&g, &chi).unwrap();
        assert_eq!((c.kw.d0, c.kw.d1), (2, 2));
        assert_eq!(c.kw.divisor, 10);
    }

    #[test]
    fn odd_characters_rejected() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        assert!(PChar::on_label(&g, "E", Fq::ONE).is_err());
    }

    #[test]
    fn element_f_gives_character_on_e() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        let x = g.basis_elem(g.index_of("f").unwrap());
        let chi = chi_from_element(&g, &x).unwrap();
        // oracle: supertrace of f·y in the matrix model
        let model = g.model.as_ref().unwrap();
        for i in 0..g.dim() {
            assert_eq!(chi.values[i], model.supertrace(&model.mats[2].mul(&model.mats[i])));
        }
        assert!(!chi.values[0].is_zero());
        assert!(chi.values[1].is_zero() && chi.values[2].is_zero());
    }

    #[test]
    fn chi_element_round_trip_gl22() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut x = g.zero();
            for i in g.even_indices() {
                x[i] = f.random(&mut rng);
            }
            let chi = chi_from_element(&g, &x).unwrap();
            assert_eq!(element_from_chi(&g, &chi).unwrap(), x);
        }
    }

    #[test]
    fn gl32_example_centralizer() {
        // X of type (3;2): one even chain of length 3 and one odd chain of length 2
        let f = FieldCtx::new(5, 1).unwrap();
        let g = gl(&f, 3, 2).unwrap();
        let mut x = g.zero();
        for l in ["E1,2", "E2,3", "E4,5"] {
            x[g.index_of(l).unwrap()] = Fq::ONE;
        }
        let chi = chi_from_element(&g, &x).unwrap();
        let c = centralizer(&g, &chi).unwrap();
        assert_eq!((c.even.len(), c.odd.len()), (5, 4));
        assert_eq!((c.kw.d0, c.kw.d1), (8, 8));
        let a = Span::from_vectors(&f, g.dim(), &c.basis());
        let b = Span::from_vectors(&f, g.dim(), &element_centralizer(&g, &x));
        assert_eq!(a.dim(), b.dim());
        assert!(b.basis().iter().all(|v| a.contains(v)));
    }
}
