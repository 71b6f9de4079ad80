//! Intertwiners, endomorphism superalgebras and the type M/Q split.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Fq, Matrix};
use crate::pbw::ModuleRep;

/// Largest number of unknowns the intertwiner solver accepts.
pub const MAX_HOM_UNKNOWNS: usize = 6000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SchurType {
    M,
    Q,
    /// Not a simple module, or not absolutely irreducible.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoData {
    pub dim_even: usize,
    pub dim_odd: usize,
    pub schur: SchurType,
}

/// Maps φ: M1 → M2 of the given parity with φρ1(x) = (−1)^{|φ||x|} ρ2(x)φ
/// for every basis element x; `parity_of_gen[i]` is |x_i|.
pub fn hom_space(m1: &ModuleRep, m2: &ModuleRep, parity_of_gen: &[u8], parity: u8) -> Result<Vec<Matrix>> {
    let f = &m1.field;
    let (n1, n2) = (m1.dim, m2.dim);
    let mut var = vec![usize::MAX; n1 * n2];
    let mut cells = Vec::new();
    for r in 0..n2 {
        for c in 0..n1 {
            if m2.parity[r] ^ m1.parity[c] == parity {
                var[r * n1 + c] = cells.len();
                cells.push((r, c));
            }
        }
    }
    let nv = cells.len();
    if nv > MAX_HOM_UNKNOWNS {
        return Err(Error::Unsupported(format!("intertwiner system has {nv} unknowns, above {MAX_HOM_UNKNOWNS}")));
    }
    if nv == 0 {
        return Ok(vec![]);
    }
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    for (i, (a1, a2)) in m1.action.iter().zip(&m2.action).enumerate() {
        if a1.is_zero() && a2.is_zero() {
            continue;
        }
        let sign = if parity & parity_of_gen[i] == 1 { f.neg(Fq::ONE) } else { Fq::ONE };
        let target = parity ^ parity_of_gen[i];
        for r in 0..n2 {
            for c in 0..n1 {
                if m2.parity[r] ^ m1.parity[c] != target {
                    continue;
                }
                // (φ a1)[r,c] − s (a2 φ)[r,c]
                let mut row = vec![Fq::ZERO; nv];
                let mut any = false;
                for l in 0..n1 {
                    let x = a1.get(l, c);
                    if !x.is_zero() && var[r * n1 + l] != usize::MAX {
                        let k = var[r * n1 + l];
                        row[k] = f.add(row[k], x);
                        any = true;
                    }
                }
                for l in 0..n2 {
                    let x = a2.get(r, l);
                    if !x.is_zero() && var[l * n1 + c] != usize::MAX {
                        let k = var[l * n1 + c];
                        row[k] = f.sub(row[k], f.mul(sign, x));
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(f, nv).data().chunks(nv).map(|r| r.to_vec()).collect()
    } else {
        Matrix::from_rows(f, &rows)?.kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .map(|k| {
            let mut m = Matrix::zeros(f, n2, n1);
            for (t, &(r, c)) in cells.iter().enumerate() {
                m.set(r, c, k[t]);
            }
            m
        })
        .collect())
}

/// Dimensions of the even and odd endomorphisms, with the type M/Q test
/// applied when (1,0) or (1,1) is found.
pub fn endo_superalgebra(m: &ModuleRep, parity_of_gen: &[u8]) -> Result<EndoData> {
    let even = hom_space(m, m, parity_of_gen, 0)?;
    let odd = hom_space(m, m, parity_of_gen, 1)?;
    let schur = match (even.len(), odd.len()) {
        (1, 0) => SchurType::M,
        (1, 1) => {
            let j2 = odd[0].mul(&odd[0]);
            let c = j2.get(0, 0);
            if !c.is_zero() && j2 == Matrix::scalar(&m.field, m.dim, c) {
                SchurType::Q
            } else {
                SchurType::Other
            }
        }
        _ => SchurType::Other,
    };
    Ok(EndoData { dim_even: even.len(), dim_odd: odd.len(), schur })
}

/// An invertible intertwiner between two simple modules, even or odd.
pub fn find_isomorphism(m1: &ModuleRep, m2: &ModuleRep, parity_of_gen: &[u8]) -> Result<Option<(u8, Matrix)>> {
    if m1.dim != m2.dim {
        return Ok(None);
    }
    for par in 0..2u8 {
        let de = m1.parity.iter().filter(|&&q| q == 0).count();
        let de2 = m2.parity.iter().filter(|&&q| q == par).count();
        if de != de2 {
            continue;
        }
        for phi in hom_space(m1, m2, parity_of_gen, par)? {
            if phi.rank() == m1.dim {
                return Ok(Some((par, phi)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::pbw::{baby_verma, Triangular};
    use crate::superlie::{osp12, PChar};

    #[test]
    fn osp12_nilpotent_types() {
        for p in [3u32, 5] {
            let f = FieldCtx::new(p, 1).unwrap();
            let g = osp12(&f).unwrap();
            let chi = PChar::on_label(&g, "f", Fq::ONE).unwrap();
            let tri = Triangular::standard(&g).unwrap();
            for lam in 0..p {
                let z = baby_verma(&g, &chi, &tri, &[f.from_i64(lam as i64)], 600).unwrap();
                let e = endo_superalgebra(&z.module, &g.parity).unwrap();
                if lam == (p - 1) / 2 {
                    assert_eq!((e.dim_even, e.dim_odd, e.schur), (1, 1, SchurType::Q));
                } else {
                    assert_eq!((e.dim_even, e.dim_odd, e.schur), (1, 0, SchurType::M));
                }
                let dual = baby_verma(&g, &chi, &tri, &[f.from_i64((p - lam - 1) as i64)], 600).unwrap();
                assert!(find_isomorphism(&z.module, &dual.module, &g.parity).unwrap().is_some());
            }
        }
    }

    #[test]
    fn trivial_module_endo() {
        let f = FieldCtx::new(3, 1).unwrap();
        let m = ModuleRep::new(&f, vec![0], vec![Matrix::zeros(&f, 1, 1); 2], vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(endo_superalgebra(&m, &[0, 1]).unwrap(), EndoData { dim_even: 1, dim_odd: 0, schur: SchurType::M });
    }
}
