//! Matrix models for gl(m|n), sl(m|n) and osp(M|N).

use crate::error::{Error, Result};
use crate::exactlin::{Field, Fq, Matrix};

use super::algebra::{Family, LieSuperAlgebra, MatrixModel};

fn unit(field: &Field, n: usize, a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    m.set(a, b, Fq::ONE);
    m
}

fn v_parity(m: usize, n: usize) -> Vec<u8> {
    let mut v = vec![0u8; m];
    v.extend(std::iter::repeat(1u8).take(n));
    v
}

fn gl_weights(m: usize, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let r = m + n;
    let weights = (0..r)
        .map(|a| {
            let mut w = vec![0i64; r];
            w[a] = 1;
            w
        })
        .collect();
    let form = (0..r).map(|a| if a < m { 1 } else { -1 }).collect();
    (weights, form)
}

/// Builds an algebra by family name and shape.
pub fn construct(family: &str, m: usize, n: usize, field: &Field) -> Result<LieSuperAlgebra> {
    match family {
        "gl" => gl(field, m, n),
        "sl" => sl(field, m, n),
        "osp" | "ospB" | "ospC" | "ospD" => {
            let g = osp(field, m, n)?;
            if family != "osp" && family != g.family.to_string() {
                return Err(Error::Usage(format!("osp({m}|{n}) belongs to family {}, not {family}", g.family)));
            }
            Ok(g)
        }
        "osp12" => osp12(field),
        "D21a" | "D(2,1;a)" | "D(2,1;alpha)" | "F4" | "F(4)" | "G3" | "G(3)" => Err(Error::Unsupported(format!(
            "{family}: exceptional families are out of scope (no structure constants are provided for them)"
        ))),
        other => Err(Error::Usage(format!("unknown family {other}"))),
    }
}

/// gl(m|n) with matrix units E_ab in row-major order.
pub fn gl(field: &Field, m: usize, n: usize) -> Result<LieSuperAlgebra> {
    let r = m + n;
    if r == 0 {
        return Err(Error::Usage("gl(0|0) is empty".into()));
    }
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for a in 0..r {
        for b in 0..r {
            mats.push(unit(field, r, a, b));
            labels.push(format!("E{},{}", a + 1, b + 1));
        }
    }
    let (w, wf) = gl_weights(m, n);
    let model = MatrixModel::new(field, v_parity(m, n), mats, w, wf, None);
    LieSuperAlgebra::from_model(field, Family::Gl, (m, n), labels, model)
}

/// sl(m|n): off-diagonal units together with h_a = E_aa ∓ E_{a+1,a+1}
/// (sign + across the parity boundary so the supertrace vanishes).
///
/// sl(1|1) is admitted although p divides m − n: it is the rank-one
/// algebra spanned by E12, E21 and the identity.
pub fn sl(field: &Field, m: usize, n: usize) -> Result<LieSuperAlgebra> {
    let r = m + n;
    let p = field.p() as i64;
    if r < 2 {
        return Err(Error::Usage("sl needs m + n ≥ 2".into()));
    }
    let rank_one = m == 1 && n == 1;
    if !rank_one && (m as i64 - n as i64).rem_euclid(p) == 0 {
        return Err(Error::Precondition(format!("sl({m}|{n}) requires p ∤ (m − n); here p = {p}")));
    }
    let vp = v_parity(m, n);
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for a in 0..r {
        for b in 0..r {
            if a != b {
                mats.push(unit(field, r, a, b));
                labels.push(format!("E{},{}", a + 1, b + 1));
            } else if a + 1 < r {
                let mut h = unit(field, r, a, a);
                let c = if vp[a] == vp[a + 1] { field.neg(Fq::ONE) } else { Fq::ONE };
                h.set(a + 1, a + 1, c);
                mats.push(h);
                labels.push(format!("h{}", a + 1));
            }
        }
    }
    let (w, wf) = gl_weights(m, n);
    let model = MatrixModel::new(field, vp, mats, w, wf, None);
    LieSuperAlgebra::from_model(field, Family::Sl, (m, n), labels, model)
}

/// Index of the φ-partner of a basis vector of V.
fn partner(big_m: usize, big_n: usize, a: usize) -> usize {
    if a < big_m {
        big_m - 1 - a
    } else {
        big_m + (big_n - 1 - (a - big_m))
    }
}

/// Gram matrix of the standard form on V: −1 on the even anti-diagonal,
/// ±1 on the odd anti-diagonal (skew).
pub fn osp_form(field: &Field, big_m: usize, big_n: usize) -> Matrix {
    let d = big_m + big_n;
    let half = big_n / 2;
    let mut phi = Matrix::zeros(field, d, d);
    for a in 0..big_m {
        phi.set(a, partner(big_m, big_n, a), field.neg(Fq::ONE));
    }
    for t in 0..big_n {
        let v = if t < half { Fq::ONE } else { field.neg(Fq::ONE) };
        phi.set(big_m + t, partner(big_m, big_n, big_m + t), v);
    }
    phi
}

/// Linear conditions on a parity-`i` matrix A expressing
/// φ(Ax, y) = −(−1)^{i|x|} φ(x, Ay) on basis vectors; one row per (x, y),
/// one column per entry of A.
fn osp_conditions(field: &Field, phi: &Matrix, vp: &[u8], i: u8) -> Matrix {
    let d = vp.len();
    let mut c = Matrix::zeros(field, d * d, d * d);
    for x in 0..d {
        let s = if i & vp[x] == 1 { field.neg(Fq::ONE) } else { Fq::ONE };
        for y in 0..d {
            let row = x * d + y;
            for k in 0..d {
                // A_{k x} φ_{k y}
                let v = phi.get(k, y);
                if !v.is_zero() {
                    let col = k * d + x;
                    c.set(row, col, field.add(c.get(row, col), v));
                }
                // s φ_{x k} A_{k y}
                let w = phi.get(x, k);
                if !w.is_zero() {
                    let col = k * d + y;
                    c.set(row, col, field.add(c.get(row, col), field.mul(s, w)));
                }
            }
        }
    }
    c
}

fn osp_weights(big_m: usize, big_n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let r = big_m / 2;
    let n = big_n / 2;
    let rank = r + n;
    let mut weights = Vec::with_capacity(big_m + big_n);
    for a in 0..big_m {
        let mut w = vec![0i64; rank];
        if a < r {
            w[a] = 1;
        } else if a >= big_m - r {
            w[big_m - 1 - a] = -1;
        }
        weights.push(w);
    }
    for t in 0..big_n {
        let mut w = vec![0i64; rank];
        if t < n {
            w[r + t] = 1;
        } else {
            w[r + big_n - 1 - t] = -1;
        }
        weights.push(w);
    }
    let form = (0..rank).map(|a| if a < r { 1 } else { -1 }).collect();
    (weights, form)
}

/// osp(M|N) preserving the standard form; the basis is obtained orbit by
/// orbit on matrix entries {(a,b), (b',a')}, so every basis element is a
/// weight vector for the diagonal torus.
pub fn osp(field: &Field, big_m: usize, big_n: usize) -> Result<LieSuperAlgebra> {
    if big_m == 0 || big_n == 0 || big_n % 2 == 1 {
        return Err(Error::Usage(format!("osp({big_m}|{big_n}) needs M ≥ 1 and N even, N ≥ 2")));
    }
    let family = if big_m % 2 == 1 {
        Family::OspB
    } else if big_m == 2 {
        Family::OspC
    } else {
        Family::OspD
    };
    let d = big_m + big_n;
    let vp = v_parity(big_m, big_n);
    let phi = osp_form(field, big_m, big_n);
    let conds = [osp_conditions(field, &phi, &vp, 0), osp_conditions(field, &phi, &vp, 1)];
    let mut seen = vec![false; d * d];
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for a in 0..d {
        for b in 0..d {
            if seen[a * d + b] {
                continue;
            }
            let orbit: Vec<usize> = {
                let q = (partner(big_m, big_n, b), partner(big_m, big_n, a));
                let mut o = vec![a * d + b];
                if q != (a, b) {
                    o.push(q.0 * d + q.1);
                }
                o
            };
            for &e in &orbit {
                seen[e] = true;
            }
            let par = vp[a] ^ vp[b];
            let sub = conds[par as usize].submatrix(&(0..d * d).collect::<Vec<_>>(), &orbit);
            for kv in sub.kernel_basis() {
                let mut mat = Matrix::zeros(field, d, d);
                for (t, &e) in orbit.iter().enumerate() {
                    mat.set(e / d, e % d, kv[t]);
                }
                let lead = orbit.iter().map(|&e| mat.get(e / d, e % d)).find(|c| !c.is_zero()).unwrap();
                mat = mat.scale(field.inv(lead).unwrap());
                mats.push(mat);
                labels.push(format!("X{},{}", a + 1, b + 1));
            }
        }
    }
    let all_rows: Vec<usize> = (0..d * d).collect();
    let expected: usize = (0..2u8)
        .map(|i| {
            let cols: Vec<usize> = (0..d * d).filter(|&e| vp[e / d] ^ vp[e % d] == i).collect();
            conds[i as usize].submatrix(&all_rows, &cols).kernel_basis().len()
        })
        .sum();
    if mats.len() != expected {
        return Err(Error::Violation(format!("osp orbit basis has {} elements, expected {expected}", mats.len())));
    }
    let (w, wf) = osp_weights(big_m, big_n);
    let model = MatrixModel::new(field, vp, mats, w, wf, Some(phi));
    LieSuperAlgebra::from_model(field, family, (big_m, big_n), labels, model)
}

/// osp(1|2) in the basis e, h, f, E, F.
pub fn osp12(field: &Field) -> Result<LieSuperAlgebra> {
    let m = |entries: &[i64]| Matrix::from_ints(field, 3, 3, entries);
    let mats = vec![
        m(&[0, 0, 0, 0, 0, 1, 0, 0, 0]),
        m(&[0, 0, 0, 0, 1, 0, 0, 0, -1]),
        m(&[0, 0, 0, 0, 0, 0, 0, 1, 0]),
        m(&[0, 0, 1, 1, 0, 0, 0, 0, 0]),
        m(&[0, 1, 0, 0, 0, 0, -1, 0, 0]),
    ];
    let labels = ["e", "h", "f", "E", "F"].iter().map(|s| s.to_string()).collect();
    let (w, wf) = osp_weights(1, 2);
    let model = MatrixModel::new(field, v_parity(1, 2), mats, w, wf, Some(osp_form(field, 1, 2)));
    let g = LieSuperAlgebra::from_model(field, Family::Osp12, (1, 2), labels, model)?;
    let generic = osp(field, 1, 2)?;
    let gm = generic.model.as_ref().unwrap();
    for mat in &g.model.as_ref().unwrap().mats {
        if gm.coords(mat).is_none() {
            return Err(Error::Violation("osp(1|2) basis matrix does not preserve the standard form".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;

    fn dims(g: &LieSuperAlgebra) -> (usize, usize) {
        (g.dim_even(), g.dim_odd())
    }

    #[test]
    fn gl_dims_and_structure() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 1, 1).unwrap();
        assert_eq!(dims(&g), (2, 2));
        g.check_structure().unwrap();
        let g = gl(&f, 2, 2).unwrap();
        assert_eq!(dims(&g), (8, 8));
        g.check_structure().unwrap();
    }

    #[test]
    fn sl_dims_match_supertrace_kernel() {
        let f = FieldCtx::new(5, 1).unwrap();
        // oracle: supertrace-zero subspace of gl(2|1), counted by parity
        let big = gl(&f, 2, 1).unwrap();
        let model = big.model.as_ref().unwrap();
        let even: Vec<usize> = big.even_indices();
        let row = Matrix::from_fn(&f, 1, even.len(), |_, j| model.supertrace(&model.mats[even[j]]));
        let even_dim = row.kernel_basis().len();
        let g = sl(&f, 2, 1).unwrap();
        assert_eq!(dims(&g), (even_dim, big.dim_odd()));
        assert_eq!(dims(&g), (4, 4));
        g.check_structure().unwrap();
    }

    #[test]
    fn sl_rejects_p_dividing_difference() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert!(matches!(sl(&f, 3, 3), Err(Error::Precondition(_))));
        assert!(matches!(sl(&f, 4, 1), Err(Error::Precondition(_))));
        assert!(sl(&f, 1, 1).is_ok());
    }

    #[test]
    fn sl11_has_degenerate_form() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = sl(&f, 1, 1).unwrap();
        assert_eq!(dims(&g), (1, 2));
        assert!(!g.form_nondegenerate());
        g.check_structure().unwrap();
    }

    #[test]
    fn osp12_relations() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        assert_eq!(dims(&g), (3, 2));
        g.check_structure().unwrap();
        assert!(g.form_nondegenerate());
        let idx = |s: &str| g.index_of(s).unwrap();
        let b = |x: &str, y: &str| g.bracket_basis(idx(x), idx(y)).to_vec();
        let two = f.from_i64(2);
        let mut ee = g.zero();
        ee[idx("e")] = two;
        assert_eq!(b("E", "E"), ee);
        assert_eq!(b("E", "F"), g.basis_elem(idx("h")));
        let mut ff = g.zero();
        ff[idx("f")] = f.neg(two);
        assert_eq!(b("F", "F"), ff);
        assert_eq!(b("h", "E"), g.basis_elem(idx("E")));
        let mut m_e = g.zero();
        m_e[idx("E")] = f.neg(Fq::ONE);
        assert_eq!(b("e", "F"), m_e);
        // restricted structure: e, f ↦ 0, h ↦ h
        assert_eq!(g.pmap[idx("e")].as_ref().unwrap(), &g.zero());
        assert_eq!(g.pmap[idx("f")].as_ref().unwrap(), &g.zero());
        assert_eq!(g.pmap[idx("h")].as_ref().unwrap(), &g.basis_elem(idx("h")));
    }

    #[test]
    fn osp_family_dims() {
        let f = FieldCtx::new(5, 1).unwrap();
        // dim osp(M|N): even part so(M) ⊕ sp(N), odd part M·N
        for &(mm, nn) in &[(1usize, 2usize), (1, 4), (2, 2), (3, 2), (4, 2)] {
            let g = osp(&f, mm, nn).unwrap();
            assert_eq!(dims(&g), (mm * (mm - 1) / 2 + nn * (nn + 1) / 2, mm * nn), "osp({mm}|{nn})");
            g.check_structure().unwrap();
            assert!(g.form_nondegenerate(), "osp({mm}|{nn})");
            for i in 0..g.dim() {
                assert!(g.integer_weight(i).is_some());
            }
        }
    }

    #[test]
    fn osp12_and_generic_osp_both_build() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert!(osp12(&f).is_ok());
        assert_eq!(osp(&f, 1, 2).unwrap().family, Family::OspB);
    }

    #[test]
    fn exceptional_rejected() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert!(matches!(construct("F4", 0, 0, &f), Err(Error::Unsupported(_))));
        assert!(matches!(construct("ospC", 1, 2, &f), Err(Error::Usage(_))));
    }
}
