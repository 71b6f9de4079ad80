//! Z-gradings of g induced from the defining space, and their verification.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Fq, Matrix, Span};
use crate::superlie::{Elem, LieSuperAlgebra};

use super::space::{grade_defining_space, osp_compatible_basis, plain_chains};

#[derive(Clone, Debug)]
pub struct ZGrading {
    /// Degree of each column of `v_basis`.
    pub v_degrees: Vec<i64>,
    /// Graded basis of V as columns.
    pub v_basis: Matrix,
    /// Homogeneous graded basis of g in standard coordinates, sorted by degree.
    pub g_basis: Vec<Elem>,
    pub g_degrees: Vec<i64>,
    pub g_parity: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: i64,
    pub even: usize,
    pub odd: usize,
}

impl ZGrading {
    /// Columns are the graded basis elements.
    pub fn change_of_basis(&self) -> Matrix {
        let d = self.g_basis.len();
        Matrix::from_columns(self.v_basis.field(), d, &self.g_basis)
    }

    pub fn piece(&self, k: i64, parity: Option<u8>) -> Vec<Elem> {
        (0..self.g_basis.len())
            .filter(|&i| self.g_degrees[i] == k && parity.is_none_or(|q| self.g_parity[i] == q))
            .map(|i| self.g_basis[i].clone())
            .collect()
    }

    pub fn dims(&self, k: i64) -> (usize, usize) {
        let mut out = (0, 0);
        for i in 0..self.g_basis.len() {
            if self.g_degrees[i] == k {
                if self.g_parity[i] == 0 {
                    out.0 += 1;
                } else {
                    out.1 += 1;
                }
            }
        }
        out
    }

    pub fn degree_range(&self) -> (i64, i64) {
        let lo = self.g_degrees.iter().copied().min().unwrap_or(0);
        let hi = self.g_degrees.iter().copied().max().unwrap_or(0);
        (lo, hi)
    }

    pub fn table(&self) -> Vec<DegreeRow> {
        let (lo, hi) = self.degree_range();
        (lo..=hi)
            .filter_map(|k| {
                let (e, o) = self.dims(k);
                (e + o > 0).then_some(DegreeRow { degree: k, even: e, odd: o })
            })
            .collect()
    }

    /// Every degree shifted by `by` (used to exercise the checks).
    pub fn shifted(&self, by: i64) -> ZGrading {
        let mut g = self.clone();
        g.g_degrees.iter_mut().for_each(|d| *d += by);
        g.v_degrees.iter_mut().for_each(|d| *d += by);
        g
    }

    /// Degree components of an element in the graded basis.
    pub fn coords(&self, g: &LieSuperAlgebra, x: &[Fq]) -> Option<Vec<Fq>> {
        Span::from_vectors(&g.field, g.dim(), &self.g_basis).coords(x)
    }
}

/// g(k) = g ∩ gl(V)(k), where gl(V)(k) maps V(l) into V(l + k).
pub fn induce_grading(g: &LieSuperAlgebra, v_basis: &Matrix, v_degrees: &[i64]) -> Result<ZGrading> {
    let model = g.model.as_ref().ok_or_else(|| Error::Precondition("grading needs a matrix model".into()))?;
    let f = &g.field;
    let n = model.vdim();
    let tinv = v_basis.inverse().ok_or_else(|| Error::Precondition("graded basis of V is singular".into()))?;
    let mut pieces: Vec<(i64, u8, Span)> = Vec::new();
    for (i, mat) in model.mats.iter().enumerate() {
        let a = tinv.mul(mat).mul(v_basis);
        let mut comps: Vec<(i64, Matrix)> = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let k = v_degrees[r] - v_degrees[c];
                let slot = match comps.iter().position(|(kk, _)| *kk == k) {
                    Some(s) => s,
                    None => {
                        comps.push((k, Matrix::zeros(f, n, n)));
                        comps.len() - 1
                    }
                };
                comps[slot].1.set(r, c, v);
            }
        }
        for (k, comp) in comps {
            let back = v_basis.mul(&comp).mul(&tinv);
            let coords = model
                .coords(&back)
                .ok_or_else(|| Error::Violation(format!("degree-{k} component of {} leaves g; grading does not restrict", g.labels[i])))?;
            let par = g.parity[i];
            match pieces.iter_mut().find(|(kk, pp, _)| *kk == k && *pp == par) {
                Some((_, _, s)) => {
                    s.insert(&coords);
                }
                None => {
                    let mut s = Span::new(f, g.dim());
                    s.insert(&coords);
                    pieces.push((k, par, s));
                }
            }
        }
    }
    pieces.sort_by_key(|(k, p, _)| (*k, *p));
    let mut out = ZGrading { v_degrees: v_degrees.to_vec(), v_basis: v_basis.clone(), g_basis: Vec::new(), g_degrees: Vec::new(), g_parity: Vec::new() };
    for (k, p, s) in pieces {
        for b in s.basis() {
            out.g_basis.push(b.clone());
            out.g_degrees.push(k);
            out.g_parity.push(p);
        }
    }
    if out.g_basis.len() != g.dim() || Span::from_vectors(f, g.dim(), &out.g_basis).dim() != g.dim() {
        return Err(Error::Violation("graded pieces do not form a direct sum decomposition of g".into()));
    }
    Ok(out)
}

/// Splits a supermatrix into its blocks on V_0 and V_1.
pub fn parity_blocks(g: &LieSuperAlgebra, m: &Matrix) -> (Matrix, Matrix, Vec<usize>, Vec<usize>) {
    let model = g.model.as_ref().expect("matrix model");
    let i0: Vec<usize> = (0..model.vdim()).filter(|&i| model.v_parity[i] == 0).collect();
    let i1: Vec<usize> = (0..model.vdim()).filter(|&i| model.v_parity[i] == 1).collect();
    (m.submatrix(&i0, &i0), m.submatrix(&i1, &i1), i0, i1)
}

/// Grading attached to an even nilpotent element: Jordan chains (adapted to
/// the invariant form of V when there is one), then the induced grading.
pub fn grading_from_element<R: Rng + ?Sized>(g: &LieSuperAlgebra, x: &[Fq], rng: &mut R) -> Result<ZGrading> {
    if g.elem_parity(x) == Some(1) {
        return Err(Error::Precondition("grading element must be even".into()));
    }
    let model = g.model.as_ref().ok_or_else(|| Error::Precondition("grading needs a matrix model".into()))?;
    let m = g.element_matrix(x).unwrap();
    let (x0, x1, i0, i1) = parity_blocks(g, &m);
    let (j0, j1) = match &model.phi {
        Some(phi) => {
            let p0 = phi.submatrix(&i0, &i0);
            let p1 = phi.submatrix(&i1, &i1);
            osp_compatible_basis(&x0, &p0, &x1, &p1, 8, rng)?
        }
        None => plain_chains(&x0, &x1)?,
    };
    let f = &g.field;
    let t = Matrix::block_diag(f, &[j0.chain_basis(&x0), j1.chain_basis(&x1)]);
    // block_diag follows the V_0, V_1 index order of the models
    let mut perm = i0.clone();
    perm.extend(&i1);
    let mut full = Matrix::zeros(f, model.vdim(), model.vdim());
    for (r, &pr) in perm.iter().enumerate() {
        for c in 0..model.vdim() {
            full.set(pr, c, t.get(r, c));
        }
    }
    induce_grading(g, &full, &grade_defining_space(&j0, &j1))
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub x_in_degree_two: bool,
    pub bracket_closed: bool,
    pub symmetric_dims: bool,
    pub form_orthogonal: bool,
    pub centralizer_graded: bool,
    pub centralizer_nonnegative: bool,
    pub dimension_identity: bool,
    pub surjectivity: bool,
    pub centralizer_dims: (usize, usize),
    pub degree_zero_one_dims: (usize, usize),
    pub table: Vec<DegreeRow>,
    pub failures: Vec<String>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn kernel_dim_on(g: &LieSuperAlgebra, x: &[Fq], piece: &[Elem]) -> usize {
    if piece.is_empty() {
        return 0;
    }
    let cols: Vec<Elem> = piece.iter().map(|b| g.bracket(x, b)).collect();
    piece.len() - Matrix::from_columns(&g.field, g.dim(), &cols).rank()
}

/// Checks the grading properties against the element X, exactly.
pub fn verify_grading(g: &LieSuperAlgebra, x: &[Fq], gr: &ZGrading) -> GradingReport {
    let f = &g.field;
    let d = g.dim();
    let mut failures = Vec::new();
    let span = Span::from_vectors(f, d, &gr.g_basis);
    let degree_support = |v: &[Fq]| -> Vec<i64> {
        let c = span.coords(v).expect("graded basis spans g");
        let mut ks: Vec<i64> = (0..d).filter(|&i| !c[i].is_zero()).map(|i| gr.g_degrees[i]).collect();
        ks.sort();
        ks.dedup();
        ks
    };

    let xs = degree_support(x);
    let x_in_degree_two = xs.iter().all(|&k| k == 2);
    if !x_in_degree_two {
        failures.push(format!("X has components in degrees {xs:?}"));
    }

    let mut bracket_closed = true;
    let mut form_orthogonal = true;
    for i in 0..d {
        for j in i..d {
            let s = gr.g_degrees[i] + gr.g_degrees[j];
            let br = g.bracket(&gr.g_basis[i], &gr.g_basis[j]);
            if bracket_closed && degree_support(&br).iter().any(|&k| k != s) {
                bracket_closed = false;
                failures.push(format!("bracket of graded basis elements {i}, {j} leaves degree {s}"));
            }
            if form_orthogonal && s != 0 && !g.form_value(&gr.g_basis[i], &gr.g_basis[j]).is_zero() {
                form_orthogonal = false;
                failures.push(format!("form pairs degrees {} and {}", gr.g_degrees[i], gr.g_degrees[j]));
            }
        }
    }

    let (lo, hi) = gr.degree_range();
    let top = lo.abs().max(hi.abs());
    let symmetric_dims = (0..=top).all(|k| gr.dims(k) == gr.dims(-k));
    if !symmetric_dims {
        failures.push("dim g(k) ≠ dim g(−k) for some k".into());
    }

    // ad X preserves parity, so g_X splits as the kernels on g_0 and g_1
    let par_kernel = |par: u8| -> usize {
        let idx: Vec<Elem> = (0..d).filter(|&i| g.parity[i] == par).map(|i| g.basis_elem(i)).collect();
        kernel_dim_on(g, x, &idx)
    };
    let centralizer_dims = (par_kernel(0), par_kernel(1));
    let mut graded_sum = (0usize, 0usize);
    let mut negative = 0usize;
    for k in lo..=hi {
        for par in 0..2u8 {
            let kd = kernel_dim_on(g, x, &gr.piece(k, Some(par)));
            if par == 0 {
                graded_sum.0 += kd;
            } else {
                graded_sum.1 += kd;
            }
            if k < 0 {
                negative += kd;
            }
        }
    }
    let centralizer_graded = graded_sum == centralizer_dims;
    if !centralizer_graded {
        failures.push(format!("centralizer {centralizer_dims:?} is not the sum of its graded pieces {graded_sum:?}"));
    }
    let centralizer_nonnegative = negative == 0;
    if !centralizer_nonnegative {
        failures.push(format!("centralizer has {negative} dimensions in negative degrees"));
    }
    let (z0, z1) = (gr.dims(0), gr.dims(1));
    let degree_zero_one_dims = (z0.0 + z1.0, z0.1 + z1.1);
    let dimension_identity = degree_zero_one_dims == centralizer_dims;
    if !dimension_identity {
        failures.push(format!("dim g_X = {centralizer_dims:?} but dim g(0) + dim g(1) = {degree_zero_one_dims:?}"));
    }

    let mut surjectivity = true;
    for k in 2..=hi.max(2) {
        for par in 0..2u8 {
            let target = gr.piece(k, Some(par));
            let source = gr.piece(k - 2, Some(par));
            let imgs: Vec<Elem> = source.iter().map(|b| g.bracket(b, x)).collect();
            let tspan = Span::from_vectors(f, d, &target);
            let rank = Span::from_vectors(f, d, &imgs).dim();
            if rank != target.len() || imgs.iter().any(|v| !tspan.contains(v)) {
                surjectivity = false;
                failures.push(format!("[g({})_{par}, X] ≠ g({k})_{par}", k - 2));
            }
        }
    }

    GradingReport {
        x_in_degree_two,
        bracket_closed,
        symmetric_dims,
        form_orthogonal,
        centralizer_graded,
        centralizer_nonnegative,
        dimension_identity,
        surjectivity,
        centralizer_dims,
        degree_zero_one_dims,
        table: gr.table(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::superlie::{gl, osp, osp12};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn elem(g: &LieSuperAlgebra, labels: &[&str]) -> Elem {
        let mut x = g.zero();
        for l in labels {
            x[g.index_of(l).unwrap()] = Fq::ONE;
        }
        x
    }

    #[test]
    fn osp12_grading_from_e() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        let x = elem(&g, &["e"]);
        let gr = grading_from_element(&g, &x, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let deg_of = |l: &str| {
            let v = g.basis_elem(g.index_of(l).unwrap());
            let c = gr.coords(&g, &v).unwrap();
            let ks: Vec<i64> = (0..5).filter(|&i| !c[i].is_zero()).map(|i| gr.g_degrees[i]).collect();
            assert!(ks.windows(2).all(|w| w[0] == w[1]));
            ks[0]
        };
        assert_eq!([deg_of("e"), deg_of("E"), deg_of("h"), deg_of("F"), deg_of("f")], [2, 1, 0, -1, -2]);
        let rep = verify_grading(&g, &x, &gr);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.centralizer_dims, (1, 1));
    }

    #[test]
    fn gl32_entry_degrees() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = gl(&f, 3, 2).unwrap();
        let x = elem(&g, &["E1,2", "E2,3", "E4,5"]);
        let gr = grading_from_element(&g, &x, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        // in the basis X²v, Xv, v | Xu, u the entry (a, b) has degree deg a − deg b
        let table = [[0, 2, 4, 1, 3], [-2, 0, 2, -1, 1], [-4, -2, 0, -3, -1], [-1, 1, 3, 0, 2], [-3, -1, 1, -2, 0]];
        let order = [2usize, 1, 0, 4, 3];
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(gr.v_degrees[order[a]] - gr.v_degrees[order[b]], table[a][b]);
            }
        }
        let rep = verify_grading(&g, &x, &gr);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.centralizer_dims, (5, 4));
    }

    #[test]
    fn zero_element_gives_trivial_grading() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = gl(&f, 2, 1).unwrap();
        let gr = grading_from_element(&g, &g.zero(), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(gr.g_degrees.iter().all(|&k| k == 0));
    }

    #[test]
    fn shifted_grading_fails_degree_two() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = osp12(&f).unwrap();
        let x = elem(&g, &["e"]);
        let gr = grading_from_element(&g, &x, &mut ChaCha8Rng::seed_from_u64(0)).unwrap().shifted(1);
        let rep = verify_grading(&g, &x, &gr);
        assert!(!rep.x_in_degree_two);
    }

    #[test]
    fn osp_principal_nilpotents_grade() {
        let f = FieldCtx::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (mm, nn) in [(1usize, 4usize), (3, 2), (2, 2), (4, 2)] {
            let g = osp(&f, mm, nn).unwrap();
            // sum of even root vectors of positive weight is nilpotent
            let mut x = g.zero();
            for i in g.even_indices() {
                let w = g.integer_weight(i).unwrap();
                if w.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
                    x[i] = Fq::ONE;
                }
            }
            let gr = grading_from_element(&g, &x, &mut rng).unwrap();
            let rep = verify_grading(&g, &x, &gr);
            assert!(rep.passed(), "osp({mm}|{nn}): {:?}", rep.failures);
        }
    }
}
