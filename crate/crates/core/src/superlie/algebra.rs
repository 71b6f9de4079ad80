//! Lie superalgebras given by structure constants, optionally realized by
//! supermatrices on a defining space V = V_0 ⊕ V_1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldHeader, Fq, Matrix, MatrixJson, Span};

/// Coefficient vector over the algebra basis.
pub type Elem = Vec<Fq>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    #[serde(rename = "ospB")]
    OspB,
    #[serde(rename = "ospC")]
    OspC,
    #[serde(rename = "ospD")]
    OspD,
    Osp12,
    /// Subalgebra or rebased copy of one of the above.
    Derived,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::OspB => "ospB",
            Family::OspC => "ospC",
            Family::OspD => "ospD",
            Family::Osp12 => "osp12",
            Family::Derived => "derived",
        };
        f.write_str(s)
    }
}

/// Realization of each basis element as a supermatrix on V.
#[derive(Clone)]
pub struct MatrixModel {
    /// Parity of each basis vector of V.
    pub v_parity: Vec<u8>,
    pub mats: Vec<Matrix>,
    /// Integer weight of each basis vector of V under the diagonal torus,
    /// in ε/δ coordinates.
    pub v_weights: Vec<Vec<i64>>,
    /// Sign of the standard form on each weight coordinate (+1 for ε, −1 for δ).
    pub weight_form: Vec<i64>,
    /// Gram matrix of the form φ on V preserved by the algebra, if any.
    pub phi: Option<Matrix>,
    extractor: Span,
}

impl MatrixModel {
    pub fn new(field: &Field, v_parity: Vec<u8>, mats: Vec<Matrix>, v_weights: Vec<Vec<i64>>, weight_form: Vec<i64>, phi: Option<Matrix>) -> MatrixModel {
        let n = v_parity.len();
        let mut extractor = Span::new(field, n * n);
        for m in &mats {
            extractor.insert(m.data());
        }
        MatrixModel { v_parity, mats, v_weights, weight_form, phi, extractor }
    }

    pub fn vdim(&self) -> usize {
        self.v_parity.len()
    }

    /// Coordinates of a matrix in the basis, if it lies in the span.
    pub fn coords(&self, m: &Matrix) -> Option<Elem> {
        self.extractor.coords(m.data())
    }

    pub fn supertrace(&self, m: &Matrix) -> Fq {
        let f = m.field();
        (0..self.vdim()).fold(Fq::ZERO, |acc, i| if self.v_parity[i] == 0 { f.add(acc, m.get(i, i)) } else { f.sub(acc, m.get(i, i)) })
    }

    /// Parity of a matrix unit E_{ab}.
    pub fn unit_parity(&self, a: usize, b: usize) -> u8 {
        self.v_parity[a] ^ self.v_parity[b]
    }
}

/// Supercommutator of homogeneous supermatrices.
pub fn supercommutator(a: &Matrix, pa: u8, b: &Matrix, pb: u8) -> Matrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    if pa & pb == 1 {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

#[derive(Clone)]
pub struct LieSuperAlgebra {
    pub field: Field,
    pub family: Family,
    /// Shape parameters: (m, n) for gl/sl, (dim V_0, dim V_1) for osp.
    pub shape: (usize, usize),
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    sc: Vec<Fq>,
    /// x^{[p]} for each even basis element.
    pub pmap: Vec<Option<Elem>>,
    pub form: Matrix,
    pub model: Option<MatrixModel>,
    /// Basis of the standard Cartan subalgebra.
    pub cartan: Vec<Elem>,
}

impl fmt::Debug for LieSuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}|{}) dims {}|{}", self.family, self.shape.0, self.shape.1, self.dim_even(), self.dim_odd())
    }
}

impl LieSuperAlgebra {
    /// Assembles an algebra from a matrix model: brackets, p-map and the
    /// supertrace form are all computed from the matrices.
    pub fn from_model(field: &Field, family: Family, shape: (usize, usize), labels: Vec<String>, model: MatrixModel) -> Result<LieSuperAlgebra> {
        let dim = model.mats.len();
        let mut parity = Vec::with_capacity(dim);
        for m in &model.mats {
            parity.push(matrix_parity(&model, m).ok_or_else(|| Error::Precondition("basis matrix is not homogeneous".into()))?);
        }
        if model.extractor.dim() != dim {
            return Err(Error::Precondition("basis matrices are linearly dependent".into()));
        }
        let mut sc = vec![Fq::ZERO; dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let c = supercommutator(&model.mats[i], parity[i], &model.mats[j], parity[j]);
                let coords = model.coords(&c).ok_or_else(|| Error::Precondition(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
                sc[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(&coords);
            }
        }
        let p = field.p() as u64;
        let mut pmap = vec![None; dim];
        for i in 0..dim {
            if parity[i] == 0 {
                let xp = model.mats[i].pow(p);
                pmap[i] = Some(model.coords(&xp).ok_or_else(|| Error::Precondition(format!("{}^p leaves the span", labels[i])))?);
            }
        }
        let form = Matrix::from_fn(field, dim, dim, |i, j| model.supertrace(&model.mats[i].mul(&model.mats[j])));
        let cartan = (0..dim)
            .filter(|&i| parity[i] == 0 && is_diagonal(&model.mats[i]))
            .map(|i| unit_elem(field, dim, i))
            .collect();
        Ok(LieSuperAlgebra { field: field.clone(), family, shape, labels, parity, sc, pmap, form, model: Some(model), cartan })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn dim_even(&self) -> usize {
        self.parity.iter().filter(|&&b| b == 0).count()
    }

    pub fn dim_odd(&self) -> usize {
        self.dim() - self.dim_even()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == 0).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == 1).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        unit_elem(&self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Elem {
        vec![Fq::ZERO; self.dim()]
    }

    /// Parity of a homogeneous element; `None` for zero or mixed elements.
    pub fn elem_parity(&self, x: &[Fq]) -> Option<u8> {
        let mut seen = None;
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                match seen {
                    None => seen = Some(self.parity[i]),
                    Some(q) if q != self.parity[i] => return None,
                    _ => {}
                }
            }
        }
        seen
    }

    /// Structure constants [b_i, b_j] as a coefficient slice.
    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Fq] {
        let d = self.dim();
        &self.sc[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn bracket(&self, x: &[Fq], y: &[Fq]) -> Elem {
        let f = &self.field;
        let mut out = self.zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                f.axpy(&mut out, f.mul(xi, yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of ad x; column j is [x, b_j].
    pub fn ad(&self, x: &[Fq]) -> Matrix {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut c = self.zero();
            for (i, &xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    self.field.axpy(&mut c, xi, self.bracket_basis(i, j));
                }
            }
            cols.push(c);
        }
        Matrix::from_columns(&self.field, d, &cols)
    }

    pub fn add(&self, x: &[Fq], y: &[Fq]) -> Elem {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn scale(&self, x: &[Fq], c: Fq) -> Elem {
        x.iter().map(|&a| self.field.mul(a, c)).collect()
    }

    pub fn form_value(&self, x: &[Fq], y: &[Fq]) -> Fq {
        self.field.dot(&self.form.vec_mul(x), y)
    }

    /// True when the invariant form is nondegenerate.
    pub fn form_nondegenerate(&self) -> bool {
        self.form.rank() == self.dim()
    }

    /// Supermatrix of an element in the model.
    pub fn element_matrix(&self, x: &[Fq]) -> Option<Matrix> {
        let model = self.model.as_ref()?;
        let n = model.vdim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &model.mats[i]);
            }
        }
        Some(m)
    }

    /// x^{[p]} from the basis table, extended by semilinearity and the
    /// Jacobson sum formula.
    pub fn p_power(&self, x: &[Fq]) -> Elem {
        let f = &self.field;
        let p = f.p() as u64;
        let mut acc = self.zero();
        let mut acc_pow = self.zero();
        for (i, &c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            assert_eq!(self.parity[i], 0, "p-map is only defined on the even part");
            let t = self.scale(&self.basis_elem(i), c);
            let tp = self.scale(self.pmap[i].as_ref().unwrap(), f.pow(c, p));
            let mut s = self.zero();
            if acc.iter().any(|a| !a.is_zero()) {
                s = self.jacobson_sum(&acc, &t);
            }
            acc_pow = self.add(&self.add(&acc_pow, &tp), &s);
            acc = self.add(&acc, &t);
        }
        acc_pow
    }

    /// x^p computed in the matrix model, expressed in the basis.
    pub fn model_p_power(&self, x: &[Fq]) -> Option<Elem> {
        let m = self.element_matrix(x)?;
        self.model.as_ref()?.coords(&m.pow(self.field.p() as u64))
    }

    /// s_1, ..., s_{p−1}: i·s_i is the coefficient of λ^{i−1} in (ad(λx + y))^{p−1}(x).
    pub fn jacobson_terms(&self, x: &[Fq], y: &[Fq]) -> Vec<Elem> {
        let f = &self.field;
        let p = f.p() as usize;
        let adx = self.ad(x);
        let ady = self.ad(y);
        // coefficients of the polynomial in λ
        let mut poly: Vec<Elem> = vec![x.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                let a = ady.mul_vec(c);
                let b = adx.mul_vec(c);
                next[d] = self.add(&next[d], &a);
                next[d + 1] = self.add(&next[d + 1], &b);
            }
            poly = next;
        }
        (1..p)
            .map(|i| {
                let inv = f.inv(f.from_i64(i as i64)).unwrap();
                self.scale(&poly[i - 1], inv)
            })
            .collect()
    }

    pub fn jacobson_sum(&self, x: &[Fq], y: &[Fq]) -> Elem {
        let mut s = self.zero();
        for t in self.jacobson_terms(x, y) {
            s = self.add(&s, &t);
        }
        s
    }

    /// Verifies super-anticommutativity, parity compatibility, the
    /// super-Jacobi identity and the form axioms on all basis triples.
    pub fn check_structure(&self) -> Result<()> {
        let d = self.dim();
        let f = &self.field;
        for i in 0..d {
            for j in 0..d {
                let sign = if self.parity[i] & self.parity[j] == 1 { Fq::ONE } else { f.neg(Fq::ONE) };
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                for k in 0..d {
                    if a[k] != f.mul(sign, b[k]) {
                        return Err(Error::Violation(format!("super-anticommutativity fails at ({}, {})", self.labels[i], self.labels[j])));
                    }
                    if !a[k].is_zero() && self.parity[k] != self.parity[i] ^ self.parity[j] {
                        return Err(Error::Violation(format!("parity of [{}, {}] is wrong", self.labels[i], self.labels[j])));
                    }
                }
            }
        }
        let ads: Vec<Matrix> = (0..d).map(|i| self.ad(&self.basis_elem(i))).collect();
        for i in 0..d {
            for j in 0..d {
                // ad [x,y] = [ad x, ad y] as supercommutator; equivalent to super-Jacobi.
                let lhs = self.ad(self.bracket_basis(i, j));
                let rhs = supercommutator(&ads[i], self.parity[i], &ads[j], self.parity[j]);
                if lhs != rhs {
                    return Err(Error::Violation(format!("super-Jacobi fails for ({}, {}, ·)", self.labels[i], self.labels[j])));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let v = self.form.get(i, j);
                if self.parity[i] != self.parity[j] && !v.is_zero() {
                    return Err(Error::Violation("invariant form is not even".into()));
                }
                let sym = if self.parity[i] & self.parity[j] == 1 { f.neg(self.form.get(j, i)) } else { self.form.get(j, i) };
                if v != sym {
                    return Err(Error::Violation("invariant form is not supersymmetric".into()));
                }
                for k in 0..d {
                    let l = self.form_value(self.bracket_basis(i, j), &self.basis_elem(k));
                    let r = self.form_value(&self.basis_elem(i), self.bracket_basis(j, k));
                    if l != r {
                        return Err(Error::Violation(format!("form invariance fails at ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k])));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same algebra in a new homogeneous basis (given in old coordinates).
    pub fn rebase(&self, new_basis: &[Elem], labels: Vec<String>) -> Result<LieSuperAlgebra> {
        let d = self.dim();
        if new_basis.len() != d {
            return Err(Error::Dimension("rebase needs a full basis".into()));
        }
        self.subalgebra(new_basis, labels)
    }

    /// Subalgebra spanned by the given homogeneous elements, with its own
    /// structure constants, p-map, restricted form and model.
    pub fn subalgebra(&self, basis: &[Elem], labels: Vec<String>) -> Result<LieSuperAlgebra> {
        let f = &self.field;
        let n = basis.len();
        let span = Span::from_vectors(f, self.dim(), basis);
        if span.dim() != n {
            return Err(Error::Precondition("subalgebra basis is dependent".into()));
        }
        let mut parity = Vec::with_capacity(n);
        for b in basis {
            parity.push(self.elem_parity(b).ok_or_else(|| Error::Precondition("subalgebra basis must be homogeneous".into()))?);
        }
        let mut sc = vec![Fq::ZERO; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let br = self.bracket(&basis[i], &basis[j]);
                let c = span.coords(&br).ok_or_else(|| Error::Precondition("span is not closed under the bracket".into()))?;
                sc[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&c);
            }
        }
        let mut pmap = vec![None; n];
        for i in 0..n {
            if parity[i] == 0 {
                let xp = self.p_power(&basis[i]);
                pmap[i] = Some(span.coords(&xp).ok_or_else(|| Error::Precondition("span is not closed under the p-map".into()))?);
            }
        }
        let form = Matrix::from_fn(f, n, n, |i, j| self.form_value(&basis[i], &basis[j]));
        let model = self.model.as_ref().map(|m| {
            let mats = basis.iter().map(|b| self.element_matrix(b).unwrap()).collect();
            MatrixModel::new(f, m.v_parity.clone(), mats, m.v_weights.clone(), m.weight_form.clone(), m.phi.clone())
        });
        let cartan = self
            .cartan
            .iter()
            .filter_map(|h| span.coords(h))
            .collect();
        Ok(LieSuperAlgebra { field: f.clone(), family: Family::Derived, shape: self.shape, labels, parity, sc, pmap, form, model, cartan })
    }

    /// Replaces x^{[p]} for one basis element (used to exercise the checks).
    pub fn with_pmap_entry(&self, i: usize, value: Elem) -> LieSuperAlgebra {
        let mut g = self.clone();
        g.pmap[i] = Some(value);
        g.model = None;
        g
    }

    /// Integer weight of a basis element under the diagonal torus, when
    /// its model matrix is a weight vector.
    pub fn integer_weight(&self, i: usize) -> Option<Vec<i64>> {
        let model = self.model.as_ref()?;
        let m = &model.mats[i];
        let n = model.vdim();
        let mut w: Option<Vec<i64>> = None;
        for a in 0..n {
            for b in 0..n {
                if m.get(a, b).is_zero() {
                    continue;
                }
                let wt: Vec<i64> = model.v_weights[a].iter().zip(&model.v_weights[b]).map(|(x, y)| x - y).collect();
                match &w {
                    None => w = Some(wt),
                    Some(prev) if *prev != wt => return None,
                    _ => {}
                }
            }
        }
        w
    }

    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim();
        let mut sc = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, &c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        sc.push((i, j, k, self.field.coeffs(c)));
                    }
                }
            }
        }
        AlgebraJson {
            field: self.field.header(),
            family: self.family,
            shape: self.shape,
            labels: self.labels.clone(),
            parity: self.parity.clone(),
            sc,
            pmap: self.pmap.iter().map(|r| r.as_ref().map(|v| v.iter().map(|&c| self.field.coeffs(c)).collect())).collect(),
            form: self.form.to_json(),
        }
    }

    /// Rebuilds an abstract (model-free) algebra from its serialized form.
    pub fn from_json(field: &Field, j: &AlgebraJson) -> Result<LieSuperAlgebra> {
        if j.field != field.header() {
            return Err(Error::Format("field header does not match context".into()));
        }
        let d = j.labels.len();
        if j.parity.len() != d || j.pmap.len() != d {
            return Err(Error::Format("inconsistent algebra record".into()));
        }
        let mut sc = vec![Fq::ZERO; d * d * d];
        for (i, jj, k, c) in &j.sc {
            if *i >= d || *jj >= d || *k >= d {
                return Err(Error::Format("structure constant index out of range".into()));
            }
            sc[(i * d + jj) * d + k] = field.from_coeffs(c)?;
        }
        let mut pmap = Vec::with_capacity(d);
        for row in &j.pmap {
            pmap.push(match row {
                None => None,
                Some(v) => Some(v.iter().map(|c| field.from_coeffs(c)).collect::<Result<Vec<_>>>()?),
            });
        }
        Ok(LieSuperAlgebra {
            field: field.clone(),
            family: j.family,
            shape: j.shape,
            labels: j.labels.clone(),
            parity: j.parity.clone(),
            sc,
            pmap,
            form: Matrix::from_json(field, &j.form)?,
            model: None,
            cartan: Vec::new(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldHeader,
    pub family: Family,
    pub shape: (usize, usize),
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    pub sc: Vec<(usize, usize, usize, Vec<u32>)>,
    pub pmap: Vec<Option<Vec<Vec<u32>>>>,
    pub form: MatrixJson,
}

pub fn unit_elem(field: &Field, dim: usize, i: usize) -> Elem {
    let _ = field;
    let mut v = vec![Fq::ZERO; dim];
    v[i] = Fq::ONE;
    v
}

fn is_diagonal(m: &Matrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

fn matrix_parity(model: &MatrixModel, m: &Matrix) -> Option<u8> {
    let mut seen = None;
    for a in 0..model.vdim() {
        for b in 0..model.vdim() {
            if !m.get(a, b).is_zero() {
                let q = model.unit_parity(a, b);
                match seen {
                    None => seen = Some(q),
                    Some(s) if s != q => return None,
                    _ => {}
                }
            }
        }
    }
    seen
}
