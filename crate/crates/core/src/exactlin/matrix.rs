//! Dense matrices over a finite field and the elimination routines built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldHeader, Fq};
use super::poly::{self, Poly};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fq::ONE;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Fq) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fq) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fq>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix whose columns are the given vectors, all of length `len`.
    pub fn from_columns(field: &Field, len: usize, cols: &[Vec<Fq>]) -> Matrix {
        Matrix::from_fn(field, len, cols.len(), |i, j| cols[j][i])
    }

    /// Small-integer convenience constructor for tests and fixed models.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data: entries.iter().map(|&x| field.from_i64(x)).collect() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Fq] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[Fq] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    fn check_same_shape(&self, other: &Matrix) {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch {}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols);
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other);
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other);
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Fq, other: &Matrix) {
        self.check_same_shape(other);
        let f = self.field.clone();
        f.axpy(&mut self.data, c, &other.data);
    }

    pub fn scale(&self, c: Fq) -> Matrix {
        let mut m = self.clone();
        self.field.scale(&mut m.data, c);
        m
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Fq {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(Fq::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let f = &self.field;
        let n = other.cols;
        let mut out = Matrix::zeros(&self.field, self.rows, n);
        if f.is_prime_field() {
            let p = f.p();
            let limit = (u32::MAX / ((p - 1) * (p - 1))).max(1);
            let mut acc = vec![0u32; n];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|x| *x = 0);
                let mut count = 0u32;
                for (l, &a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let a = a.0 as u32;
                    for (x, b) in acc.iter_mut().zip(other.row(l)) {
                        *x += a * b.0 as u32;
                    }
                    count += 1;
                    if count >= limit {
                        acc.iter_mut().for_each(|x| *x %= p);
                        count = 1;
                    }
                }
                for (o, x) in out.row_mut(i).iter_mut().zip(&acc) {
                    *o = Fq((x % p) as u16);
                }
            }
        } else {
            for i in 0..self.rows {
                let mut row = vec![Fq::ZERO; n];
                for (l, &a) in self.row(i).iter().enumerate() {
                    if !a.is_zero() {
                        f.axpy(&mut row, a, other.row(l));
                    }
                }
                out.row_mut(i).copy_from_slice(&row);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Fq::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(i));
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Evaluates a polynomial at this matrix by Horner's rule.
    pub fn eval_poly(&self, f: &[Fq]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in f.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form; pivots chosen as the first nonzero entry
    /// in row order for each column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            f.scale(m.row_mut(r), inv);
            let pivot_row: Vec<Fq> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let x = m.get(i, c);
                if !x.is_zero() {
                    let negx = f.neg(x);
                    let cols = m.cols;
                    f.axpy(&mut m.data[i * cols + c..(i + 1) * cols], negx, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel {v : A v = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Fq>> {
        let Rref { matrix: r, pivots } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fq::ZERO; self.cols];
            v[free] = Fq::ONE;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(ri, free));
            }
            out.push(v);
        }
        out
    }

    /// Basis of the left kernel {w : w A = 0}.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Fq>> {
        self.transpose().kernel_basis()
    }

    /// Echelon basis of the row space.
    pub fn row_space(&self) -> Vec<Vec<Fq>> {
        let Rref { matrix, pivots } = self.rref();
        (0..pivots.len()).map(|i| matrix.row(i).to_vec()).collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(matrix.submatrix(&rows, &cols))
    }

    /// Some solution of A x = b, if one exists.
    pub fn solve(&self, b: &[Fq]) -> Option<Vec<Fq>> {
        assert_eq!(b.len(), self.rows);
        let bm = Matrix::from_columns(&self.field, self.rows, &[b.to_vec()]);
        let Rref { matrix, pivots } = self.hstack(&bm).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fq::ZERO; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(ri, self.cols);
        }
        Some(x)
    }

    /// Characteristic polynomial det(xI - A) via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let f = self.field.clone();
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if piv != j + 1 {
                for c in 0..n {
                    h.data.swap(piv * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + piv, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).unwrap();
            for r in j + 2..n {
                let u = f.mul(h.get(r, j), inv);
                if u.is_zero() {
                    continue;
                }
                let pivot_row = h.row(j + 1).to_vec();
                f.axpy(h.row_mut(r), f.neg(u), &pivot_row);
                for i in 0..n {
                    let v = f.add(h.get(i, j + 1), f.mul(u, h.get(i, r)));
                    h.set(i, j + 1, v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
        let mut ps: Vec<Poly> = vec![vec![Fq::ONE]];
        for m in 1..=n {
            let lin = vec![f.neg(h.get(m - 1, m - 1)), Fq::ONE];
            let mut pm = poly::mul(&f, &lin, &ps[m - 1]);
            let mut t = Fq::ONE;
            for i in (1..m).rev() {
                t = f.mul(t, h.get(i, i - 1));
                if t.is_zero() {
                    break;
                }
                let c = f.mul(h.get(i - 1, m - 1), t);
                if !c.is_zero() {
                    pm = poly::sub(&f, &pm, &poly::scale(&f, &ps[i - 1], c));
                }
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field.header(),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(|&x| self.field.coeffs(x)).collect()).collect(),
        }
    }

    pub fn from_json(field: &Field, j: &MatrixJson) -> Result<Matrix> {
        if j.field != field.header() {
            return Err(Error::Format("field header does not match context".into()));
        }
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Format("entry count does not match shape".into()));
        }
        let mut data = Vec::with_capacity(j.rows * j.cols);
        for row in &j.entries {
            for c in row {
                data.push(field.from_coeffs(c)?);
            }
        }
        Ok(Matrix { field: field.clone(), rows: j.rows, cols: j.cols, data })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldHeader,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<u32>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(f, r, c, |_, _| f.random(rng))
    }

    /// Rank by plain forward elimination on integer residues, written
    /// independently of `rref`.
    fn oracle_rank(m: &Matrix) -> usize {
        let p = m.field().p() as i64;
        let mut a: Vec<Vec<i64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.0 as i64).collect()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(piv) = (rank..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
            a.swap(rank, piv);
            let inv = (1..p).find(|&t| (t * a[rank][c]) % p == 1).unwrap();
            for i in rank + 1..a.len() {
                let factor = a[i][c] * inv % p;
                for j in 0..a[i].len() {
                    a[i][j] = ((a[i][j] - factor * a[rank][j]) % p + p) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(Matrix::zeros(&f, 3, 3).kernel_basis().len(), 3);
        assert!(Matrix::identity(&f, 4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_size_matches_oracle_rank() {
        let f = FieldCtx::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_matrix(&f, 5, 5, &mut rng);
            let ker = m.kernel_basis();
            assert_eq!(ker.len(), 5 - oracle_rank(&m));
            for v in &ker {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn product_fast_path_matches_generic() {
        let f = FieldCtx::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&f, 9, 13, &mut rng);
        let b = random_matrix(&f, 13, 6, &mut rng);
        let c = a.mul(&b);
        for i in 0..9 {
            for j in 0..6 {
                let mut acc = Fq::ZERO;
                for l in 0..13 {
                    acc = f.add(acc, f.mul(a.get(i, l), b.get(l, j)));
                }
                assert_eq!(c.get(i, j), acc);
            }
        }
    }

    #[test]
    fn inverse_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, k) in [(5, 1), (3, 2)] {
            let f = FieldCtx::new(p, k).unwrap();
            for _ in 0..20 {
                let a = random_matrix(&f, 6, 6, &mut rng);
                if let Some(ai) = a.inverse() {
                    assert_eq!(a.mul(&ai), Matrix::identity(&f, 6));
                } else {
                    assert!(a.rank() < 6);
                }
                let b: Vec<Fq> = (0..6).map(|_| f.random(&mut rng)).collect();
                if let Some(x) = a.solve(&b) {
                    assert_eq!(a.mul_vec(&x), b);
                }
            }
        }
    }

    #[test]
    fn charpoly_annihilates_and_has_right_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (p, k) in [(3, 1), (5, 1), (3, 2)] {
            let f = FieldCtx::new(p, k).unwrap();
            for n in 1..8 {
                let a = if rng.gen_bool(0.5) {
                    random_matrix(&f, n, n, &mut rng)
                } else {
                    // sparse, often with zero subdiagonal entries
                    Matrix::from_fn(&f, n, n, |_, _| if rng.gen_bool(0.3) { f.random(&mut rng) } else { Fq::ZERO })
                };
                let cp = a.charpoly();
                assert_eq!(cp.len(), n + 1);
                assert_eq!(cp[n], Fq::ONE);
                assert_eq!(f.neg(cp[n - 1]), a.trace());
                assert!(a.eval_poly(&cp).is_zero(), "Cayley-Hamilton failed");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = FieldCtx::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(&f, 3, 4, &mut rng);
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: MatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Matrix::from_json(&f, &back).unwrap(), a);
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(seed in 0u64..10_000, r in 1usize..8, c in 1usize..8, p_idx in 0usize..3) {
            let p = [3u32, 5, 7][p_idx];
            let f = FieldCtx::new(p, 1).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, r, c, &mut rng);
            proptest::prop_assert_eq!(m.rank() + m.kernel_basis().len(), c);
        }
    }
}
