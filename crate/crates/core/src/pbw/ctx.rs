//! Reduced enveloping superalgebras as PBW monomials with a memoized
//! straightening rewriter.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactlin::{Fq, Matrix, Span};
use crate::superlie::{Elem, LieSuperAlgebra, PChar};

/// Packed exponent vector of a PBW monomial.
pub type Mono = u128;

/// Finitely supported combination of monomials, sorted by monomial, with no
/// zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElem {
    pub terms: Vec<(Mono, Fq)>,
}

impl UElem {
    pub fn zero() -> UElem {
        UElem { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(map: HashMap<Mono, Fq>) -> UElem {
        let mut terms: Vec<(Mono, Fq)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|t| t.0);
        UElem { terms }
    }
}

const CACHE_MAGIC: &[u8; 8] = b"MSPBW001";

/// U_χ(g) with a fixed ordered homogeneous basis of g.
pub struct UAlgebraCtx {
    /// The algebra rebased to the PBW order.
    pub g: LieSuperAlgebra,
    /// Columns: the PBW-ordered basis in the coordinates of the original algebra.
    pub to_original: Matrix,
    /// χ(x_i)^p for each ordered basis element.
    pub chi_p: Vec<Fq>,
    /// χ on the ordered basis.
    pub chi: PChar,
    shift: Vec<u32>,
    mask: Vec<u128>,
    memo: RwLock<HashMap<(u16, Mono), Arc<UElem>>>,
    key: String,
}

impl UAlgebraCtx {
    /// Generic constructor: `order` lists homogeneous elements of `g` (in its
    /// coordinates) forming a basis; PBW monomials follow this order.
    pub fn new(g: &LieSuperAlgebra, chi: &PChar, order: &[Elem]) -> Result<UAlgebraCtx> {
        let f = &g.field;
        let labels = order
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                if nz.len() == 1 && v[nz[0]] == Fq::ONE {
                    g.labels[nz[0]].clone()
                } else {
                    format!("y{t}")
                }
            })
            .collect();
        let h = g.rebase(order, labels)?;
        let p = f.p() as u64;
        let chi_new: Vec<Fq> = order.iter().map(|v| chi.eval(g, v)).collect();
        let chi_p = chi_new.iter().map(|&c| f.pow(c, p)).collect();
        let ebits = 32 - (f.p() - 1).leading_zeros();
        let mut shift = Vec::with_capacity(h.dim());
        let mut mask = Vec::with_capacity(h.dim());
        let mut at = 0u32;
        for i in 0..h.dim() {
            let b = if h.parity[i] == 0 { ebits } else { 1 };
            shift.push(at);
            mask.push(((1u128 << b) - 1) << at);
            at += b;
        }
        if at > 128 {
            return Err(Error::Unsupported(format!("PBW monomials need {at} bits; at most 128 are supported")));
        }
        let to_original = Matrix::from_columns(f, g.dim(), order);
        let key = content_key(&h, &chi_new, &to_original);
        Ok(UAlgebraCtx { g: h, to_original, chi_p, chi: PChar { values: chi_new }, shift, mask, memo: RwLock::new(HashMap::new()), key })
    }

    /// Evens before odds, each in basis order.
    pub fn standard(g: &LieSuperAlgebra, chi: &PChar) -> Result<UAlgebraCtx> {
        let order: Vec<Elem> = g.even_indices().into_iter().chain(g.odd_indices()).map(|i| g.basis_elem(i)).collect();
        UAlgebraCtx::new(g, chi, &order)
    }

    /// Complement of `sub` (standard basis elements, evens first) followed
    /// by `sub` itself (evens first), so induced modules are spanned by
    /// complement monomials.
    pub fn for_induction(g: &LieSuperAlgebra, chi: &PChar, sub: &[Elem]) -> Result<(UAlgebraCtx, usize)> {
        let mut span = Span::from_vectors(&g.field, g.dim(), sub);
        if span.dim() != sub.len() {
            return Err(Error::Precondition("subalgebra basis is dependent".into()));
        }
        let mut comp = Vec::new();
        for par in 0..2u8 {
            for i in 0..g.dim() {
                if g.parity[i] == par && span.insert(&g.basis_elem(i)) {
                    comp.push(g.basis_elem(i));
                }
            }
        }
        let ncomp = comp.len();
        let mut order = comp;
        for par in 0..2u8 {
            order.extend(sub.iter().filter(|v| g.elem_parity(v) == Some(par)).cloned());
        }
        if order.len() != g.dim() {
            return Err(Error::Precondition("subalgebra basis must be homogeneous".into()));
        }
        Ok((UAlgebraCtx::new(g, chi, &order)?, ncomp))
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn p(&self) -> u32 {
        self.g.field.p()
    }

    /// p^{dim g_0} · 2^{dim g_1}.
    pub fn reduced_dim(&self) -> u128 {
        (self.p() as u128).pow(self.g.dim_even() as u32) * 2u128.pow(self.g.dim_odd() as u32)
    }

    #[inline]
    pub fn mask(&self, i: usize) -> u128 {
        self.mask[i]
    }

    #[inline]
    pub fn exp(&self, m: Mono, i: usize) -> u32 {
        ((m & self.mask[i]) >> self.shift[i]) as u32
    }

    #[inline]
    pub fn with_exp(&self, m: Mono, i: usize, e: u32) -> Mono {
        (m & !self.mask[i]) | ((e as u128) << self.shift[i])
    }

    pub fn mono_from_exps(&self, exps: &[u32]) -> Mono {
        exps.iter().enumerate().fold(0, |m, (i, &e)| self.with_exp(m, i, e))
    }

    pub fn exps(&self, m: Mono) -> Vec<u32> {
        (0..self.dim_g()).map(|i| self.exp(m, i)).collect()
    }

    pub fn mono_parity(&self, m: Mono) -> u8 {
        (self.g.odd_indices().iter().map(|&i| self.exp(m, i)).sum::<u32>() % 2) as u8
    }

    /// Generator word of a monomial, left to right.
    pub fn word(&self, m: Mono) -> Vec<usize> {
        let mut w = Vec::new();
        for i in 0..self.dim_g() {
            for _ in 0..self.exp(m, i) {
                w.push(i);
            }
        }
        w
    }

    /// All monomials with support in the given generators, in mixed-radix
    /// order (first generator varies slowest).
    pub fn monomials_over(&self, gens: &[usize]) -> Vec<Mono> {
        let mut out = vec![0u128];
        for &i in gens {
            let top = if self.g.parity[i] == 0 { self.p() } else { 2 };
            let mut next = Vec::with_capacity(out.len() * top as usize);
            for &m in &out {
                for e in 0..top {
                    next.push(self.with_exp(m, i, e));
                }
            }
            out = next;
        }
        out
    }

    pub fn all_monomials(&self) -> Vec<Mono> {
        self.monomials_over(&(0..self.dim_g()).collect::<Vec<_>>())
    }

    fn first_index(&self, m: Mono) -> Option<usize> {
        (0..self.dim_g()).find(|&i| self.exp(m, i) > 0)
    }

    /// x_i · m in normal form.
    pub fn mul_gen(&self, i: usize, m: Mono) -> Arc<UElem> {
        if let Some(r) = self.memo.read().unwrap().get(&(i as u16, m)) {
            return r.clone();
        }
        let r = Arc::new(self.compute_mul_gen(i, m));
        self.memo.write().unwrap().insert((i as u16, m), r.clone());
        r
    }

    fn compute_mul_gen(&self, i: usize, m: Mono) -> UElem {
        let f = &self.g.field;
        let mut acc: HashMap<Mono, Fq> = HashMap::new();
        match self.first_index(m) {
            Some(j) if j < i => {
                // x_i x_j M' = ± x_j (x_i M') + [x_i, x_j] M'
                let m1 = self.with_exp(m, j, self.exp(m, j) - 1);
                let sign = if self.g.parity[i] & self.g.parity[j] == 1 { f.neg(Fq::ONE) } else { Fq::ONE };
                let inner = self.mul_gen(i, m1);
                for &(t, c) in &inner.terms {
                    add_into(f, &mut acc, &self.mul_gen(j, t), f.mul(sign, c));
                }
                self.add_element_times(&mut acc, self.g.bracket_basis(i, j), m1, Fq::ONE);
            }
            Some(j) if j == i => {
                let e = self.exp(m, i);
                let rest = self.with_exp(m, i, 0);
                if self.g.parity[i] == 1 {
                    // y² = ½[y, y]
                    let half = f.inv(f.from_i64(2)).unwrap();
                    self.add_element_times(&mut acc, self.g.bracket_basis(i, i), rest, half);
                } else if e + 1 == self.p() {
                    // x^p = x^[p] + χ(x)^p
                    let xp = self.g.pmap[i].clone().unwrap();
                    self.add_element_times(&mut acc, &xp, rest, Fq::ONE);
                    let c = self.chi_p[i];
                    if !c.is_zero() {
                        *acc.entry(rest).or_insert(Fq::ZERO) = f.add(*acc.get(&rest).unwrap_or(&Fq::ZERO), c);
                    }
                } else {
                    acc.insert(self.with_exp(m, i, e + 1), Fq::ONE);
                }
            }
            _ => {
                acc.insert(self.with_exp(m, i, 1), Fq::ONE);
            }
        }
        UElem::from_map(acc)
    }

    /// acc += c · (Σ_k x_k coefficients) · m
    fn add_element_times(&self, acc: &mut HashMap<Mono, Fq>, x: &[Fq], m: Mono, c: Fq) {
        let f = &self.g.field;
        for (k, &a) in x.iter().enumerate() {
            if !a.is_zero() {
                add_into(f, acc, &self.mul_gen(k, m), f.mul(a, c));
            }
        }
    }

    /// x_i · u.
    pub fn left_gen(&self, i: usize, u: &UElem) -> UElem {
        let f = &self.g.field;
        let mut acc = HashMap::new();
        for &(m, c) in &u.terms {
            add_into(f, &mut acc, &self.mul_gen(i, m), c);
        }
        UElem::from_map(acc)
    }

    /// x · u for an algebra element x in ordered coordinates.
    pub fn left_elem(&self, x: &[Fq], u: &UElem) -> UElem {
        let f = &self.g.field;
        let mut acc = HashMap::new();
        for (i, &a) in x.iter().enumerate() {
            if !a.is_zero() {
                for (m, c) in self.left_gen(i, u).terms {
                    let e = acc.entry(m).or_insert(Fq::ZERO);
                    *e = f.add(*e, f.mul(a, c));
                }
            }
        }
        UElem::from_map(acc)
    }

    pub fn one(&self) -> UElem {
        UElem { terms: vec![(0, Fq::ONE)] }
    }

    /// Normal form of a word, multiplying generators onto 1 from the right end.
    pub fn normal_form(&self, word: &[usize]) -> UElem {
        let mut u = self.one();
        for &i in word.iter().rev() {
            u = self.left_gen(i, &u);
        }
        u
    }

    /// Normal form of a word computed left to right: each new letter is
    /// multiplied on the right.
    pub fn normal_form_left_to_right(&self, word: &[usize]) -> UElem {
        let mut u = self.one();
        for &i in word {
            u = self.right_gen(&u, i);
        }
        u
    }

    /// u · x_i, by replaying each monomial's word onto x_i.
    pub fn right_gen(&self, u: &UElem, i: usize) -> UElem {
        let f = &self.g.field;
        let mut acc = HashMap::new();
        for &(m, c) in &u.terms {
            let mut v = UElem { terms: vec![(self.with_exp(0, i, 1), Fq::ONE)] };
            for &k in self.word(m).iter().rev() {
                v = self.left_gen(k, &v);
            }
            add_into(f, &mut acc, &v, c);
        }
        UElem::from_map(acc)
    }

    /// Product u · v.
    pub fn mul(&self, u: &UElem, v: &UElem) -> UElem {
        let f = &self.g.field;
        let mut acc = HashMap::new();
        for &(m, c) in &u.terms {
            let mut w = v.clone();
            for &k in self.word(m).iter().rev() {
                w = self.left_gen(k, &w);
            }
            add_into(f, &mut acc, &w, c);
        }
        UElem::from_map(acc)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// Content hash of the ordered algebra and χ.
    pub fn cache_key(&self) -> &str {
        &self.key
    }

    pub fn cache_path(&self, dir: &Path) -> PathBuf {
        dir.join(format!("pbw-{}.bin", self.key))
    }

    /// Writes the memo table; the header repeats the content hash.
    pub fn save_cache(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let memo = self.memo.read().unwrap();
        let mut keys: Vec<&(u16, Mono)> = memo.keys().collect();
        keys.sort();
        let mut buf = Vec::new();
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(self.key.as_bytes());
        buf.extend_from_slice(&(keys.len() as u64).to_le_bytes());
        for k in keys {
            let v = &memo[k];
            buf.extend_from_slice(&k.0.to_le_bytes());
            buf.extend_from_slice(&k.1.to_le_bytes());
            buf.extend_from_slice(&(v.terms.len() as u32).to_le_bytes());
            for &(m, c) in &v.terms {
                buf.extend_from_slice(&m.to_le_bytes());
                buf.extend_from_slice(&c.0.to_le_bytes());
            }
        }
        let tmp = self.cache_path(dir).with_extension("tmp");
        std::fs::File::create(&tmp)?.write_all(&buf)?;
        std::fs::rename(tmp, self.cache_path(dir))?;
        Ok(())
    }

    /// Loads a cache file if present and well formed; returns the number of
    /// entries read. Anything malformed is ignored.
    pub fn load_cache(&self, dir: &Path) -> usize {
        let mut data = Vec::new();
        if std::fs::File::open(self.cache_path(dir)).and_then(|mut fh| fh.read_to_end(&mut data)).is_err() {
            return 0;
        }
        self.parse_cache(&data).map(|entries| {
            let n = entries.len();
            self.memo.write().unwrap().extend(entries);
            n
        })
        .unwrap_or(0)
    }

    fn parse_cache(&self, data: &[u8]) -> Option<Vec<((u16, Mono), Arc<UElem>)>> {
        let q = self.g.field.order() as u16;
        let mut r = Reader { data, at: 0 };
        if r.take(8)? != CACHE_MAGIC || r.take(self.key.len())? != self.key.as_bytes() {
            return None;
        }
        let n = u64::from_le_bytes(r.take(8)?.try_into().ok()?) as usize;
        let mut out = Vec::with_capacity(n.min(1 << 24));
        for _ in 0..n {
            let g = u16::from_le_bytes(r.take(2)?.try_into().ok()?);
            let m = u128::from_le_bytes(r.take(16)?.try_into().ok()?);
            let t = u32::from_le_bytes(r.take(4)?.try_into().ok()?) as usize;
            if g as usize >= self.dim_g() {
                return None;
            }
            let mut terms = Vec::with_capacity(t);
            for _ in 0..t {
                let mm = u128::from_le_bytes(r.take(16)?.try_into().ok()?);
                let c = u16::from_le_bytes(r.take(2)?.try_into().ok()?);
                if c >= q || c == 0 {
                    return None;
                }
                terms.push((mm, Fq(c)));
            }
            out.push(((g, m), Arc::new(UElem { terms })));
        }
        (r.at == data.len()).then_some(out)
    }
}

struct Reader<'a> {
    data: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.data.get(self.at..self.at + n)?;
        self.at += n;
        Some(s)
    }
}

fn add_into(f: &crate::exactlin::FieldCtx, acc: &mut HashMap<Mono, Fq>, u: &UElem, c: Fq) {
    if c.is_zero() {
        return;
    }
    for &(m, a) in &u.terms {
        let e = acc.entry(m).or_insert(Fq::ZERO);
        *e = f.add(*e, f.mul(a, c));
    }
}

fn content_key(g: &LieSuperAlgebra, chi: &[Fq], order: &Matrix) -> String {
    let payload = serde_json::json!({
        "version": 1,
        "algebra": g.to_json(),
        "chi": chi.iter().map(|&c| g.field.coeffs(c)).collect::<Vec<_>>(),
        "order": order.to_json(),
    });
    let digest = Sha256::digest(payload.to_string().as_bytes());
    digest.iter().take(16).map(|b| format!("{b:02x}")).collect()
}
