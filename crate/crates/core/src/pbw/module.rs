//! Finite-dimensional supermodules given by action matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Fq, Matrix, MatrixJson};
use crate::superlie::{LieSuperAlgebra, PChar};

/// A supermodule for U_χ(g): one action matrix per basis element of g.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub field: Field,
    pub dim: usize,
    /// Parity of each module basis vector.
    pub parity: Vec<u8>,
    pub action: Vec<Matrix>,
    pub labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct ModuleJson {
    pub dim: usize,
    pub parity: Vec<u8>,
    pub labels: Vec<String>,
    pub action: Vec<MatrixJson>,
}

impl ModuleRep {
    pub fn new(field: &Field, parity: Vec<u8>, action: Vec<Matrix>, labels: Vec<String>) -> Result<ModuleRep> {
        let dim = parity.len();
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension("action matrices must be dim × dim".into()));
        }
        if labels.len() != action.len() {
            return Err(Error::Dimension("one label per action matrix".into()));
        }
        Ok(ModuleRep { field: field.clone(), dim, parity, action, labels })
    }

    /// ρ(x) for x in algebra coordinates.
    pub fn act(&self, x: &[Fq]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &self.action[i]);
            }
        }
        m
    }

    pub fn dim_even(&self) -> usize {
        self.parity.iter().filter(|&&q| q == 0).count()
    }

    pub fn dim_odd(&self) -> usize {
        self.dim - self.dim_even()
    }

    /// Matrix with entries only between basis vectors of the given parity
    /// difference.
    pub fn has_parity(&self, m: &Matrix, par: u8) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| self.parity[r] ^ self.parity[c] == par || m.get(r, c).is_zero()))
    }

    /// Checks homogeneity, the bracket relations and the p-character
    /// relation ρ(x)^p − ρ(x^[p]) = χ(x)^p for even basis elements.
    pub fn check(&self, g: &LieSuperAlgebra, chi: &PChar) -> Result<()> {
        let f = &self.field;
        if self.action.len() != g.dim() {
            return Err(Error::Dimension("module has the wrong number of action matrices".into()));
        }
        for i in 0..g.dim() {
            if !self.has_parity(&self.action[i], g.parity[i]) {
                return Err(Error::Violation(format!("action of {} does not respect parity", g.labels[i])));
            }
        }
        for i in 0..g.dim() {
            for j in i..g.dim() {
                let (a, b) = (&self.action[i], &self.action[j]);
                let ab = a.mul(b);
                let ba = b.mul(a);
                let lhs = if g.parity[i] & g.parity[j] == 1 { ab.add(&ba) } else { ab.sub(&ba) };
                if lhs != self.act(g.bracket_basis(i, j)) {
                    return Err(Error::Violation(format!("bracket relation fails for ({}, {})", g.labels[i], g.labels[j])));
                }
            }
        }
        let p = f.p() as u64;
        for i in g.even_indices() {
            let lhs = self.action[i].pow(p).sub(&self.act(g.pmap[i].as_ref().unwrap()));
            let c = f.pow(chi.values[i], p);
            if lhs != Matrix::scalar(f, self.dim, c) {
                return Err(Error::Violation(format!("p-character relation fails for {}", g.labels[i])));
            }
        }
        Ok(())
    }

    /// Restriction to a subalgebra given by a basis in g-coordinates.
    pub fn restrict(&self, basis: &[Vec<Fq>], labels: Vec<String>) -> ModuleRep {
        ModuleRep { field: self.field.clone(), dim: self.dim, parity: self.parity.clone(), action: basis.iter().map(|b| self.act(b)).collect(), labels }
    }

    /// The module in a new basis: columns of `t` are the new basis vectors.
    pub fn change_basis(&self, t: &Matrix, parity: Vec<u8>) -> Result<ModuleRep> {
        let ti = t.inverse().ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        Ok(ModuleRep { field: self.field.clone(), dim: self.dim, parity, action: self.action.iter().map(|a| ti.mul(a).mul(t)).collect(), labels: self.labels.clone() })
    }

    /// Submodule or quotient action on an invariant subspace: the restricted
    /// matrices in the given basis.
    pub fn on_subspace(&self, basis: &[Vec<Fq>]) -> Result<ModuleRep> {
        let f = &self.field;
        let span = crate::exactlin::Span::from_vectors(f, self.dim, basis);
        let k = basis.len();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut cols = Vec::with_capacity(k);
            for b in span.basis() {
                cols.push(span.coords(&a.mul_vec(b)).ok_or_else(|| Error::Precondition("subspace is not invariant".into()))?);
            }
            action.push(Matrix::from_columns(f, k, &cols));
        }
        let parity = span
            .basis()
            .iter()
            .map(|b| {
                let odd = b.iter().enumerate().any(|(i, c)| !c.is_zero() && self.parity[i] == 1);
                let even = b.iter().enumerate().any(|(i, c)| !c.is_zero() && self.parity[i] == 0);
                match (even, odd) {
                    (true, false) | (false, false) => Ok(0),
                    (false, true) => Ok(1),
                    _ => Err(Error::Precondition("subspace basis must be homogeneous".into())),
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(ModuleRep { field: f.clone(), dim: k, parity, action, labels: self.labels.clone() })
    }

    /// Quotient by an invariant subspace; the quotient basis is the image of
    /// the standard basis vectors not among the span's pivots.
    pub fn quotient(&self, sub: &[Vec<Fq>]) -> Result<ModuleRep> {
        let f = &self.field;
        let span = crate::exactlin::Span::from_vectors(f, self.dim, sub);
        let rest = span.complement_units();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let m = Matrix::from_fn(f, rest.len(), rest.len(), |r, c| {
                let col = a.column(rest[c]);
                span.residue(&col)[rest[r]]
            });
            action.push(m);
        }
        let parity = rest.iter().map(|&i| self.parity[i]).collect();
        Ok(ModuleRep { field: f.clone(), dim: rest.len(), parity, action, labels: self.labels.clone() })
    }

    /// Parity-shifted module ΠM.
    pub fn parity_shift(&self) -> ModuleRep {
        let mut m = self.clone();
        m.parity.iter_mut().for_each(|q| *q ^= 1);
        m
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson { dim: self.dim, parity: self.parity.clone(), labels: self.labels.clone(), action: self.action.iter().map(|m| m.to_json()).collect() }
    }

    pub fn from_json(field: &Field, j: &ModuleJson) -> Result<ModuleRep> {
        let action = j.action.iter().map(|m| Matrix::from_json(field, m)).collect::<Result<Vec<_>>>()?;
        let m = ModuleRep::new(field, j.parity.clone(), action, j.labels.clone())?;
        if m.dim != j.dim {
            return Err(Error::Format("module dimension does not match its parity vector".into()));
        }
        Ok(m)
    }
}
