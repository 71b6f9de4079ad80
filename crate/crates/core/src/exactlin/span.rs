//! Incrementally built subspaces with coordinate tracking.

use super::field::{Field, Fq};

/// A subspace of F^n grown one vector at a time.
///
/// Echelon rows are kept alongside their expression in terms of the
/// independent vectors inserted so far, so membership tests can also
/// return coordinates.
#[derive(Clone)]
pub struct Span {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<Fq>>,
    basis: Vec<Vec<Fq>>,
}

impl Span {
    pub fn new(field: &Field, ambient: usize) -> Span {
        Span { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), basis: Vec::new() }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vs: &[Vec<Fq>]) -> Span {
        let mut s = Span::new(field, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The independent vectors accepted so far, in insertion order.
    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut mult = vec![Fq::ZERO; self.rows.len()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r[pc];
            if !c.is_zero() {
                f.axpy(&mut r, f.neg(c), row);
                mult[i] = c;
            }
        }
        (r, mult)
    }

    /// `v` with every pivot entry cleared by subtracting span elements.
    pub fn residue(&self, v: &[Fq]) -> Vec<Fq> {
        self.reduce(v).0
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &[Fq]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let (mut r, mult) = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(r[pc]).unwrap();
        f.scale(&mut r, inv);
        let new_index = self.basis.len();
        let mut combo = vec![Fq::ZERO; new_index + 1];
        combo[new_index] = Fq::ONE;
        for (m, c) in mult.iter().zip(&self.combos) {
            if !m.is_zero() {
                f.axpy(&mut combo[..c.len()], f.neg(*m), c);
            }
        }
        f.scale(&mut combo, inv);
        for c in self.combos.iter_mut() {
            c.push(Fq::ZERO);
        }
        self.rows.push(r);
        self.pivots.push(pc);
        self.combos.push(combo);
        self.basis.push(v.to_vec());
        true
    }

    /// Coordinates of `v` in terms of [`Span::basis`], if `v` lies in the span.
    pub fn coords(&self, v: &[Fq]) -> Option<Vec<Fq>> {
        let f = &self.field;
        let (r, mult) = self.reduce(v);
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut out = vec![Fq::ZERO; self.basis.len()];
        for (m, c) in mult.iter().zip(&self.combos) {
            if !m.is_zero() {
                f.axpy(&mut out, *m, c);
            }
        }
        Some(out)
    }

    /// Standard unit vectors completing the span to the whole space,
    /// lowest index first.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coordinates_reconstruct_vectors() {
        let f = FieldCtx::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut s = Span::new(&f, 6);
        for _ in 0..4 {
            let v: Vec<Fq> = (0..6).map(|_| f.random(&mut rng)).collect();
            s.insert(&v);
        }
        assert_eq!(s.dim(), 4);
        let coeffs: Vec<Fq> = (0..4).map(|_| f.random(&mut rng)).collect();
        let mut w = vec![Fq::ZERO; 6];
        for (c, b) in coeffs.iter().zip(s.basis()) {
            f.axpy(&mut w, *c, b);
        }
        assert_eq!(s.coords(&w).unwrap(), coeffs);
        assert!(!s.insert(&w));
        assert_eq!(s.complement_units().len(), 2);
    }
}
