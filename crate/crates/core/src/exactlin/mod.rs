//! Exact arithmetic over F_{p^k} and dense linear algebra.

pub mod field;
pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod span;

pub use field::{Field, FieldCtx, FieldHeader, Fq};
pub use jordan::{jordan_chevalley, nilpotent_jordan, JordanData};
pub use matrix::{Matrix, MatrixJson};
pub use span::Span;

/// Basis of {v : A v = 0}.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<Fq>> {
    a.kernel_basis()
}

/// The unique b with b^p = a.
pub fn frobenius_root(field: &FieldCtx, a: Fq) -> Fq {
    field.frobenius_root(a)
}
