//! Root combinatorics and the reduction of U_χ(g) to a Levi subalgebra.

pub mod levi;
pub mod morita;
pub mod roots;

pub use roots::{enumerate_phi_u, indecomposable, odd_reflection, LeviSide, LineType, PhiUSequence, PositiveSystem, Root, RootLine, RootSystem};
pub use levi::{jordan_decomp_chi, levi_parabolic, regular_nilpotent, JordanChi, LeviData};
pub use morita::{morita_desk_check, simples_via_baby_vermas, u_invariants, u_invariants_check, MoritaPair, MoritaReport, UInvariantsReport};
