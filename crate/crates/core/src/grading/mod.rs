//! Z-gradings attached to nilpotent elements and the subalgebras m ⊂ m′.

pub mod mpair;
pub mod space;
pub mod zgrading;

pub use mpair::{build_m, check_mpair, MPair};
pub use space::{centralizer_dims_by_partition, grade_defining_space, osp_compatible_basis};
pub use zgrading::{grading_from_element, induce_grading, verify_grading, DegreeRow, GradingReport, ZGrading};
