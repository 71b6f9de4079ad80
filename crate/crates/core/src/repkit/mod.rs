//! Module analysis: irreducibility, composition factors, endomorphisms,
//! invariants and Cartan data.

pub mod audit;
pub mod endo;
pub mod meataxe;
pub mod series;
pub mod wedderburn;

pub use audit::{freeness_check, kw_audit, m_invariants, reduced_dim_of, w_dim_check, FreenessReport, KwEntry, KwReport, WDimReport};
pub use endo::{endo_superalgebra, find_isomorphism, hom_space, EndoData, SchurType};
pub use meataxe::{generators, homogeneous_basis, is_simple, is_simple_with_budget, spin, Certificate, Simplicity, MEATAXE_BUDGET};
pub use series::{composition_factors, fingerprint, graded_composition_factors, simple_subquotients, Catalog, CompSeries, Fingerprint, SimpleClass};
pub use wedderburn::{analyze_regular, analyze_regular_cached, decompose_regular, is_semisimple, pim_dim_sum, pim_dims_by_reciprocity, semisimple_quotient_dim, CartanData, RegularAnalysis, SimpleSummary};
