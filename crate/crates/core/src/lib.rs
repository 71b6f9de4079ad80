//! Restricted Lie superalgebras over finite fields: construction, reduced
//! enveloping algebras, modules and their structure, computed exactly.

pub mod error;
pub mod exactlin;
pub mod grading;
pub mod pbw;
pub mod reduction;
pub mod repkit;
pub mod superlie;

pub use error::{Error, Result};
