//! Reduced enveloping superalgebras and the modules built from them.

pub mod ctx;
pub mod induced;
pub mod module;

pub use ctx::{Mono, UAlgebraCtx, UElem};
pub use induced::{
    baby_verma, eta_character, induced_module, lambda_set, one_dim_module, osp12_engine_in_closed_basis, osp12_verma_closed_form, regular_module, regular_module_in, Induced, Triangular, WeightSet,
    DEFAULT_DIM_BOUND,
};
pub use module::{ModuleJson, ModuleRep};
