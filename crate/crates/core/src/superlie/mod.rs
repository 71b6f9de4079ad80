//! Restricted Lie superalgebras: construction, characters, centralizers and roots.

pub mod algebra;
pub mod chars;
pub mod families;
pub mod restricted;
pub mod roots;

pub use algebra::{AlgebraJson, Elem, Family, LieSuperAlgebra, MatrixModel};
pub use chars::{centralizer, chi_from_element, element_centralizer, element_from_chi, super_kw_divisor, toral_value, Centralizer, KWData, PChar};
pub use families::{construct, gl, osp, osp12, sl};
pub use restricted::{check_restricted, RestrictedReport};
pub use roots::{root_decomposition, RootDecomposition, RootSpace};
