//! Exact linear algebra over `Z` and `Z/m`.

mod group;
mod howell;
mod intmat;
mod quotient;

pub use group::{AbelianGroup, GroupElement};
pub use howell::{
    howell_form, howell_with_transform, left_kernel as mod_left_kernel, solve_in_span,
    HowellDecomposition, ModMatrix,
};
pub use intmat::{
    echelon_coordinates, hermite, left_kernel, smith_normal_form, solve_left, HermiteForm,
    SmithForm, ZMatrix,
};
pub use quotient::{quotient_invariants, Quotient};
