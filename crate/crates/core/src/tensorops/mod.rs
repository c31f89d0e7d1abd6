//! Exact operators on tensor products of finite-dimensional spaces and the
//! word equations built from them.

pub mod braid;
pub mod coherence;
pub mod field;
pub mod json;
pub mod operator;
pub mod tetra;
pub mod word;

pub use braid::{braid_word_eval, check_coxeter, coxeter_equations};
pub use coherence::{
    beta_blocks, beta_on_vect, cbc_equation, check_hexagon, check_id_bfunctor, check_pentagon,
    check_preunital, hexagon_equation, id_bfunctor_equation, pentagon_equation, preunital_equations,
};
pub use field::{Field, FieldSpec, PrimeField, Rationals, MAX_PRIME};
pub use json::{AnyOperator, OperatorJson, ScalarJson};
pub use operator::{flip, total_dim, LegOperator};
pub use tetra::{
    check_cl_2morphism, check_lze, check_m_relation, check_s_relation, check_tetrahedron,
    cl_2morphism_equation, compose_l, l_to_m, lze_equation, m_relation_equation, m_to_l,
    reversal, s_relation_equation, s_to_z, tetrahedron_equation, z_to_s,
};
pub use word::{
    place, CheckMode, CheckOptions, Equation, Letter, Placement, PlacedOperator, Word,
    EXHAUSTIVE_LIMIT, RANDOM_SAMPLES,
};
