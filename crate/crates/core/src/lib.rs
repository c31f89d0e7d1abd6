//! Exact computations around b-magmas (`x(yz) = y(xz)`), their cohomology,
//! and the operator equations attached to b-structures on vector spaces:
//! pentagon, hexagon (Yang-Baxter), pre-unital, tetrahedron and RLLL.

pub mod cochain;
pub mod error;
pub mod magma;
pub mod par;
pub mod search;
pub mod tensorops;
pub mod zlinalg;

pub use error::{Error, Result};
