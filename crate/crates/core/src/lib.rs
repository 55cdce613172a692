//! Finite reflection groups, their permutahedra and their Coxeter generalized
//! associahedra, computed in exact arithmetic.
//!
//! The pipeline runs bottom-up: [`root_system`] builds Φ and the reflection
//! action over ℚ or ℚ(√d), [`coxeter`] enumerates the group with elements
//! stored as permutations of Φ, [`polytope`] intersects halfspaces exactly,
//! [`permutahedron`] and [`cambrian`] assemble the two polytope families and
//! their combinatorics.

pub mod cambrian;
pub mod coxeter;
pub mod error;
pub mod group_type;
pub mod linalg;
pub mod oracle;
pub mod permutahedron;
pub mod polytope;
pub mod root_system;
pub mod scalar;

pub use error::{Error, Result};
pub use group_type::GroupType;
pub use linalg::Vector;
pub use root_system::{Arithmetic, RootSystem};
pub use scalar::Scalar;
