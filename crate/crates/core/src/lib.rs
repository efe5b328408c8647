//! Steenrod operations on the mod-p cohomology of finite simplicial sets, computed
//! from the diagonal and the cyclic action on the p-fold power, together with the
//! classical tensor-power construction used as a cross-check.

pub mod cyclic_resolution;
pub mod equivariant;
pub mod error;
pub mod fp_linalg;
pub mod simplicial;
pub mod steenrod_classical;
pub mod steenrod_diagonal;

pub use error::{Error, Result};
