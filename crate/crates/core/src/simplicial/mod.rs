//! Finite simplicial sets, normalized chains and p-fold powers.

pub mod builders;
mod chains;
pub mod json;
mod morphism;
mod power;
mod set;
mod word;

pub use chains::{chain_cohomology, chain_complex, cohomology, ChainComplex, Cohomology};
pub use morphism::{CartesianPower, SimplicialMorphism};
pub use power::{
    diagonal_chain, power_space, product_limit_from_env, PowerSpace, DEFAULT_PRODUCT_LIMIT,
    PRODUCT_LIMIT_ENV,
};
pub(crate) use set::subsets_of_size;
pub use set::{FiniteSimplicialSet, Generator, SimplicialOp, SimplicialSetBuilder};
pub use word::{codegeneracy, coface, compose, DegeneracyWord, GenId, SimplexRef, MAX_DIM};
