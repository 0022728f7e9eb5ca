//! Independent finite-field check of the fiber point counts.

pub mod chain;
pub mod field;
pub mod lattice;

pub use chain::{
    compare, enumerate_fiber_chains, enumerate_fiber_chains_in_flag, fiber_point_count,
    fiber_point_count_in_flag, verify_against_kostant, BucketCheck, FiberCount, FlagChain,
    OracleConfig, OracleReport,
};
pub use field::PrimeField;
pub use lattice::{enumerate_lattices, lattice_count, ConstMatrix, Lattice};
