//! Formal chains, graded maps, and locally effective and effective chain
//! complexes.

mod complex;
mod formal;
mod homology;
mod key;
mod map;
pub mod ops;
mod serial;

pub use complex::{ChainComplex, ComplexBuilder};
pub use formal::Chain;
pub use homology::{boundary_matrix, homology, homology_groups, Homology};
pub use key::Key;
pub use map::LinearMap;
pub use ops::{direct_sum, explicit_complex, suspend, tensor, zero_complex};
pub use serial::ComplexSpec;
