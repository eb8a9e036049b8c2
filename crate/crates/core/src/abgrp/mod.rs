//! Exact integer linear algebra and fully effective abelian groups.

mod diagram;
mod group;
mod matrix;
mod snf;

pub use diagram::{hom_diagram, FeDiagram, FeDiagramSpec, HomDiagram};
pub use group::{cokernel, homology_at, kernel, AbGroup, FeGroup, GroupSpec, Hom};
pub use matrix::IntMatrix;
pub use snf::{integer_kernel, lattice_basis, smith_normal_form, LatticeSolver, SmithForm};
