//! Simplicial sets with canonical degeneracy forms, normalized chains, the
//! Eilenberg–Zilber reduction and nerves of finite categories.

mod chains;
mod ez;
mod nerve;
mod simplex;
mod space;

pub use chains::{normalized_chains, simplex_chain, SimplicialMap};
pub use ez::{alexander_whitney, ez_reduction, shih_homotopy, shuffle_map};
pub use nerve::{nerve, Nerve};
pub(crate) use simplex::subsets;
pub use simplex::Simplex;
pub use space::{
    all_simplices, boundary, check_identities, empty, point, product, projective_plane, simplex, simplex_counts,
    skeleton, sphere, two_cell_circle, FaceSpec, FiniteSpace, Product, SimplicialSet, Skeleton, Space, SpaceSpec,
};
