//! Finite categories, orbit categories, and diagrams of spaces and chain
//! complexes indexed by them.

mod category;
mod diagram;
mod functor;
mod group;
mod gspace;

pub use category::{CategorySpec, FiniteCategory, MorId, Morphism, MorphismSpec, ObjId};
pub use diagram::{
    check_natural, diagram_tensor_const, external_tensor, free_diagram, free_key, post_compose, representable,
    tensor_equivalences, tensor_totals, Cells, ChainDiagram, EffectiveDiagram, SpaceDiagram, SpaceDiagramSpec,
};
pub use functor::Functor;
pub use group::{FiniteGroup, GroupSpec, OrbitCategory};
pub use gspace::{GSpace, GSpaceSpec, SubSpace};
