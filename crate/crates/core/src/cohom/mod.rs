//! Cohomology of diagrams with diagram coefficients, homotopy classes into
//! Eilenberg–MacLane diagrams, Bredon cohomology and equivariant
//! cohomology operations.

mod cochain;
mod pipeline;

pub use cochain::{dualize, verify_dual_reduction, CochainComplex};
pub use pipeline::{
    bredon_cohomology, bredon_index, cancel_summand, cohomology, equivariant_operations, homotopy_classes,
    point_cohomology, OperationGroups,
};
