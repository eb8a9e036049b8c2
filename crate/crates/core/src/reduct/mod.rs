//! Reductions, strong equivalences and the perturbation lemmas.

mod assembly;
mod compose;
mod perturb;
mod reduction;

pub use assembly::{filtered_assembly, sum_stages, AssemblyOptions};
pub use compose::{compose_equivalences, compose_reductions, tensor_maps, tensor_reductions};
pub use perturb::{
    basic_perturbation, basic_perturbation_checked, check_nilpotency, default_bound, easy_perturbation,
    transferred_perturbation,
};
pub use reduction::{
    basis_probes, verify_equivalence, verify_exhaustive, verify_reduction, Reduction, StrongEquivalence,
    VerificationReport, Violation,
};

#[cfg(test)]
mod tests;
