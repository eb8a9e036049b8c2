//! The Bousfield–Kan model of the homotopy left Kan extension along a
//! functor of finite categories, and its effective homology assembled from
//! the skeletal filtration. Homotopy colimits and cofibrant replacements
//! are the special cases of the terminal and identity functors.

mod bk;
mod effective;

pub use bk::{bk_canonicalize, bk_key, enumerate_nondeg_chains, evaluation_map, split_bk_key, BkSimplex, BkSpace};
pub use effective::{
    cofibrant_replacement, gk_equivalence, hocolim_effective, holan_effective, holan_space, pointwise_finite,
    skeletal_filtration, CofibrantReplacement, HolanOptions, HolanResult,
};
