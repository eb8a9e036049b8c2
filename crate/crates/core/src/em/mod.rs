//! Eilenberg–MacLane spaces `K(π, n)` in the cocycle model, their diagrams,
//! and effective homology: built in for `n = 1`, through registered
//! providers otherwise.

mod cyclic;
mod space;
#[cfg(test)]
mod tests;

use std::sync::Arc;

use num_traits::ToPrimitive;

pub use cyclic::{cyclic_reduction, small_cyclic_complex};
pub use space::{em_diagram, em_map, em_space, CocycleTable, EmSpace};

use crate::abgrp::{AbGroup, FeDiagram};
use crate::chain::{Chain, ChainComplex, Key, LinearMap};
use crate::error::{Error, Result};
use crate::reduct::{compose_reductions, tensor_reductions, Reduction, StrongEquivalence};
use crate::simp::{ez_reduction, normalized_chains, Product, Simplex, Space};

/// A source of effective homology for `C(K(π, n))`.
pub trait EmProvider: Send + Sync {
    /// An equivalence whose original complex has the keys and differential
    /// of `chains = C(em_space(π, n))`, or `None` when `(π, n)` is not
    /// covered.
    fn equivalence(&self, group: &AbGroup, n: usize, chains: &ChainComplex) -> Option<Result<StrongEquivalence>>;
}

/// Registered providers, consulted in order before the built-in `n = 1`
/// construction.
#[derive(Clone, Default)]
pub struct EmRegistry {
    providers: Vec<Arc<dyn EmProvider>>,
}

impl EmRegistry {
    pub fn register(&mut self, provider: Arc<dyn EmProvider>) {
        self.providers.push(provider);
    }

    pub fn effective_homology(&self, group: &AbGroup, n: usize) -> Result<StrongEquivalence> {
        let chains = normalized_chains(&em_space(group, n));
        for p in &self.providers {
            if let Some(r) = p.equivalence(group, n, &chains) {
                return r;
            }
        }
        if n == 1 {
            return Ok(k_pi_1(group, &chains));
        }
        Err(Error::Unsupported(format!("effective homology of K({group}, {n}) needs a registered provider")))
    }

    /// Pointwise effective homology of `em_diagram(π, n)`.
    pub fn diagram_effective_homology(&self, pi: &FeDiagram, n: usize) -> Result<Vec<StrongEquivalence>> {
        (0..pi.category().n_objects()).map(|i| self.effective_homology(pi.group(i), n)).collect()
    }
}

/// Effective homology of `K(π, n)` with only the built-in construction.
pub fn em_effective_homology(group: &AbGroup, n: usize) -> Result<StrongEquivalence> {
    EmRegistry::default().effective_homology(group, n)
}

fn order(group: &AbGroup, c: usize) -> i64 {
    group.orders()[c].to_i64().expect("group order fits in i64")
}

/// `C(K(π, 1))` reduced to the tensor product of the small cyclic
/// complexes of the nontrivial coordinates, through
/// `K(π, 1) ≅ K(π₁, 1) × (K(π₂, 1) × ⋯)` and Eilenberg–Zilber.
fn k_pi_1(group: &AbGroup, chains: &ChainComplex) -> StrongEquivalence {
    let coords: Vec<usize> = (0..group.len()).filter(|&c| order(group, c) != 1).collect();
    match coords.len() {
        0 => StrongEquivalence::identity(chains),
        1 => StrongEquivalence::from_reduction(cyclic_reduction(chains, order(group, coords[0]), group.len(), coords[0])),
        _ => {
            let factors: Vec<Arc<EmSpace>> = coords
                .iter()
                .map(|&c| Arc::new(EmSpace::new(&AbGroup::new(vec![group.orders()[c].clone()]), 1)))
                .collect();
            let iso = split_factors(group, &coords, &factors, chains);
            let red = product_reduction(&factors, &coords.iter().map(|&c| order(group, c)).collect::<Vec<_>>());
            let red = red.rebased(iso.bottom(), red.bottom());
            StrongEquivalence::from_reduction(compose_reductions(&iso, &red).expect("shared middle complex"))
        }
    }
}

fn nested_product(factors: &[Arc<EmSpace>]) -> Space {
    if factors.len() == 1 {
        return factors[0].clone();
    }
    let first: Space = factors[0].clone();
    crate::simp::product(&first, &nested_product(&factors[1..]))
}

/// `C(K_1 × (K_2 × ⋯)) ⇒ S_1 ⊗ (S_2 ⊗ ⋯)`.
fn product_reduction(factors: &[Arc<EmSpace>], orders: &[i64]) -> Reduction {
    let first: Space = factors[0].clone();
    let c1 = cyclic_reduction(&normalized_chains(&first), orders[0], 1, 0);
    if factors.len() == 1 {
        return c1;
    }
    let rest = nested_product(&factors[1..]);
    let ez = ez_reduction(&first, &rest);
    let inner = product_reduction(&factors[1..], &orders[1..]);
    let t = tensor_reductions(&c1, &inner);
    let t = t.rebased(ez.bottom(), t.bottom());
    compose_reductions(&ez, &t).expect("shared middle complex")
}

/// Component tables of a nondegenerate simplex of the nested product.
fn tables_of(factors: &[Arc<EmSpace>], key: &Key, dim: usize) -> Vec<CocycleTable> {
    if factors.len() == 1 {
        return vec![EmSpace::table(key)];
    }
    let (s1, rest) = Product::split(key);
    let mut out = vec![factors[0].expand(&s1)];
    let theta = rest.surjection();
    for t in tables_of(&factors[1..], &rest.base, rest.base_dim()) {
        out.push(factors[1].pullback(&t, rest.base_dim(), &theta));
    }
    debug_assert!(out.iter().all(|t| t.len() == factors[0].faces(dim).len()));
    out
}

/// The simplex of the nested product with the given component tables.
fn pair_of(factors: &[Arc<EmSpace>], tables: &[CocycleTable], dim: usize) -> Simplex {
    let s = factors[0].simplex_of(tables[0].clone(), dim);
    if factors.len() == 1 {
        return s;
    }
    Product::pair(&s, &pair_of(&factors[1..], &tables[1..], dim))
}

/// The isomorphism `C(K(π, 1)) ≅ C(K(π₁, 1) × (K(π₂, 1) × ⋯))`.
fn split_factors(
    group: &AbGroup,
    coords: &[usize],
    factors: &[Arc<EmSpace>],
    chains: &ChainComplex,
) -> Reduction {
    let bottom = normalized_chains(&nested_product(factors));
    let (f1, c1) = (factors.to_vec(), coords.to_vec());
    let forward = LinearMap::new(0, move |k, n| {
        let table = EmSpace::table(k);
        let comps: Vec<CocycleTable> = c1.iter().map(|&c| table.iter().map(|v| vec![v[c]]).collect()).collect();
        let s = pair_of(&f1, &comps, n as usize);
        if s.is_degenerate() {
            Chain::zero(n)
        } else {
            Chain::generator(s.base, n)
        }
    });
    let (f2, c2, len) = (factors.to_vec(), coords.to_vec(), group.len());
    let backward = LinearMap::new(0, move |k, n| {
        let comps = tables_of(&f2, k, n as usize);
        let rows = comps[0].len();
        let table: CocycleTable = (0..rows)
            .map(|r| {
                let mut v = vec![0; len];
                for (j, &c) in c2.iter().enumerate() {
                    v[c] = comps[j][r][0];
                }
                v
            })
            .collect();
        Chain::generator(EmSpace::key(&table), n)
    });
    Reduction::isomorphism(chains.clone(), bottom, forward, backward)
}
