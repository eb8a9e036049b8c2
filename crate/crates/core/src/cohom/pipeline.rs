use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cochain::dualize;
use crate::abgrp::{AbGroup, FeDiagram};
use crate::diagcat::{EffectiveDiagram, FiniteCategory, FiniteGroup, GSpace, OrbitCategory, SpaceDiagram};
use crate::em::{em_diagram, EmRegistry};
use crate::error::{Error, Result};
use crate::holan::{cofibrant_replacement, pointwise_finite, HolanOptions};
use crate::reduct::StrongEquivalence;
use crate::simp::point;

/// `H^0, …, H^{max_degree}` of `Hom(C, π)` for the effective side of `c`.
pub fn cohomology(c: &EffectiveDiagram, pi: &FeDiagram, max_degree: usize) -> Result<Vec<AbGroup>> {
    dualize(&c.effective, pi, max_degree)?.cohomology_groups()
}

/// `[X^cof, K(π, n)] ≅ H^n(X^cof; π)` for `n ≤ max_degree`.
pub fn homotopy_classes(
    x: &SpaceDiagram,
    pointwise: &[StrongEquivalence],
    pi: &FeDiagram,
    max_degree: usize,
    opts: &HolanOptions,
) -> Result<Vec<AbGroup>> {
    let cof = cofibrant_replacement(x, pointwise, opts)?;
    cohomology(&cof.holan.chains, pi, max_degree)
}

/// The index category of coefficient systems: the opposite orbit category.
pub fn bredon_index(group: &FiniteGroup) -> FiniteCategory {
    OrbitCategory::new(group).category().opposite()
}

/// `H^n_G(X; ρ) = H^n(ΦX; ρ)` for `n ≤ max_degree`.
pub fn bredon_cohomology(x: &GSpace, rho: &FeDiagram, max_degree: usize, opts: &HolanOptions) -> Result<Vec<AbGroup>> {
    let phi = x.fixed_points();
    homotopy_classes(&phi, &pointwise_finite(&phi)?, rho, max_degree, opts)
}

/// Cohomology of the constant point diagram over `ρ`'s category.
pub fn point_cohomology(rho: &FeDiagram, max_degree: usize, opts: &HolanOptions) -> Result<Vec<AbGroup>> {
    let cat = Arc::new(rho.category().clone());
    let pt = SpaceDiagram::constant(&cat, &point());
    homotopy_classes(&pt, &pointwise_finite(&pt)?, rho, max_degree, opts)
}

/// Unpointed and pointed classes `[K(π, n), K(ρ, k)]` for `k ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationGroups {
    pub unreduced: Vec<AbGroup>,
    pub reduced: Vec<AbGroup>,
}

/// `H^k(K(π, n)^cof; ρ)`, and its reduced part: the base vertex is a
/// retract, so the point's cohomology splits off.
pub fn equivariant_operations(
    registry: &EmRegistry,
    pi: &FeDiagram,
    rho: &FeDiagram,
    n: usize,
    max_degree: usize,
    opts: &HolanOptions,
) -> Result<OperationGroups> {
    let k = em_diagram(pi, n);
    let pointwise = registry.diagram_effective_homology(pi, n)?;
    let unreduced = homotopy_classes(&k, &pointwise, rho, max_degree, opts)?;
    let base = point_cohomology(rho, max_degree, opts)?;
    let reduced = unreduced
        .iter()
        .zip(&base)
        .map(|(u, b)| {
            cancel_summand(u, b).ok_or_else(|| Error::IllDefined(format!("{b} is not a summand of {u}")))
        })
        .collect::<Result<_>>()?;
    Ok(OperationGroups { unreduced, reduced })
}

fn prime_powers(q: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut rest = q.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut pe = BigInt::one();
        while rest.is_multiple_of(&p) {
            rest /= &p;
            pe *= &p;
        }
        if !pe.is_one() {
            out.push(pe);
        }
        p += 1;
    }
    if rest > BigInt::one() {
        out.push(rest);
    }
    out
}

fn primary_parts(g: &AbGroup) -> (Vec<BigInt>, usize) {
    let mut parts: Vec<BigInt> = g.torsion().iter().flat_map(prime_powers).collect();
    parts.sort();
    (parts, g.free_rank())
}

/// `C` with `A ≅ B ⊕ C`, or `None` if `B` is not a summand of `A`.
/// Finitely generated abelian groups cancel, so `C` is unique.
pub fn cancel_summand(whole: &AbGroup, part: &AbGroup) -> Option<AbGroup> {
    let (mut torsion, free) = primary_parts(whole);
    let (remove, free_part) = primary_parts(part);
    if free_part > free {
        return None;
    }
    for q in remove {
        let pos = torsion.iter().position(|t| *t == q)?;
        torsion.remove(pos);
    }
    torsion.extend(std::iter::repeat(BigInt::zero()).take(free - free_part));
    Some(AbGroup::new(torsion).canonical())
}
