//! The cofibrant replacement of the point over Z/2: infinite, but with
//! effective homology whose value is acyclic.

use std::sync::Arc;

use effhom::chain::homology_groups;
use effhom::diagcat::{FiniteCategory, FiniteGroup, SpaceDiagram};
use effhom::holan::{cofibrant_replacement, pointwise_finite, HolanOptions};
use effhom::simp::{point, simplex_counts};

fn main() -> effhom::Result<()> {
    let z2 = Arc::new(FiniteCategory::from_group(&FiniteGroup::cyclic(2)));
    let x = SpaceDiagram::constant(&z2, &point());
    let cof = cofibrant_replacement(&x, &pointwise_finite(&x)?, &HolanOptions::default())?;
    let value = cof.holan.space.space(0);
    println!("nondegenerate simplices of X^cof(•): {:?}", simplex_counts(value.as_ref(), 4)?);
    let h = homology_groups(&cof.holan.chains.effective.value_at(0), 3)?;
    println!("H(X^cof(•)) = {:?}", h.iter().map(ToString::to_string).collect::<Vec<_>>());
    cof.evaluation[0].check(3)?;
    Ok(())
}
