//! Cohomology of a diagram with diagram coefficients, i.e. homotopy classes
//! into an Eilenberg–MacLane diagram.

use std::sync::Arc;

use effhom::abgrp::{AbGroup, FeDiagram};
use effhom::cohom::homotopy_classes;
use effhom::diagcat::{FiniteCategory, SpaceDiagram};
use effhom::holan::{pointwise_finite, HolanOptions};
use effhom::simp::projective_plane;

fn main() -> effhom::Result<()> {
    let span = FiniteCategory::span();
    let x = SpaceDiagram::constant(&Arc::new(span.clone()), &projective_plane());
    let pointwise = pointwise_finite(&x)?;
    for (name, pi) in [
        ("constant Z", FeDiagram::constant(&span, &AbGroup::free(1))),
        ("constant Z/2", FeDiagram::constant(&span, &AbGroup::cyclic(2))),
        ("representable at the apex", FeDiagram::representable(&span, 1)?),
    ] {
        let h = homotopy_classes(&x, &pointwise, &pi, 3, &HolanOptions::default())?;
        let h: Vec<String> = h.iter().map(ToString::to_string).collect();
        println!("[RP², K({name}, n)] for n ≤ 3: {}", h.join(", "));
    }
    Ok(())
}
