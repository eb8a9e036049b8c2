//! Homotopy colimits: the suspension of S² as hocolim(∗ ← S² → ∗), and the
//! classifying space of Z/2 as the hocolim of a point.

use std::sync::Arc;

use effhom::chain::homology_groups;
use effhom::diagcat::{FiniteCategory, FiniteGroup, SpaceDiagram};
use effhom::holan::{hocolim_effective, pointwise_finite, HolanOptions};
use effhom::simp::{point, sphere, SimplicialMap};

fn show(name: &str, groups: &[effhom::abgrp::AbGroup]) {
    let g: Vec<String> = groups.iter().map(ToString::to_string).collect();
    println!("{name}: {}", g.join(", "));
}

fn main() -> effhom::Result<()> {
    let span = Arc::new(FiniteCategory::span());
    let (pt, s2) = (point(), sphere(2));
    let maps = vec![
        SimplicialMap::identity(&pt),
        SimplicialMap::identity(&s2),
        SimplicialMap::identity(&pt),
        SimplicialMap::to_point(&s2),
        SimplicialMap::to_point(&s2),
    ];
    let x = SpaceDiagram::new(span, vec![pt.clone(), s2, pt.clone()], maps)?;
    let (_, eq) = hocolim_effective(&x, &pointwise_finite(&x)?, &HolanOptions::default())?;
    show("H(hocolim(∗ ← S² → ∗))", &homology_groups(eq.effective(), 4)?);

    let z2 = Arc::new(FiniteCategory::from_group(&FiniteGroup::cyclic(2)));
    let x = SpaceDiagram::constant(&z2, &pt);
    let (_, eq) = hocolim_effective(&x, &pointwise_finite(&x)?, &HolanOptions::default())?;
    show("H(BZ/2)", &homology_groups(eq.effective(), 5)?);
    Ok(())
}
