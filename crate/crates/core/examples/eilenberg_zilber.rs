//! Simplicial sets, their products and the Eilenberg–Zilber reduction.

use effhom::chain::homology_groups;
use effhom::reduct::verify_exhaustive;
use effhom::simp::{ez_reduction, normalized_chains, product, simplex_counts, sphere, Space};

fn main() -> effhom::Result<()> {
    let s1 = sphere(1);
    let torus: Space = product(&s1, &s1);
    println!("nondegenerate simplices of S¹ × S¹: {:?}", simplex_counts(torus.as_ref(), 2)?);
    let h: Vec<String> = homology_groups(&normalized_chains(&torus), 2)?.iter().map(ToString::to_string).collect();
    println!("H(S¹ × S¹) = {h:?}");
    let ez = ez_reduction(&s1, &s1);
    println!("EZ identities hold: {}", verify_exhaustive(&ez, 2)?.passed);
    Ok(())
}
