//! Finite categories, orbit categories, fixed-point diagrams and cellular
//! chain diagrams.

use std::sync::Arc;

use effhom::diagcat::{representable, FiniteGroup, GSpace, OrbitCategory};
use effhom::simp::two_cell_circle;

fn main() -> effhom::Result<()> {
    let orbit = OrbitCategory::new(&FiniteGroup::cyclic(4));
    let cat = orbit.category();
    println!("orbit category of Z/4: objects {:?}, {} morphisms", cat.objects(), cat.n_morphisms());

    let index = Arc::new(cat.opposite());
    let rep = representable(&index, orbit.free_orbit());
    rep.audit(0)?;
    for j in 0..index.n_objects() {
        let rank = rep.value_at(j).basis(0).map_or(0, |b| b.len());
        println!("Z·O(G/e, {}) has rank {rank}", index.object_name(j));
    }

    // Z/2 swapping the two halves of a circle
    let x = GSpace::new(two_cell_circle(), FiniteGroup::cyclic(2), |g, k, _| {
        let swap = |s: &str| match s {
            "v0" => "v1",
            "v1" => "v0",
            "e0" => "e1",
            _ => "e0",
        };
        effhom::chain::Key::str(if g == 0 { k.as_str() } else { swap(k.as_str()) })
    })?;
    let phi = x.fixed_points();
    for j in 0..phi.category().n_objects() {
        println!("fixed points over {}: {}", phi.category().object_name(j), phi.space(j).name());
    }
    Ok(())
}
