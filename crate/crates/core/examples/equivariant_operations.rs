//! Equivariant cohomology operations [K_G(π, 1), K_G(ρ, k)] over Z/2.

use effhom::abgrp::{AbGroup, FeDiagram};
use effhom::cohom::{bredon_index, equivariant_operations};
use effhom::diagcat::FiniteGroup;
use effhom::em::EmRegistry;
use effhom::holan::HolanOptions;

fn main() -> effhom::Result<()> {
    let cat = bredon_index(&FiniteGroup::cyclic(2));
    let registry = EmRegistry::default();
    for (name, a) in [("Z", AbGroup::free(1)), ("Z/2", AbGroup::cyclic(2)), ("Z/3", AbGroup::cyclic(3))] {
        let c = FeDiagram::constant(&cat, &a);
        let ops = equivariant_operations(&registry, &c, &c, 1, 3, &HolanOptions::default())?;
        let r: Vec<String> = ops.reduced.iter().map(ToString::to_string).collect();
        println!("[K_G({name}, 1), K_G({name}, k)] for k ≤ 3: {}", r.join(", "));
    }
    Ok(())
}
