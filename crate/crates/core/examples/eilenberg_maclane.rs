//! Eilenberg–MacLane spaces in the cocycle model and the built-in effective
//! homology of K(π, 1).

use effhom::abgrp::AbGroup;
use effhom::chain::homology_groups;
use effhom::em::{em_effective_homology, em_space};
use effhom::reduct::verify_exhaustive;
use effhom::simp::{check_identities, simplex_counts};

fn main() -> effhom::Result<()> {
    let z3 = AbGroup::cyclic(3);
    let k = em_space(&z3, 1);
    check_identities(k.as_ref(), 4)?;
    println!("simplices of K(Z/3, 1): {:?}", simplex_counts(k.as_ref(), 4)?);
    for g in [AbGroup::free(1), z3, AbGroup::from_orders(&[2, 2])] {
        let eq = em_effective_homology(&g, 1)?;
        let h: Vec<String> = homology_groups(eq.effective(), 4)?.iter().map(ToString::to_string).collect();
        println!("H(K({g}, 1)) = {}", h.join(", "));
    }
    let eq = em_effective_homology(&AbGroup::cyclic(2), 1)?;
    println!("reduction verified: {}", verify_exhaustive(eq.right(), 4)?.passed);
    match em_effective_homology(&AbGroup::cyclic(2), 2) {
        Err(e) => println!("K(Z/2, 2): {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
