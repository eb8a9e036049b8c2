//! Smith normal form, kernels, cokernels and natural transformations
//! between diagrams of abelian groups.

use effhom::abgrp::{cokernel, hom_diagram, kernel, smith_normal_form, AbGroup, FeDiagram, Hom, IntMatrix};
use effhom::diagcat::{FiniteCategory, FiniteGroup};

fn main() -> effhom::Result<()> {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("S = {:?}", snf.s.to_nested());
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);

    // Z --2--> Z/4
    let z = AbGroup::free(1);
    let z4 = AbGroup::cyclic(4);
    let f = Hom::new(z.clone(), z4.clone(), IntMatrix::from_rows(&[[2]]))?;
    let (k, _) = kernel(&f);
    let (c, _) = cokernel(&f);
    println!("ker = {}, coker = {}", k.group(), c.group());

    // natural maps Z[Z/2] → Z over the one-object category of Z/2
    let cat = FiniteCategory::from_group(&FiniteGroup::cyclic(2));
    let regular = FeDiagram::representable(&cat, 0)?;
    let trivial = FeDiagram::constant(&cat, &z);
    println!("Hom(Z[Z/2], Z) = {}", hom_diagram(&regular, &trivial)?.group());
    Ok(())
}
