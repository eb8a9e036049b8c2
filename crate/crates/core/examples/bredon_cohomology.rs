//! Bredon cohomology of a point and of a free circle over Z/2.

use effhom::abgrp::{AbGroup, FeDiagram};
use effhom::cohom::{bredon_cohomology, bredon_index};
use effhom::diagcat::GSpace;
use effhom::holan::HolanOptions;
use effhom::simp::point;

fn main() -> effhom::Result<()> {
    let circle = GSpace::from_json(
        r#"{"group": {"elements": ["e", "t"], "table": [[0, 1], [1, 0]]},
            "space": {"dims": {"0": ["v0", "v1"], "1": ["e0", "e1"]},
                      "faces": {"e0": [{"base": "v1"}, {"base": "v0"}], "e1": [{"base": "v0"}, {"base": "v1"}]}},
            "action": {"t": {"v0": "v1", "v1": "v0", "e0": "e1", "e1": "e0"}}}"#,
    )?;
    let point = GSpace::trivial(point(), circle.group().clone())?;
    let cat = bredon_index(circle.group());
    let opts = HolanOptions::default();
    for (rho_name, a) in [("Z", AbGroup::free(1)), ("Z/2", AbGroup::cyclic(2))] {
        let rho = FeDiagram::constant(&cat, &a);
        for (x_name, x) in [("point", &point), ("free circle", &circle)] {
            let h: Vec<String> = bredon_cohomology(x, &rho, 3, &opts)?.iter().map(ToString::to_string).collect();
            println!("H_G({x_name}; {rho_name}) = {}", h.join(", "));
        }
    }
    Ok(())
}
