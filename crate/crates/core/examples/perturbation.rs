//! A reduction, the basic perturbation lemma and exhaustive verification
//! of the reduction identities.

use std::collections::HashMap;

use effhom::chain::{explicit_complex, homology_groups, Chain, Key, LinearMap};
use effhom::reduct::{basic_perturbation, verify_exhaustive, Reduction};

fn table(shift: isize, entries: Vec<(&'static str, isize, Chain)>) -> LinearMap {
    let m: HashMap<(Key, isize), Chain> = entries.into_iter().map(|(s, n, c)| ((Key::str(s), n), c)).collect();
    LinearMap::new(shift, move |k, n| m.get(&(k.clone(), n)).cloned().unwrap_or_else(|| Chain::zero(n + shift)))
}

fn main() -> effhom::Result<()> {
    let k = Key::str;
    // x, z in degree 0 and y in degree 1 with ∂y = z, reduced onto x
    let mut d = HashMap::new();
    d.insert((k("y"), 1), Chain::generator(k("z"), 0));
    let top = explicit_complex("T", vec![vec![k("x"), k("z")], vec![k("y")]], d)?;
    let bottom = explicit_complex("B", vec![vec![k("x")]], HashMap::new())?;
    let r = Reduction::new(
        top,
        bottom,
        table(0, vec![("x", 0, Chain::generator(k("x"), 0))]),
        LinearMap::identity(),
        table(1, vec![("z", 0, Chain::generator(k("y"), 1))]),
    );
    println!("reduction: {:?}", verify_exhaustive(&r, 1)?.passed);

    // perturb the top differential by y ↦ x
    let delta = table(-1, vec![("y", 1, Chain::generator(k("x"), 0))]);
    let p = basic_perturbation(&r, &delta, None)?;
    println!("perturbed reduction: {:?}", verify_exhaustive(&p, 1)?.passed);
    println!("α'(z) = {:?}", p.projection().apply_gen(&k("z"), 0));
    println!("H(top) = {:?}", homology_groups(p.top(), 1)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
