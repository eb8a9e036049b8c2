//! An explicit chain complex and its homology with representatives.

use std::collections::HashMap;

use effhom::chain::{explicit_complex, homology, Chain, Key};

fn main() -> effhom::Result<()> {
    // the cellular chains of RP²: one cell in each degree, ∂e2 = 2 e1
    let k = Key::str;
    let bases = vec![vec![k("e0")], vec![k("e1")], vec![k("e2")]];
    let mut d = HashMap::new();
    d.insert((k("e2"), 2), Chain::term(k("e1"), 1, 2));
    let c = explicit_complex("RP2", bases, d)?;
    for n in 0..=2 {
        let h = homology(&c, n)?;
        println!("H{n} = {} represented by {:?}", h.group(), h.representatives());
    }
    Ok(())
}
