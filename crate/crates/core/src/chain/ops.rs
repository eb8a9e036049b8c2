use std::collections::HashMap;
use std::sync::Arc;

use super::{Chain, ChainComplex, Key, LinearMap};
use crate::error::{Error, Result};

/// The complex with no generators.
pub fn zero_complex() -> ChainComplex {
    ChainComplex::builder("0", LinearMap::zero(-1)).basis(|_| Vec::new()).build()
}

/// A finite complex from explicit bases (`bases[n]` in degree `n`) and
/// boundaries of basis elements. Missing boundaries are zero.
pub fn explicit_complex(
    name: &str,
    bases: Vec<Vec<Key>>,
    boundaries: HashMap<(Key, isize), Chain>,
) -> Result<ChainComplex> {
    for (n, b) in bases.iter().enumerate() {
        for k in b {
            let deg = n as isize;
            if let Some(c) = boundaries.get(&(k.clone(), deg)) {
                let below = if n == 0 { &[][..] } else { &bases[n - 1][..] };
                if c.degree() != deg - 1 || c.keys().any(|t| !below.contains(t)) {
                    return Err(Error::Dimension(format!("boundary of {k} leaves the basis of degree {}", deg - 1)));
                }
            }
        }
    }
    let boundaries = Arc::new(boundaries);
    let bases = Arc::new(bases);
    let b2 = bases.clone();
    let c = ChainComplex::builder(
        name,
        LinearMap::new(-1, move |k, d| boundaries.get(&(k.clone(), d)).cloned().unwrap_or_else(|| Chain::zero(d - 1))),
    )
    .basis(move |n| b2.get(n as usize).cloned().unwrap_or_default())
    .build();
    c.check_differential(bases.len() as isize)?;
    Ok(c)
}

fn tag(i: i64, k: &Key) -> Key {
    Key::seq(vec![Key::Int(i), k.clone()])
}

/// `C ⊕ D` with generators tagged `[0, c]` and `[1, d]`.
pub fn direct_sum(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    let (c1, d1) = (c.clone(), d.clone());
    let diff = LinearMap::new(-1, move |k, n| {
        let part = k.get(1);
        match k.get(0).as_int() {
            0 => c1.d_gen(part, n).map_keys(n - 1, |t| tag(0, t)),
            _ => d1.d_gen(part, n).map_keys(n - 1, |t| tag(1, t)),
        }
    });
    let mut b = ChainComplex::builder(format!("({} ⊕ {})", c.name(), d.name()), diff);
    if c.is_effective() && d.is_effective() {
        let (c2, d2) = (c.clone(), d.clone());
        b = b.basis(move |n| {
            let mut out: Vec<Key> = c2.basis(n).unwrap().iter().map(|k| tag(0, k)).collect();
            out.extend(d2.basis(n).unwrap().iter().map(|k| tag(1, k)));
            out
        });
    }
    let (c3, d3) = (c.clone(), d.clone());
    b = b.contains(move |k, n| match k {
        Key::Seq(s) if s.len() == 2 => match s[0] {
            Key::Int(0) => c3.contains(&s[1], n),
            Key::Int(1) => d3.contains(&s[1], n),
            _ => false,
        },
        _ => false,
    });
    if c.has_filtration() && d.has_filtration() {
        let (c4, d4) = (c.clone(), d.clone());
        b = b.filtration(move |k, n| match k.get(0).as_int() {
            0 => c4.filtration(k.get(1), n).unwrap(),
            _ => d4.filtration(k.get(1), n).unwrap(),
        });
    }
    b.build()
}

/// Key of `a ⊗ b` with `|a| = p`.
pub fn tensor_key(p: isize, a: &Key, b: &Key) -> Key {
    Key::seq(vec![Key::int(p), a.clone(), b.clone()])
}

/// Splits a tensor key into `(|a|, a, b)`.
pub fn split_tensor_key(k: &Key) -> (isize, &Key, &Key) {
    let s = k.as_seq();
    (s[0].as_int() as isize, &s[1], &s[2])
}

/// Bilinear extension of a function on pairs of generators.
pub fn tensor_chains(a: &Chain, b: &Chain) -> Chain {
    let p = a.degree();
    let mut out = Chain::zero(p + b.degree());
    for (ka, va) in a.iter() {
        for (kb, vb) in b.iter() {
            out.add_term(tensor_key(p, ka, kb), va.checked_mul(*vb).expect("chain coefficient overflow"));
        }
    }
    out
}

/// `C ⊗ D` with `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    let (c1, d1) = (c.clone(), d.clone());
    let diff = LinearMap::new(-1, move |k, n| {
        let (p, a, b) = split_tensor_key(k);
        let q = n - p;
        let ga = Chain::generator(a.clone(), p);
        let gb = Chain::generator(b.clone(), q);
        let mut out = tensor_chains(&c1.d_gen(a, p), &gb);
        let sign = if p % 2 == 0 { 1 } else { -1 };
        out.add_scaled(&tensor_chains(&ga, &d1.d_gen(b, q)), sign);
        out
    });
    let mut bld = ChainComplex::builder(format!("({} ⊗ {})", c.name(), d.name()), diff);
    if c.is_effective() && d.is_effective() {
        let (c2, d2) = (c.clone(), d.clone());
        bld = bld.basis(move |n| {
            let mut out = Vec::new();
            for p in 0..=n {
                let bc = c2.basis(p).unwrap();
                if bc.is_empty() {
                    continue;
                }
                let bd = d2.basis(n - p).unwrap();
                for a in bc.iter() {
                    for b in bd.iter() {
                        out.push(tensor_key(p, a, b));
                    }
                }
            }
            out
        });
    }
    let (c3, d3) = (c.clone(), d.clone());
    bld = bld.contains(move |k, n| match k {
        Key::Seq(s) if s.len() == 3 => match s[0] {
            Key::Int(p) => {
                let p = p as isize;
                p >= 0 && p <= n && c3.contains(&s[1], p) && d3.contains(&s[2], n - p)
            }
            _ => false,
        },
        _ => false,
    });
    bld.build()
}

/// `s^k C`: the degree-`n` generators are those of `C` in degree `n − k`,
/// with the same keys and the same differential.
pub fn suspend(c: &ChainComplex, k: usize) -> ChainComplex {
    let k = k as isize;
    let c1 = c.clone();
    let diff = LinearMap::new(-1, move |key, n| c1.d_gen(key, n - k).with_degree(n - 1));
    let mut b = ChainComplex::builder(format!("s^{k}{}", c.name()), diff);
    if c.is_effective() {
        let c2 = c.clone();
        b = b.basis(move |n| c2.basis(n - k).unwrap().as_ref().clone());
    }
    let c3 = c.clone();
    b = b.contains(move |key, n| c3.contains(key, n - k));
    if c.has_filtration() {
        let c4 = c.clone();
        b = b.filtration(move |key, n| c4.filtration(key, n - k).unwrap());
    }
    b.build()
}

/// The subcomplex of an effective complex spanned by the basis elements
/// satisfying `keep`. The caller guarantees that it is closed under `∂`.
pub fn restrict(c: &ChainComplex, name: &str, keep: impl Fn(&Key, isize) -> bool + Send + Sync + 'static) -> Result<ChainComplex> {
    if !c.is_effective() {
        return Err(Error::LocalFiniteness(format!("{} has no finite basis to restrict", c.name())));
    }
    let keep = Arc::new(keep);
    let (c1, c2, k1, k2) = (c.clone(), c.clone(), keep.clone(), keep);
    let c3 = c.clone();
    let mut b = ChainComplex::builder(name, LinearMap::new(-1, move |k, n| c1.d_gen(k, n)))
        .basis(move |n| c2.basis(n).unwrap().iter().filter(|k| k1(k, n)).cloned().collect())
        .contains(move |k, n| k2(k, n) && c3.contains(k, n));
    if c.has_filtration() {
        let c4 = c.clone();
        b = b.filtration(move |k, n| c4.filtration(k, n).unwrap());
    }
    Ok(b.build())
}
