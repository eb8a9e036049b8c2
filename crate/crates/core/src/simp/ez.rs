use crate::chain::ops::{split_tensor_key, tensor_key};
use crate::chain::{tensor, Chain, LinearMap};
use crate::reduct::Reduction;

use super::simplex::subsets;
use super::{normalized_chains, product, Product, Simplex, Space};

/// `Σ (μ_i − i)`, the parity of a shuffle given by the positions `μ`.
fn shuffle_sign(mu: &[usize]) -> i64 {
    if mu.iter().enumerate().map(|(i, m)| m - i).sum::<usize>() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pairs `(μ, ν)` of complementary increasing lists of sizes `p` and `q`.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    subsets(p + q, p)
        .into_iter()
        .map(|mu| {
            let nu = (0..p + q).filter(|i| mu.binary_search(i).is_err()).collect();
            (mu, nu)
        })
        .collect()
}

fn add_pair(out: &mut Chain, x: &Simplex, y: &Simplex, sign: i64) {
    if x.degens.iter().any(|j| y.degens.binary_search(j).is_ok()) {
        return;
    }
    let p = Product::pair(x, y);
    out.add_term(p.base, sign);
}

/// Alexander–Whitney: `(x, y) ↦ Σ_p x|[0..p] ⊗ y|[p..n]`.
pub fn alexander_whitney(x: &Space, y: &Space) -> LinearMap {
    let (x, y) = (x.clone(), y.clone());
    LinearMap::new(0, move |k, n| {
        let (a, b) = Product::split(k);
        let n = n as usize;
        let mut out = Chain::zero(n as isize);
        for p in 0..=n {
            let f = a.front(x.as_ref(), p);
            if f.is_degenerate() {
                continue;
            }
            let g = b.back(y.as_ref(), p);
            if g.is_degenerate() {
                continue;
            }
            out.add_term(tensor_key(p as isize, &f.base, &g.base), 1);
        }
        out
    })
}

/// Eilenberg–MacLane shuffle map: `a ⊗ b ↦ Σ ± (s_ν a, s_μ b)`.
pub fn shuffle_map() -> LinearMap {
    LinearMap::new(0, move |k, n| {
        let (p, a, b) = split_tensor_key(k);
        let p = p as usize;
        let q = n as usize - p;
        let mut out = Chain::zero(n);
        for (mu, nu) in shuffles(p, q) {
            let x = Simplex { dim: p + q, degens: nu, base: a.clone() };
            let y = Simplex { dim: p + q, degens: mu.clone(), base: b.clone() };
            add_pair(&mut out, &x, &y, shuffle_sign(&mu));
        }
        out
    })
}

/// The Shih homotopy on `C(X × Y)`.
pub fn shih_homotopy(x: &Space, y: &Space) -> LinearMap {
    let (xs, ys) = (x.clone(), y.clone());
    LinearMap::new(1, move |k, n| {
        let (a, b) = Product::split(k);
        let n = n as usize;
        let mut out = Chain::zero(n as isize + 1);
        for q in 0..n {
            for p in 0..n - q {
                let m = n - p - q;
                let mut xx = a.clone();
                for j in (n - q + 1..=n).rev() {
                    xx = xx.face(xs.as_ref(), j);
                }
                let xx = xx.degeneracy(m - 1);
                let mut yy = b.clone();
                for j in (m..m + p).rev() {
                    yy = yy.face(ys.as_ref(), j);
                }
                let sm = if m % 2 == 0 { 1 } else { -1 };
                for (mu, nu) in shuffles(p + 1, q) {
                    let mut sx = xx.clone();
                    for &j in &nu {
                        sx = sx.degeneracy(j + m);
                    }
                    let mut sy = yy.clone();
                    for &j in &mu {
                        sy = sy.degeneracy(j + m);
                    }
                    add_pair(&mut out, &sx, &sy, sm * shuffle_sign(&mu));
                }
            }
        }
        out
    })
}

/// The Eilenberg–Zilber reduction `C(X × Y) ⇒ C(X) ⊗ C(Y)`.
pub fn ez_reduction(x: &Space, y: &Space) -> Reduction {
    let prod: Space = product(x, y);
    let top = normalized_chains(&prod);
    let bottom = tensor(&normalized_chains(x), &normalized_chains(y));
    Reduction::new(top, bottom, alexander_whitney(x, y), shuffle_map(), shih_homotopy(x, y)).memoized()
}
