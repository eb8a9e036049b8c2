use std::sync::Arc;

use crate::chain::{Chain, ChainComplex, Key, LinearMap};
use crate::error::{Error, Result};

use super::{Simplex, Space};

/// Normalized chains: generators are nondegenerate simplices (keyed by
/// their base key), `∂ = Σ (−1)^i d_i` with degenerate faces dropped.
pub fn normalized_chains(x: &Space) -> ChainComplex {
    let xd = x.clone();
    let diff = LinearMap::new(-1, move |k, n| {
        let mut out = Chain::zero(n - 1);
        if n <= 0 {
            return out;
        }
        let n = n as usize;
        for i in 0..=n {
            let f = xd.face_nd(k, n, i);
            if !f.is_degenerate() {
                out.add_term(f.base, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        out
    });
    let mut b = ChainComplex::builder(format!("C({})", x.name()), diff);
    if x.nondegenerate(0).is_some() && x.nondegenerate(1).is_some() {
        let xb = x.clone();
        b = b.basis(move |n| xb.nondegenerate(n as usize).expect("effective space"));
    }
    let xc = x.clone();
    b.contains(move |k, n| xc.contains(k, n as usize)).build()
}

/// The normalized chain of a simplex: its base, or zero if degenerate.
pub fn simplex_chain(x: &Simplex, sign: i64) -> Chain {
    if x.is_degenerate() {
        Chain::zero(x.dim as isize)
    } else {
        Chain::from_terms(x.dim as isize, [(x.base.clone(), sign)])
    }
}

type SimplexFn = dyn Fn(&Key, usize) -> Simplex + Send + Sync;

/// A simplicial map, given on nondegenerate simplices.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Space,
    target: Space,
    f: Arc<SimplexFn>,
}

impl SimplicialMap {
    pub fn new(source: Space, target: Space, f: impl Fn(&Key, usize) -> Simplex + Send + Sync + 'static) -> Self {
        SimplicialMap { source, target, f: Arc::new(f) }
    }

    pub fn identity(x: &Space) -> Self {
        SimplicialMap::new(x.clone(), x.clone(), |k, n| Simplex::nondegenerate(k.clone(), n))
    }

    /// The map to the point.
    pub fn to_point(x: &Space) -> Self {
        SimplicialMap::new(x.clone(), super::point(), |_, n| {
            Simplex::degenerate(Key::ints(&[0usize]), 0, &(0..n).collect::<Vec<_>>())
        })
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn on_nondegenerate(&self, base: &Key, dim: usize) -> Simplex {
        (self.f)(base, dim)
    }

    /// `f(θ^* y) = θ^* f(y)`.
    pub fn apply(&self, x: &Simplex) -> Simplex {
        let fy = (self.f)(&x.base, x.base_dim());
        if x.degens.is_empty() {
            return fy;
        }
        fy.apply(self.target.as_ref(), &x.surjection())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SimplicialMap) -> SimplicialMap {
        let (a, b) = (self.clone(), other.clone());
        SimplicialMap::new(other.source.clone(), self.target.clone(), move |k, n| a.apply(&b.on_nondegenerate(k, n)))
    }

    /// The induced map on normalized chains.
    pub fn chain_map(&self) -> LinearMap {
        let f = self.f.clone();
        LinearMap::new(0, move |k, n| simplex_chain(&f(k, n as usize), 1))
    }

    /// Checks dimensions and `f d_i = d_i f` on every nondegenerate simplex
    /// of the (effective) source through `max_dim`.
    pub fn check(&self, max_dim: usize) -> Result<()> {
        for n in 0..=max_dim {
            let bases = self
                .source
                .nondegenerate(n)
                .ok_or_else(|| Error::LocalFiniteness(format!("{} is not effective", self.source.name())))?;
            for b in bases {
                let fy = self.on_nondegenerate(&b, n);
                if fy.dim != n || !self.target.contains(&fy.base, fy.base_dim()) {
                    return Err(Error::audit("simplicial map", format!("{b} ↦ {fy:?}")));
                }
                if n == 0 {
                    continue;
                }
                let y = Simplex::nondegenerate(b.clone(), n);
                for i in 0..=n {
                    let lhs = self.apply(&y.face(self.source.as_ref(), i));
                    let rhs = fy.face(self.target.as_ref(), i);
                    if lhs != rhs {
                        return Err(Error::audit("f d_i = d_i f", format!("i = {i} on {b}: {lhs:?} ≠ {rhs:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}
