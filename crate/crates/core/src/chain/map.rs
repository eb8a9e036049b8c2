use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{Chain, Key};

type GenFn = dyn Fn(&Key, isize) -> Chain + Send + Sync;

/// A graded homomorphism given by its values on generators and extended
/// linearly. `shift` is the degree of the map.
#[derive(Clone)]
pub struct LinearMap {
    shift: isize,
    f: Arc<GenFn>,
}

impl LinearMap {
    /// `f(key, degree)` must return a chain of degree `degree + shift`.
    pub fn new(shift: isize, f: impl Fn(&Key, isize) -> Chain + Send + Sync + 'static) -> Self {
        LinearMap { shift, f: Arc::new(f) }
    }

    pub fn zero(shift: isize) -> Self {
        LinearMap::new(shift, move |_, d| Chain::zero(d + shift))
    }

    pub fn identity() -> Self {
        LinearMap::new(0, |k, d| Chain::generator(k.clone(), d))
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    pub fn apply_gen(&self, key: &Key, degree: isize) -> Chain {
        let out = (self.f)(key, degree);
        debug_assert_eq!(out.degree(), degree + self.shift, "map returned a chain in the wrong degree");
        out
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        let d = c.degree() + self.shift;
        let mut out = Chain::zero(d);
        for (k, v) in c.iter() {
            out.add_scaled(&self.apply_gen(k, c.degree()), *v);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let (a, b) = (self.clone(), other.clone());
        LinearMap::new(self.shift + other.shift, move |k, d| a.apply(&b.apply_gen(k, d)))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.shift, other.shift, "adding maps of different degrees");
        let (a, b) = (self.clone(), other.clone());
        LinearMap::new(self.shift, move |k, d| a.apply_gen(k, d).add(&b.apply_gen(k, d)))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearMap {
        self.scale(-1)
    }

    pub fn scale(&self, s: i64) -> LinearMap {
        let a = self.clone();
        LinearMap::new(self.shift, move |k, d| a.apply_gen(k, d).scale(s))
    }

    /// Caches values on generators. The cache is shared by clones of the
    /// returned map. The lock is not held while computing, so recursive
    /// maps may call themselves.
    pub fn memoized(&self) -> LinearMap {
        let cache: Arc<Mutex<HashMap<(Key, isize), Chain>>> = Arc::default();
        let inner = self.clone();
        LinearMap::new(self.shift, move |k, d| {
            if let Some(c) = cache.lock().expect("cache lock").get(&(k.clone(), d)) {
                return c.clone();
            }
            let c = inner.apply_gen(k, d);
            cache.lock().expect("cache lock").insert((k.clone(), d), c.clone());
            c
        })
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap(shift {})", self.shift)
    }
}
