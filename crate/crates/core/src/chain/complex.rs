use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use super::{Chain, Key, LinearMap};
use crate::error::{Error, Result};

type BasisFn = dyn Fn(isize) -> Vec<Key> + Send + Sync;
type PredFn = dyn Fn(&Key, isize) -> bool + Send + Sync;
type FiltrationFn = dyn Fn(&Key, isize) -> usize + Send + Sync;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

struct Inner {
    id: u64,
    name: String,
    diff: LinearMap,
    basis: Option<Arc<BasisFn>>,
    basis_cache: Mutex<HashMap<isize, Arc<Vec<Key>>>>,
    contains: Option<Arc<PredFn>>,
    filtration: Option<Arc<FiltrationFn>>,
}

/// A chain complex of free abelian groups, concentrated in nonnegative
/// degrees, given by its differential on generators.
///
/// With a basis enumerator the complex is effective: every degree has a
/// finite, explicitly listed basis. Without one it is only locally
/// effective. Each complex has an identity used to detect mismatched
/// compositions; clones share it.
#[derive(Clone)]
pub struct ChainComplex(Arc<Inner>);

pub struct ComplexBuilder {
    name: String,
    diff: LinearMap,
    basis: Option<Arc<BasisFn>>,
    contains: Option<Arc<PredFn>>,
    filtration: Option<Arc<FiltrationFn>>,
}

impl ComplexBuilder {
    /// Finite basis of each degree, in a fixed order.
    pub fn basis(mut self, f: impl Fn(isize) -> Vec<Key> + Send + Sync + 'static) -> Self {
        self.basis = Some(Arc::new(f));
        self
    }

    /// Membership test for generators.
    pub fn contains(mut self, f: impl Fn(&Key, isize) -> bool + Send + Sync + 'static) -> Self {
        self.contains = Some(Arc::new(f));
        self
    }

    /// Filtration degree of each generator.
    pub fn filtration(mut self, f: impl Fn(&Key, isize) -> usize + Send + Sync + 'static) -> Self {
        self.filtration = Some(Arc::new(f));
        self
    }

    pub fn build(self) -> ChainComplex {
        let raw = self.diff;
        let diff = LinearMap::new(-1, move |k, d| if d <= 0 { Chain::zero(d - 1) } else { raw.apply_gen(k, d) });
        ChainComplex(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: self.name,
            diff,
            basis: self.basis,
            basis_cache: Mutex::default(),
            contains: self.contains,
            filtration: self.filtration,
        }))
    }
}

impl ChainComplex {
    /// Starts a complex with the given differential (degree −1). The
    /// differential is forced to vanish out of degree 0.
    pub fn builder(name: impl Into<String>, diff: LinearMap) -> ComplexBuilder {
        assert_eq!(diff.shift(), -1, "a differential has degree -1");
        ComplexBuilder { name: name.into(), diff, basis: None, contains: None, filtration: None }
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn same(&self, other: &ChainComplex) -> bool {
        self.0.id == other.0.id
    }

    /// Errors unless `other` is this very complex.
    pub fn expect_same(&self, other: &ChainComplex, context: &str) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::ComplexMismatch(format!("{context}: {} is not {}", self.name(), other.name())))
        }
    }

    pub fn differential(&self) -> &LinearMap {
        &self.0.diff
    }

    pub fn d(&self, c: &Chain) -> Chain {
        self.0.diff.apply(c)
    }

    pub fn d_gen(&self, key: &Key, degree: isize) -> Chain {
        self.0.diff.apply_gen(key, degree)
    }

    pub fn is_effective(&self) -> bool {
        self.0.basis.is_some()
    }

    /// Basis in degree `n`, or `None` for a locally effective complex.
    /// Negative degrees have the empty basis.
    pub fn basis(&self, n: isize) -> Option<Arc<Vec<Key>>> {
        let f = self.0.basis.as_ref()?;
        if n < 0 {
            return Some(Arc::new(Vec::new()));
        }
        if let Some(b) = self.0.basis_cache.lock().expect("basis cache").get(&n) {
            return Some(b.clone());
        }
        let b = Arc::new(f(n));
        self.0.basis_cache.lock().expect("basis cache").insert(n, b.clone());
        Some(b)
    }

    /// Basis in degree `n`; errors on a locally effective complex.
    pub fn basis_or_err(&self, n: isize) -> Result<Arc<Vec<Key>>> {
        self.basis(n).ok_or_else(|| Error::LocalFiniteness(format!("{} has no finite basis", self.name())))
    }

    pub fn contains(&self, key: &Key, degree: isize) -> bool {
        if degree < 0 {
            return false;
        }
        if let Some(f) = &self.0.contains {
            return f(key, degree);
        }
        match self.basis(degree) {
            Some(b) => b.contains(key),
            None => true,
        }
    }

    pub fn has_filtration(&self) -> bool {
        self.0.filtration.is_some()
    }

    pub fn filtration(&self, key: &Key, degree: isize) -> Option<usize> {
        self.0.filtration.as_ref().map(|f| f(key, degree))
    }

    /// Same complex under a new identity with the given filtration.
    pub fn with_filtration(&self, f: impl Fn(&Key, isize) -> usize + Send + Sync + 'static) -> ChainComplex {
        ChainComplex(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: self.0.name.clone(),
            diff: self.0.diff.clone(),
            basis: self.0.basis.clone(),
            basis_cache: Mutex::default(),
            contains: self.0.contains.clone(),
            filtration: Some(Arc::new(f)),
        }))
    }

    /// The same graded group with the differential replaced.
    pub fn with_differential(&self, name: impl Into<String>, diff: LinearMap) -> ChainComplex {
        let mut b = ChainComplex::builder(name, diff);
        b.basis = self.0.basis.clone();
        b.contains = self.0.contains.clone();
        b.filtration = self.0.filtration.clone();
        b.build()
    }

    /// Checks `∂∂ = 0` and that boundaries stay in the basis, on every basis
    /// element through `max_degree`.
    pub fn check_differential(&self, max_degree: isize) -> Result<()> {
        for n in 1..=max_degree {
            let basis = self.basis_or_err(n)?;
            for k in basis.iter() {
                let dk = self.d_gen(k, n);
                if let Some(bad) = dk.keys().find(|t| !self.contains(t, n - 1)) {
                    return Err(Error::audit("basis", format!("∂{k} contains {bad} outside the basis")));
                }
                let ddk = self.d(&dk);
                if !ddk.is_zero() {
                    return Err(Error::audit("∂∂ = 0", format!("∂∂{k} = {ddk}")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex({} #{})", self.0.name, self.0.id)
    }
}
