use std::fmt;

use serde::Serialize;

use crate::chain::{Chain, ChainComplex, LinearMap};
use crate::error::{Error, Result};

/// A reduction `top ⇒ bottom`: chain maps `projection: top → bottom` and
/// `inclusion: bottom → top` and a degree +1 `homotopy` on `top` with
///
/// `ηβ = 0, αη = 0, αβ = 1, ηη = 0, ∂η + η∂ = 1 − βα`
///
/// where α, β, η are projection, inclusion and homotopy.
#[derive(Clone)]
pub struct Reduction {
    top: ChainComplex,
    bottom: ChainComplex,
    projection: LinearMap,
    inclusion: LinearMap,
    homotopy: LinearMap,
    identity: bool,
}

impl Reduction {
    pub fn new(
        top: ChainComplex,
        bottom: ChainComplex,
        projection: LinearMap,
        inclusion: LinearMap,
        homotopy: LinearMap,
    ) -> Self {
        assert_eq!(projection.shift(), 0, "projection has degree 0");
        assert_eq!(inclusion.shift(), 0, "inclusion has degree 0");
        assert_eq!(homotopy.shift(), 1, "homotopy has degree 1");
        Reduction { top, bottom, projection, inclusion, homotopy, identity: false }
    }

    /// The identity reduction `C ⇒ C`.
    pub fn identity(c: &ChainComplex) -> Self {
        Reduction {
            top: c.clone(),
            bottom: c.clone(),
            projection: LinearMap::identity(),
            inclusion: LinearMap::identity(),
            homotopy: LinearMap::zero(1),
            identity: true,
        }
    }

    /// An isomorphism of complexes as a reduction with zero homotopy.
    pub fn isomorphism(top: ChainComplex, bottom: ChainComplex, forward: LinearMap, backward: LinearMap) -> Self {
        Reduction::new(top, bottom, forward, backward, LinearMap::zero(1))
    }

    pub fn top(&self) -> &ChainComplex {
        &self.top
    }

    pub fn bottom(&self) -> &ChainComplex {
        &self.bottom
    }

    pub fn projection(&self) -> &LinearMap {
        &self.projection
    }

    pub fn inclusion(&self) -> &LinearMap {
        &self.inclusion
    }

    pub fn homotopy(&self) -> &LinearMap {
        &self.homotopy
    }

    /// True for the reductions built by [`Reduction::identity`].
    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Same maps between other complexes with the same generators and
    /// differentials (used when a construction produces an equal complex
    /// under a different identity).
    pub(crate) fn rebased(&self, top: &ChainComplex, bottom: &ChainComplex) -> Reduction {
        Reduction {
            top: top.clone(),
            bottom: bottom.clone(),
            projection: self.projection.clone(),
            inclusion: self.inclusion.clone(),
            homotopy: self.homotopy.clone(),
            identity: self.identity && top.same(bottom),
        }
    }

    /// Caches the three maps on generators.
    pub fn memoized(&self) -> Reduction {
        if self.identity {
            return self.clone();
        }
        Reduction {
            top: self.top.clone(),
            bottom: self.bottom.clone(),
            projection: self.projection.memoized(),
            inclusion: self.inclusion.memoized(),
            homotopy: self.homotopy.memoized(),
            identity: false,
        }
    }

    /// Replaces the homotopy so that the side conditions hold, given maps
    /// with `αβ = 1` and `∂η + η∂ = 1 − βα`: first `(1 − βα) η (1 − βα)`,
    /// then `η∂η`.
    pub fn with_fixed_homotopy(&self) -> Reduction {
        let (f, g) = (self.projection.clone(), self.inclusion.clone());
        let pi = LinearMap::identity().sub(&g.compose(&f));
        let h1 = pi.compose(&self.homotopy).compose(&pi).memoized();
        let d = self.top.differential().clone();
        let h2 = h1.compose(&d).compose(&h1);
        Reduction::new(self.top.clone(), self.bottom.clone(), f, g, h2)
    }
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Reduction({} ⇒ {})", self.top.name(), self.bottom.name())
    }
}

/// A span `left.bottom ⇐ top ⇒ right.bottom` of two reductions with a
/// common top. `right.bottom` is usually effective.
#[derive(Clone, Debug)]
pub struct StrongEquivalence {
    left: Reduction,
    right: Reduction,
}

impl StrongEquivalence {
    pub fn new(left: Reduction, right: Reduction) -> Result<Self> {
        left.top.expect_same(&right.top, "strong equivalence tops")?;
        Ok(StrongEquivalence { left, right })
    }

    /// `C ⇐ C ⇒ D` from a reduction `C ⇒ D`.
    pub fn from_reduction(r: Reduction) -> Self {
        StrongEquivalence { left: Reduction::identity(&r.top), right: r }
    }

    /// `C ⇐ C ⇒ C`.
    pub fn identity(c: &ChainComplex) -> Self {
        StrongEquivalence::from_reduction(Reduction::identity(c))
    }

    pub fn left(&self) -> &Reduction {
        &self.left
    }

    pub fn right(&self) -> &Reduction {
        &self.right
    }

    /// The complex the equivalence is about.
    pub fn original(&self) -> &ChainComplex {
        &self.left.bottom
    }

    /// The complex it is equivalent to.
    pub fn effective(&self) -> &ChainComplex {
        &self.right.bottom
    }

    pub fn top(&self) -> &ChainComplex {
        &self.left.top
    }

    /// The same equivalence read backwards.
    pub fn reversed(&self) -> Self {
        StrongEquivalence { left: self.right.clone(), right: self.left.clone() }
    }
}

/// Outcome of [`verify_reduction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub top_probes: usize,
    pub bottom_probes: usize,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub probe: String,
    pub witness: String,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Converts a failed report into an audit error.
    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::audit(v.law, format!("on {}: {}", v.probe, v.witness))),
        }
    }
}

fn law(name: &str, probe: &Chain, witness: &Chain) -> Option<Violation> {
    if witness.is_zero() {
        None
    } else {
        Some(Violation { law: name.to_string(), probe: format!("{probe:?}"), witness: format!("{witness:?}") })
    }
}

/// Evaluates the reduction identities, and that projection and inclusion
/// are chain maps, on each probe. Stops at the first violation.
pub fn verify_reduction(r: &Reduction, top_probes: &[Chain], bottom_probes: &[Chain]) -> VerificationReport {
    let (f, g, h) = (&r.projection, &r.inclusion, &r.homotopy);
    let mut violation = None;
    for c in top_probes {
        let hc = h.apply(c);
        let checks = [
            ("ηη = 0", h.apply(&hc)),
            ("αη = 0", f.apply(&hc)),
            ("∂η + η∂ = 1 − βα", {
                let mut x = r.top.d(&hc);
                x.add_scaled(&h.apply(&r.top.d(c)), 1);
                x.add_scaled(c, -1);
                x.add_scaled(&g.apply(&f.apply(c)), 1);
                x
            }),
            ("α∂ = ∂α", f.apply(&r.top.d(c)).sub(&r.bottom.d(&f.apply(c)))),
        ];
        if let Some(v) = checks.iter().find_map(|(name, w)| law(name, c, w)) {
            violation = Some(v);
            break;
        }
    }
    if violation.is_none() {
        for b in bottom_probes {
            let gb = g.apply(b);
            let checks = [
                ("ηβ = 0", h.apply(&gb)),
                ("αβ = 1", f.apply(&gb).sub(b)),
                ("β∂ = ∂β", g.apply(&r.bottom.d(b)).sub(&r.top.d(&gb))),
            ];
            if let Some(v) = checks.iter().find_map(|(name, w)| law(name, b, w)) {
                violation = Some(v);
                break;
            }
        }
    }
    VerificationReport {
        passed: violation.is_none(),
        top_probes: top_probes.len(),
        bottom_probes: bottom_probes.len(),
        violation,
    }
}

/// All basis generators of an effective complex in degrees `0..=max_degree`.
pub fn basis_probes(c: &ChainComplex, max_degree: isize) -> Result<Vec<Chain>> {
    let mut out = Vec::new();
    for n in 0..=max_degree {
        for k in c.basis_or_err(n)?.iter() {
            out.push(Chain::generator(k.clone(), n));
        }
    }
    Ok(out)
}

/// Exhaustive verification on the bases of both (effective) complexes.
pub fn verify_exhaustive(r: &Reduction, max_degree: isize) -> Result<VerificationReport> {
    Ok(verify_reduction(r, &basis_probes(&r.top, max_degree)?, &basis_probes(&r.bottom, max_degree)?))
}

/// Verifies both reductions of a strong equivalence on the given probes of
/// the common top and of each bottom.
pub fn verify_equivalence(
    e: &StrongEquivalence,
    top_probes: &[Chain],
    left_probes: &[Chain],
    right_probes: &[Chain],
) -> VerificationReport {
    let l = verify_reduction(&e.left, top_probes, left_probes);
    if !l.passed {
        return l;
    }
    verify_reduction(&e.right, top_probes, right_probes)
}
