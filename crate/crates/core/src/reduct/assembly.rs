use crate::chain::{Chain, ChainComplex, Key, LinearMap};
use crate::error::{Error, Result};

use super::perturb::{basic_perturbation_checked, easy_perturbation};
use super::{Reduction, StrongEquivalence};

/// Options for [`filtered_assembly`].
#[derive(Clone, Debug, Default)]
pub struct AssemblyOptions {
    /// The perturbed complex `(⊕G_k, ∂_G + δ)` if the caller already has it;
    /// the result is rebased onto it.
    pub total: Option<ChainComplex>,
    /// Degrees through which filtration conditions are checked on bases.
    pub check_degree: isize,
    /// Series bound passed to the basic perturbation lemma.
    pub bound: Option<usize>,
}

/// Assembles the effective homology of a filtered complex from that of its
/// filtration quotients.
///
/// `eq` is an equivalence for `G = ⊕_k G_k` with the quotient differential,
/// whose left bottom carries the filtration tags; `delta` is the rest of
/// the differential and must strictly lower the tag. The left reduction is
/// perturbed by the easy lemma, the right one by the basic lemma.
pub fn filtered_assembly(eq: &StrongEquivalence, delta: &LinearMap, opts: &AssemblyOptions) -> Result<StrongEquivalence> {
    let g = eq.original();
    let top = eq.top();
    if !eq.effective().is_effective() {
        return Err(Error::LocalFiniteness(format!("{} has no finite basis", eq.effective().name())));
    }
    if !g.has_filtration() {
        return Err(Error::LocalFiniteness(format!("{} has no filtration tags", g.name())));
    }
    if g.is_effective() {
        check_decreasing(g, delta, opts.check_degree, opts.bound)?;
    }
    if top.is_effective() && top.has_filtration() {
        check_preserving(top, eq.right().homotopy(), opts.check_degree)?;
    }
    if eq.left().is_identity() {
        let right = basic_perturbation_checked(eq.right(), delta, opts.bound, opts.check_degree)?;
        let right = match &opts.total {
            Some(t) => right.rebased(t, right.bottom()),
            None => right,
        };
        return Ok(StrongEquivalence::from_reduction(right));
    }
    let left = easy_perturbation(eq.left(), delta)?;
    let lifted = eq.left().inclusion().compose(delta).compose(eq.left().projection());
    let right = basic_perturbation_checked(eq.right(), &lifted, opts.bound, opts.check_degree)?;
    let bottom = opts.total.clone().unwrap_or_else(|| left.bottom().clone());
    StrongEquivalence::new(left.rebased(right.top(), &bottom), right)
}

fn check_decreasing(g: &ChainComplex, delta: &LinearMap, max_degree: isize, bound: Option<usize>) -> Result<()> {
    for n in 0..=max_degree {
        for k in g.basis_or_err(n)?.iter() {
            let tag = g.filtration(k, n).unwrap();
            for t in delta.apply_gen(k, n).keys() {
                let tt = g.filtration(t, n - 1).unwrap();
                if tt >= tag {
                    return Err(Error::NonNilpotent {
                        bound: bound.unwrap_or(0),
                        witness: format!("perturbation of {k} (filtration {tag}) contains {t} (filtration {tt})"),
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_preserving(c: &ChainComplex, h: &LinearMap, max_degree: isize) -> Result<()> {
    for n in 0..=max_degree {
        for k in c.basis_or_err(n)?.iter() {
            let tag = c.filtration(k, n).unwrap();
            for t in h.apply_gen(k, n).keys() {
                let tt = c.filtration(t, n + 1).unwrap();
                if tt > tag {
                    return Err(Error::LocalFiniteness(format!(
                        "homotopy raises the filtration of {k} ({tag}) to {t} ({tt})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Sums the stages of a filtration, keys of stage `k` being told apart by
/// the membership tests of the stage complexes. Stage `k` gets filtration
/// tag `k`.
pub fn sum_stages(stages: &[StrongEquivalence]) -> Result<StrongEquivalence> {
    let tops: Vec<ChainComplex> = stages.iter().map(|s| s.top().clone()).collect();
    let rights: Vec<ChainComplex> = stages.iter().map(|s| s.effective().clone()).collect();
    let top = union_complex("Ĝ", &tops);
    let right_bottom = union_complex("G^ef", &rights);
    let right = Reduction::new(
        top.clone(),
        right_bottom,
        routed(&tops, stages.iter().map(|s| s.right().projection().clone()).collect()),
        routed(&rights, stages.iter().map(|s| s.right().inclusion().clone()).collect()),
        routed(&tops, stages.iter().map(|s| s.right().homotopy().clone()).collect()),
    );
    if stages.iter().all(|s| s.left().is_identity()) {
        return Ok(StrongEquivalence::from_reduction(right));
    }
    let lefts: Vec<ChainComplex> = stages.iter().map(|s| s.original().clone()).collect();
    let left = Reduction::new(
        top,
        union_complex("G", &lefts),
        routed(&tops, stages.iter().map(|s| s.left().projection().clone()).collect()),
        routed(&lefts, stages.iter().map(|s| s.left().inclusion().clone()).collect()),
        routed(&tops, stages.iter().map(|s| s.left().homotopy().clone()).collect()),
    );
    StrongEquivalence::new(left, right)
}

fn stage_of(cs: &[ChainComplex], k: &Key, n: isize) -> Option<usize> {
    cs.iter().position(|c| c.contains(k, n))
}

fn routed(domains: &[ChainComplex], maps: Vec<LinearMap>) -> LinearMap {
    let domains = domains.to_vec();
    let shift = maps.first().map(|m| m.shift()).unwrap_or(0);
    LinearMap::new(shift, move |k, n| match stage_of(&domains, k, n) {
        Some(i) => maps[i].apply_gen(k, n),
        None => Chain::zero(n + shift),
    })
}

fn union_complex(name: &str, cs: &[ChainComplex]) -> ChainComplex {
    let diff = routed(cs, cs.iter().map(|c| c.differential().clone()).collect());
    let mut b = ChainComplex::builder(name, diff);
    if cs.iter().all(ChainComplex::is_effective) {
        let d = cs.to_vec();
        b = b.basis(move |n| d.iter().flat_map(|c| c.basis(n).unwrap().as_ref().clone()).collect());
    }
    let (d1, d2) = (cs.to_vec(), cs.to_vec());
    b.contains(move |k, n| stage_of(&d1, k, n).is_some())
        .filtration(move |k, n| stage_of(&d2, k, n).expect("generator in some stage"))
        .build()
}
