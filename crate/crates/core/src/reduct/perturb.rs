use crate::chain::{Chain, ChainComplex, LinearMap};
use crate::error::{Error, Result};

use super::Reduction;

/// Default cap on the number of perturbation series terms for a generator
/// of degree `n`: the series length is bounded by the filtration depth,
/// which never exceeds the degree in the constructions of this crate.
pub fn default_bound(degree: isize) -> usize {
    10 + 2 * degree.max(0) as usize
}

fn perturbed(c: &ChainComplex, delta: &LinearMap, what: &str) -> ChainComplex {
    let diff = c.differential().add(delta);
    c.with_differential(format!("({} + {what})", c.name()), diff)
}

/// Easy perturbation lemma: a perturbation `δ'` of the bottom differential
/// transports to the top as `βδ'α`, with the same three maps.
pub fn easy_perturbation(r: &Reduction, delta: &LinearMap) -> Result<Reduction> {
    if delta.shift() != -1 {
        return Err(Error::Dimension("a perturbation has degree -1".into()));
    }
    if r.is_identity() {
        let c = perturbed(r.bottom(), delta, "δ");
        return Ok(Reduction::identity(&c));
    }
    let lifted = r.inclusion().compose(delta).compose(r.projection());
    let top = perturbed(r.top(), &lifted, "βδα");
    let bottom = perturbed(r.bottom(), delta, "δ");
    Ok(Reduction::new(top, bottom, r.projection().clone(), r.inclusion().clone(), r.homotopy().clone()))
}

/// `Σ_i (−1)^i (A B)^i` applied lazily, one generator at a time.
fn alternating_series(a: LinearMap, b: LinearMap, bound: Option<usize>) -> LinearMap {
    LinearMap::new(0, move |k, d| {
        let limit = bound.unwrap_or_else(|| default_bound(d));
        let mut term = Chain::generator(k.clone(), d);
        let mut sum = term.clone();
        for _ in 0..limit {
            term = a.apply(&b.apply(&term)).neg();
            if term.is_zero() {
                return sum;
            }
            sum.add_scaled(&term, 1);
        }
        panic!(
            "{}",
            Error::NonNilpotent { bound: limit, witness: format!("generator {k} in degree {d}") }
        );
    })
    .memoized()
}

/// Checks that `(ηδ)^i c` and `(δη)^i c` vanish within the bound on each probe.
pub fn check_nilpotency(r: &Reduction, delta: &LinearMap, probes: &[Chain], bound: Option<usize>) -> Result<()> {
    for p in probes {
        let limit = bound.unwrap_or_else(|| default_bound(p.degree()));
        for (name, a, b) in [("ηδ", r.homotopy(), delta), ("δη", delta, r.homotopy())] {
            let mut term = p.clone();
            let mut i = 0;
            while !term.is_zero() {
                if i == limit {
                    return Err(Error::NonNilpotent { bound: limit, witness: format!("({name})^i on {p:?}") });
                }
                term = a.apply(&b.apply(&term));
                i += 1;
            }
        }
    }
    Ok(())
}

/// Basic perturbation lemma. For a perturbation `δ` of the top differential
/// with `ηδ` locally nilpotent, returns
/// `(C, ∂ + δ) ⇒ (C', ∂' + δ')` with `φ = Σ(−1)^i(ηδ)^i`,
/// `ψ = Σ(−1)^i(δη)^i`, `α' = αψ`, `β' = φβ`, `η' = φη`, `δ' = αψδβ`.
///
/// When the top is effective the series are first run on its basis in
/// degrees `0..=precheck_degree`, turning a non-nilpotent perturbation into
/// an error. Elsewhere the series are evaluated lazily and exceeding the
/// bound panics with the same message.
pub fn basic_perturbation(r: &Reduction, delta: &LinearMap, bound: Option<usize>) -> Result<Reduction> {
    basic_perturbation_checked(r, delta, bound, 4)
}

pub fn basic_perturbation_checked(
    r: &Reduction,
    delta: &LinearMap,
    bound: Option<usize>,
    precheck_degree: isize,
) -> Result<Reduction> {
    if delta.shift() != -1 {
        return Err(Error::Dimension("a perturbation has degree -1".into()));
    }
    if r.top().is_effective() {
        let mut probes = Vec::new();
        for n in 0..=precheck_degree {
            for k in r.top().basis(n).unwrap().iter() {
                probes.push(Chain::generator(k.clone(), n));
            }
        }
        check_nilpotency(r, delta, &probes, bound)?;
    }
    let (f, g, h) = (r.projection(), r.inclusion(), r.homotopy());
    let phi = alternating_series(h.clone(), delta.clone(), bound);
    let psi = alternating_series(delta.clone(), h.clone(), bound);
    let f2 = f.compose(&psi).memoized();
    let g2 = phi.compose(g).memoized();
    let h2 = phi.compose(h).memoized();
    let bottom_delta = f.compose(&psi).compose(delta).compose(g).memoized();
    let top = perturbed(r.top(), delta, "δ");
    let bottom = perturbed(r.bottom(), &bottom_delta, "δ'");
    Ok(Reduction::new(top, bottom, f2, g2, h2))
}

/// The bottom perturbation `δ' = αψδβ` that [`basic_perturbation`] installs.
pub fn transferred_perturbation(r: &Reduction, delta: &LinearMap, bound: Option<usize>) -> LinearMap {
    let psi = alternating_series(delta.clone(), r.homotopy().clone(), bound);
    r.projection().compose(&psi).compose(delta).compose(r.inclusion())
}
