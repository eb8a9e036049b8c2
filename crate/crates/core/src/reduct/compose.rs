use crate::chain::ops::{split_tensor_key, tensor_chains};
use crate::chain::{tensor, Chain, ChainComplex, Key, LinearMap};
use crate::error::Result;

use super::perturb::basic_perturbation_checked;
use super::{Reduction, StrongEquivalence};

/// `C ⇒ D ⇒ E` composed to `C ⇒ E`:
/// `α = α₂α₁`, `β = β₁β₂`, `η = η₁ + β₁η₂α₁`.
pub fn compose_reductions(r1: &Reduction, r2: &Reduction) -> Result<Reduction> {
    r1.bottom().expect_same(r2.top(), "composing reductions")?;
    if r1.is_identity() {
        return Ok(r2.clone());
    }
    if r2.is_identity() {
        return Ok(r1.clone());
    }
    let f = r2.projection().compose(r1.projection());
    let g = r1.inclusion().compose(r2.inclusion());
    let h = r1.homotopy().add(&r1.inclusion().compose(r2.homotopy()).compose(r1.projection()));
    Ok(Reduction::new(r1.top().clone(), r2.bottom().clone(), f, g, h).memoized())
}

fn tagged(i: i64, k: &Key) -> Key {
    Key::seq(vec![Key::Int(i), k.clone()])
}

fn tag_chain(i: i64, c: &Chain, degree: isize) -> Chain {
    c.map_keys(degree, |k| tagged(i, k))
}

/// The homotopy pushout `X` of `A <--β₁-- D --β₂--> B`:
/// `X_n = A_n ⊕ B_n ⊕ D_{n−1}` with `∂(a, b, d) = (∂a + β₁d, ∂b − β₂d, −∂d)`.
/// Generators are tagged `[0, a]`, `[1, b]`, `[2, d]`.
fn homotopy_pushout(a: &ChainComplex, b: &ChainComplex, d: &ChainComplex, g1: &LinearMap, g2: &LinearMap) -> ChainComplex {
    let (a1, b1, d1, g1c, g2c) = (a.clone(), b.clone(), d.clone(), g1.clone(), g2.clone());
    let diff = LinearMap::new(-1, move |k, n| {
        let part = k.get(1);
        match k.get(0).as_int() {
            0 => tag_chain(0, &a1.d_gen(part, n), n - 1),
            1 => tag_chain(1, &b1.d_gen(part, n), n - 1),
            _ => {
                let g = Chain::generator(part.clone(), n - 1);
                let mut out = tag_chain(2, &d1.d_gen(part, n - 1), n - 1).neg();
                out.add_scaled(&tag_chain(0, &g1c.apply(&g), n - 1), 1);
                out.add_scaled(&tag_chain(1, &g2c.apply(&g), n - 1), -1);
                out
            }
        }
    });
    let mut bld = ChainComplex::builder(format!("X({}, {})", a.name(), b.name()), diff);
    if a.is_effective() && b.is_effective() && d.is_effective() {
        let (a2, b2, d2) = (a.clone(), b.clone(), d.clone());
        bld = bld.basis(move |n| {
            let mut out: Vec<Key> = a2.basis(n).unwrap().iter().map(|k| tagged(0, k)).collect();
            out.extend(b2.basis(n).unwrap().iter().map(|k| tagged(1, k)));
            out.extend(d2.basis(n - 1).unwrap().iter().map(|k| tagged(2, k)));
            out
        });
    }
    let (a3, b3, d3) = (a.clone(), b.clone(), d.clone());
    bld = bld.contains(move |k, n| match k {
        Key::Seq(s) if s.len() == 2 => match s[0] {
            Key::Int(0) => a3.contains(&s[1], n),
            Key::Int(1) => b3.contains(&s[1], n),
            Key::Int(2) => d3.contains(&s[1], n - 1),
            _ => false,
        },
        _ => false,
    });
    if a.has_filtration() && b.has_filtration() && d.has_filtration() {
        let (a4, b4, d4) = (a.clone(), b.clone(), d.clone());
        bld = bld.filtration(move |k, n| match k.get(0).as_int() {
            0 => a4.filtration(k.get(1), n).unwrap(),
            1 => b4.filtration(k.get(1), n).unwrap(),
            _ => d4.filtration(k.get(1), n - 1).unwrap(),
        });
    }
    bld.build()
}

/// Reduction `X ⇒ A` where `X` is the homotopy pushout of `A <--g-- D` and
/// the inclusion of a reduction `r: B ⇒ D`, with `A` at tag `keep` and `B`
/// at tag `other`.
///
/// The cone of the inclusion (`∂(b, d) = (∂b + σ β_r d, −∂d)`) is contracted
/// by `(b, d) ↦ (η_r b, σ α_r b)`, giving `A ⊕ cone ⇒ A`; the cross term
/// `d ↦ ±g d` is a perturbation with `ηδ = 0`.
fn pushout_leg(x: &ChainComplex, a: &ChainComplex, g: &LinearMap, r: &Reduction, keep: i64, other: i64) -> Result<Reduction> {
    // sign of the inclusion into the cone summand, and of g on the kept one
    let sigma: i64 = if keep == 0 { -1 } else { 1 };
    let (f_r, h_r) = (r.projection().clone(), r.homotopy().clone());
    let homotopy = LinearMap::new(1, move |k, n| {
        if k.get(0).as_int() != other {
            return Chain::zero(n + 1);
        }
        let part = k.get(1);
        let mut out = tag_chain(other, &h_r.apply_gen(part, n), n + 1);
        // d of degree n in D sits in degree n + 1
        out.add_scaled(&tag_chain(2, &f_r.apply_gen(part, n), n + 1), sigma);
        out
    });
    let projection = LinearMap::new(0, move |k, n| {
        if k.get(0).as_int() == keep {
            Chain::generator(k.get(1).clone(), n)
        } else {
            Chain::zero(n)
        }
    });
    let inclusion = LinearMap::new(0, move |k, n| Chain::generator(tagged(keep, k), n));
    let g = g.clone();
    let delta = LinearMap::new(-1, move |k, n| {
        if k.get(0).as_int() == 2 {
            tag_chain(keep, &g.apply_gen(k.get(1), n - 1), n - 1).scale(-sigma)
        } else {
            Chain::zero(n - 1)
        }
    });
    let unperturbed = x.with_differential("A ⊕ cone", x.differential().sub(&delta));
    let base = Reduction::new(unperturbed, a.clone(), projection, inclusion, homotopy);
    // ηδ = 0, so the series stop after one term
    let out = basic_perturbation_checked(&base, &delta, Some(3), -1)?;
    Ok(out.rebased(x, a))
}

/// Composes `C ⇔ D` and `D ⇔ E` into `C ⇔ E`.
///
/// When one of the middle reductions is an identity the spans are merged
/// by composing reductions. Otherwise the new top is the homotopy pushout
/// of the two tops under `D` along the inclusions, which reduces onto each
/// of them by the basic perturbation lemma.
pub fn compose_equivalences(e1: &StrongEquivalence, e2: &StrongEquivalence) -> Result<StrongEquivalence> {
    e1.right().bottom().expect_same(e2.left().bottom(), "composing equivalences")?;
    if e2.left().is_identity() {
        return StrongEquivalence::new(e1.left().clone(), compose_reductions(e1.right(), e2.right())?);
    }
    if e1.right().is_identity() {
        return StrongEquivalence::new(compose_reductions(e2.left(), e1.left())?, e2.right().clone());
    }
    let (a, b, d) = (e1.top(), e2.top(), e1.right().bottom());
    let (g1, g2) = (e1.right().inclusion(), e2.left().inclusion());
    let x = homotopy_pushout(a, b, d, g1, g2);
    let to_a = pushout_leg(&x, a, g1, e2.left(), 0, 1)?;
    let to_b = pushout_leg(&x, b, g2, e1.right(), 1, 0)?;
    StrongEquivalence::new(compose_reductions(&to_a, e1.left())?, compose_reductions(&to_b, e2.right())?)
}

/// Graded tensor product of maps, `(F ⊗ G)(a ⊗ b) = (−1)^{|G||a|} F a ⊗ G b`.
pub fn tensor_maps(f: &LinearMap, g: &LinearMap) -> LinearMap {
    let (f, g) = (f.clone(), g.clone());
    let shift = f.shift() + g.shift();
    LinearMap::new(shift, move |k, n| {
        let (p, a, b) = split_tensor_key(k);
        let fa = f.apply_gen(a, p);
        let gb = g.apply_gen(b, n - p);
        let out = tensor_chains(&fa, &gb);
        if g.shift() % 2 != 0 && p % 2 != 0 {
            out.neg()
        } else {
            out
        }
    })
}

/// `A ⊗ C ⇒ B ⊗ D` from `A ⇒ B` and `C ⇒ D`, with
/// `η = η₁ ⊗ 1 + β₁α₁ ⊗ η₂`.
pub fn tensor_reductions(r1: &Reduction, r2: &Reduction) -> Reduction {
    let top = tensor(r1.top(), r2.top());
    let bottom = tensor(r1.bottom(), r2.bottom());
    let f = tensor_maps(r1.projection(), r2.projection());
    let g = tensor_maps(r1.inclusion(), r2.inclusion());
    let pi1 = r1.inclusion().compose(r1.projection());
    let h = tensor_maps(r1.homotopy(), &LinearMap::identity()).add(&tensor_maps(&pi1, r2.homotopy()));
    Reduction::new(top, bottom, f, g, h).memoized()
}
