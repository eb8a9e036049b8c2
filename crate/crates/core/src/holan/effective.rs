use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::bk::{enumerate_nondeg_chains, evaluation_map, split_bk_key, BkSpace};
use crate::chain::ops::split_tensor_key;
use crate::chain::{Chain, ChainComplex, Key, LinearMap};
use crate::diagcat::{
    tensor_equivalences, Cells, ChainDiagram, EffectiveDiagram, FiniteCategory, Functor, MorId, ObjId, SpaceDiagram,
};
use crate::error::{Error, Result};
use crate::reduct::{compose_equivalences, filtered_assembly, AssemblyOptions, Reduction, StrongEquivalence};
use crate::simp::{ez_reduction, normalized_chains, simplex, Nerve, Simplex, SimplicialMap, Space};

/// Options for the effective-homology pipelines.
#[derive(Clone, Debug)]
pub struct HolanOptions {
    /// Degrees through which filtration conditions and pointwise data are
    /// checked on bases.
    pub check_degree: isize,
    /// Series bound for the basic perturbation lemma.
    pub bound: Option<usize>,
}

impl Default for HolanOptions {
    fn default() -> Self {
        HolanOptions { check_degree: 3, bound: None }
    }
}

/// The homotopy left Kan extension as a space diagram over the target,
/// with its chains as an effective diagram.
#[derive(Clone)]
pub struct HolanResult {
    pub space: SpaceDiagram,
    pub chains: EffectiveDiagram,
}

/// `hoLan_p X` as a diagram over the target of `p`, `j ↦` the model at `j`,
/// morphisms acting by post-composition on `g`.
pub fn holan_space(x: &SpaceDiagram, p: &Functor) -> SpaceDiagram {
    let j = p.target().clone();
    let spaces: Vec<Space> = (0..j.n_objects()).map(|o| Arc::new(BkSpace::new(x, p, Some(o))) as Space).collect();
    let maps = (0..j.n_morphisms())
        .map(|f| {
            let j2 = j.clone();
            SimplicialMap::new(spaces[j.dom(f)].clone(), spaces[j.cod(f)].clone(), move |k, n| {
                Simplex::nondegenerate(post_compose(&j2, f, k), n)
            })
        })
        .collect();
    SpaceDiagram::new(j, spaces, maps).expect("one value per object of the target")
}

/// Replaces `g` by `f ∘ g` in a key whose first entry is `g`.
fn post_compose(j: &FiniteCategory, f: MorId, k: &Key) -> Key {
    let mut s = k.as_seq().to_vec();
    s[0] = Key::int(j.compose(f, s[0].as_usize()).expect("composable") as i64);
    Key::seq(s)
}

fn with_g(k: &Key, g: MorId) -> Key {
    let mut s = k.as_seq().to_vec();
    s[0] = Key::int(g as i64);
    Key::seq(s)
}

/// A chain diagram over the target whose generators begin with `g`: the
/// object is `cod g`, morphisms post-compose, and the cells are the
/// generators with `g` an identity.
fn g_diagram(j: &Arc<FiniteCategory>, total: &ChainComplex) -> ChainDiagram {
    let (j1, j2, j3, j4, j5) = (j.clone(), j.clone(), j.clone(), j.clone(), j.clone());
    let t = total.clone();
    let cells = Cells::new(
        move |n| match t.basis(n) {
            Some(b) => b.iter().filter(|k| j3.is_identity(k.get(0).as_usize())).cloned().collect(),
            None => Vec::new(),
        },
        move |k| j4.dom(k.get(0).as_usize()),
        move |k, _| {
            let g = k.get(0).as_usize();
            (with_g(k, j5.identity(j5.dom(g))), g)
        },
    );
    ChainDiagram::new(j.clone(), total.clone(), move |k| j1.cod(k.get(0).as_usize()), move |f, k, n| {
        Chain::generator(post_compose(&j2, f, k), n)
    })
    .with_cells(cells)
}

/// The chains of the model over all objects of the target, filtered by
/// nerve degree.
pub fn skeletal_filtration(x: &SpaceDiagram, p: &Functor) -> ChainDiagram {
    let space: Space = Arc::new(BkSpace::new(x, p, None));
    let total = normalized_chains(&space).with_filtration(|k, _| k.get(2).as_seq().len());
    g_diagram(p.target(), &total)
}

/// Identity equivalences on the chains of each value, for diagrams of
/// finite spaces.
pub fn pointwise_finite(x: &SpaceDiagram) -> Result<Vec<StrongEquivalence>> {
    x.spaces()
        .iter()
        .map(|s| {
            let c = normalized_chains(s);
            if !c.is_effective() {
                return Err(Error::LocalFiniteness(format!("{} has no effective homology attached", s.name())));
            }
            Ok(StrongEquivalence::identity(&c))
        })
        .collect()
}

/// The relative complex `C(Δᵏ, ∂Δᵏ)`: one generator `(0, …, k)` in degree `k`.
fn relative_simplex(k: usize) -> ChainComplex {
    let iota = Key::ints(&(0..=k).collect::<Vec<_>>());
    let i2 = iota.clone();
    ChainComplex::builder(format!("C(Δ^{k},∂Δ^{k})"), LinearMap::zero(-1))
        .basis(move |n| if n == k as isize { vec![iota.clone()] } else { Vec::new() })
        .contains(move |key, n| n == k as isize && *key == i2)
        .build()
}

/// The per-label equivalences, which depend only on the nerve degree and
/// the start object.
struct Quotients {
    spaces: Vec<Space>,
    pointwise: Vec<StrongEquivalence>,
    cache: Mutex<HashMap<(usize, ObjId), StrongEquivalence>>,
}

impl Quotients {
    fn get(&self, k: usize, i0: ObjId) -> StrongEquivalence {
        if let Some(e) = self.cache.lock().expect("cache lock").get(&(k, i0)) {
            return e.clone();
        }
        let e = self.build(k, i0);
        self.cache.lock().expect("cache lock").entry((k, i0)).or_insert(e).clone()
    }

    /// `C(Δᵏ × X, ∂Δᵏ × X) ⇒ C(Δᵏ,∂Δᵏ) ⊗ C(X)`, followed by the pointwise
    /// equivalence of `X = X(i₀)` tensored with the relative simplex.
    fn build(&self, k: usize, i0: ObjId) -> StrongEquivalence {
        let x = &self.spaces[i0];
        let e2 = tensor_equivalences(&StrongEquivalence::identity(&relative_simplex(k)), &self.pointwise[i0]);
        let bottom = e2.original().clone();
        let ez = ez_reduction(&simplex(k), x);
        let full = move |pk: &Key| Simplex::from_key(pk.get(0)).base_dim() == k;
        let top = {
            let t = ez.top().clone();
            let t2 = ez.top().clone();
            let t3 = ez.top().clone();
            let mut b = ChainComplex::builder(
                format!("C(Δ^{k}×{},∂)", x.name()),
                LinearMap::new(-1, move |key, n| t.d_gen(key, n).filter(full)),
            );
            if t2.is_effective() {
                b = b.basis(move |n| t2.basis(n).unwrap().iter().filter(|pk| full(pk)).cloned().collect());
            }
            b.contains(move |key, n| t3.contains(key, n) && full(key)).build()
        };
        let on_iota = move |tk: &Key| split_tensor_key(tk).0 == k as isize;
        let (f, g, h) = (ez.projection().clone(), ez.inclusion().clone(), ez.homotopy().clone());
        let rel = Reduction::new(
            top,
            bottom,
            LinearMap::new(0, move |key, n| f.apply_gen(key, n).filter(on_iota)),
            LinearMap::new(0, move |key, n| g.apply_gen(key, n).filter(full)),
            LinearMap::new(1, move |key, n| h.apply_gen(key, n).filter(full)),
        )
        .memoized();
        compose_equivalences(&StrongEquivalence::from_reduction(rel), &e2).expect("shared middle complex")
    }
}

#[derive(Clone, Copy)]
enum Part {
    Top,
    Original,
    Effective,
}

impl Part {
    fn of(self, e: &StrongEquivalence) -> ChainComplex {
        match self {
            Part::Top => e.top().clone(),
            Part::Original => e.original().clone(),
            Part::Effective => e.effective().clone(),
        }
    }
}

/// The sum over labels `(g, i₀, f₁…f_k)` of the per-label equivalences,
/// keyed `Seq[g, i₀, Seq[f…], local]`. Only labels whose nerve degree
/// passes `keep` take part.
#[derive(Clone)]
struct LabelledSum {
    cat: Arc<FiniteCategory>,
    p: Functor,
    quotients: Arc<Quotients>,
    keep: Arc<dyn Fn(usize) -> bool + Send + Sync>,
}

impl LabelledSum {
    fn labels(&self, n: isize) -> Vec<(MorId, ObjId, Vec<MorId>)> {
        let j = self.p.target();
        let mut out = Vec::new();
        for k in (0..=n.max(-1)).map(|k| k as usize) {
            if !(self.keep)(k) {
                continue;
            }
            for (i0, chain) in enumerate_nondeg_chains(&self.cat, k) {
                let end = self.p.object(Nerve::end(&self.cat, i0, &chain));
                out.extend((0..j.n_morphisms()).filter(|&g| j.dom(g) == end).map(|g| (g, i0, chain.clone())));
            }
        }
        out
    }

    fn valid(&self, key: &Key) -> Option<(usize, ObjId)> {
        let Key::Seq(s) = key else { return None };
        if s.len() != 4 || !matches!(s[0], Key::Int(_)) || !matches!(s[1], Key::Int(_)) || !matches!(s[2], Key::Seq(_)) {
            return None;
        }
        let (g, i0, chain, _) = split_bk_key(key);
        let j = self.p.target();
        if i0 >= self.cat.n_objects() || g >= j.n_morphisms() || !(self.keep)(chain.len()) {
            return None;
        }
        let mut at = i0;
        for &f in &chain {
            if f >= self.cat.n_morphisms() || self.cat.dom(f) != at || self.cat.is_identity(f) {
                return None;
            }
            at = self.cat.cod(f);
        }
        (j.dom(g) == self.p.object(at)).then_some((chain.len(), i0))
    }

    fn complex(&self, name: &str, part: Part) -> ChainComplex {
        let (s1, s2, s3) = (self.clone(), self.clone(), self.clone());
        let diff = LinearMap::new(-1, move |key, n| {
            let (g, i0, chain, local) = split_bk_key(key);
            let e = s1.quotients.get(chain.len(), i0);
            wrap(g, i0, &chain, &part.of(&e).d_gen(local, n))
        });
        let mut b = ChainComplex::builder(name, diff);
        if self.quotients.pointwise.iter().all(|e| part.of(e).is_effective()) {
            b = b.basis(move |n| {
                let mut out = Vec::new();
                for (g, i0, chain) in s2.labels(n) {
                    let e = s2.quotients.get(chain.len(), i0);
                    for local in part.of(&e).basis(n).expect("effective summand").iter() {
                        out.push(Key::seq(vec![Key::int(g as i64), Key::int(i0 as i64), Key::ints(&chain), local.clone()]));
                    }
                }
                out
            });
        }
        b.contains(move |key, n| match s3.valid(key) {
            Some((k, i0)) => part.of(&s3.quotients.get(k, i0)).contains(key.get(3), n),
            None => false,
        })
        .filtration(|key, _| key.get(2).as_seq().len())
        .build()
    }

    fn map(&self, shift: isize, pick: impl Fn(&StrongEquivalence) -> LinearMap + Send + Sync + 'static) -> LinearMap {
        let s = self.clone();
        LinearMap::new(shift, move |key, n| {
            let (g, i0, chain, local) = split_bk_key(key);
            let e = s.quotients.get(chain.len(), i0);
            wrap(g, i0, &chain, &pick(&e).apply_gen(local, n))
        })
    }

    fn equivalence(&self) -> Result<StrongEquivalence> {
        let top = self.complex("Ĝ", Part::Top);
        let effective = self.complex("G^ef", Part::Effective);
        let right = Reduction::new(
            top.clone(),
            effective,
            self.map(0, |e| e.right().projection().clone()),
            self.map(0, |e| e.right().inclusion().clone()),
            self.map(1, |e| e.right().homotopy().clone()),
        );
        if self.quotients.pointwise.iter().all(|e| e.left().is_identity()) {
            return Ok(StrongEquivalence::from_reduction(right));
        }
        let left = Reduction::new(
            top,
            self.complex("G", Part::Original),
            self.map(0, |e| e.left().projection().clone()),
            self.map(0, |e| e.left().inclusion().clone()),
            self.map(1, |e| e.left().homotopy().clone()),
        );
        StrongEquivalence::new(left, right)
    }
}

fn wrap(g: MorId, i0: ObjId, chain: &[MorId], c: &Chain) -> Chain {
    c.map_keys(c.degree(), |l| Key::seq(vec![Key::int(g as i64), Key::int(i0 as i64), Key::ints(chain), l.clone()]))
}

fn check_pointwise(x: &SpaceDiagram, pointwise: &[StrongEquivalence], max_degree: isize) -> Result<()> {
    if pointwise.len() != x.category().n_objects() {
        return Err(Error::Dimension("one pointwise equivalence per object is required".into()));
    }
    for (i, e) in pointwise.iter().enumerate() {
        if !e.effective().is_effective() {
            return Err(Error::LocalFiniteness(format!("pointwise data at {} is not effective", x.category().object_name(i))));
        }
        let c = normalized_chains(x.space(i));
        if let Some(b) = e.original().basis(0) {
            for n in 0..=max_degree {
                let b = if n == 0 { b.clone() } else { e.original().basis_or_err(n)? };
                for k in b.iter() {
                    if !c.contains(k, n) || c.d_gen(k, n) != e.original().d_gen(k, n) {
                        return Err(Error::ComplexMismatch(format!(
                            "pointwise data at {} is not on the chains of {}",
                            x.category().object_name(i),
                            x.space(i).name()
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn labelled_sum(x: &SpaceDiagram, p: &Functor, pointwise: &[StrongEquivalence], keep: impl Fn(usize) -> bool + Send + Sync + 'static) -> LabelledSum {
    LabelledSum {
        cat: x.category().clone(),
        p: p.clone(),
        quotients: Arc::new(Quotients {
            spaces: x.spaces().to_vec(),
            pointwise: pointwise.to_vec(),
            cache: Mutex::default(),
        }),
        keep: Arc::new(keep),
    }
}

/// The equivalence of the `k`-th filtration quotient with
/// `⊕ C(Δᵏ,∂Δᵏ) ⊗ C^ef(X(i₀)) ⊗ Z·J(p(i_k), −)`, the sum over nondegenerate
/// chains of length `k`.
pub fn gk_equivalence(x: &SpaceDiagram, p: &Functor, pointwise: &[StrongEquivalence], k: usize) -> Result<EffectiveDiagram> {
    check_pointwise(x, pointwise, 1)?;
    let eq = labelled_sum(x, p, pointwise, move |l| l == k).equivalence()?;
    EffectiveDiagram::new(g_diagram(p.target(), eq.original()), g_diagram(p.target(), eq.effective()), eq)
}

/// Effective homology of `hoLan_p X` as a diagram over the target of `p`,
/// from effective homology of each value of `X` (on its normalized chains).
pub fn holan_effective(
    x: &SpaceDiagram,
    p: &Functor,
    pointwise: &[StrongEquivalence],
    opts: &HolanOptions,
) -> Result<HolanResult> {
    if !Arc::ptr_eq(p.source(), x.category()) && **p.source() != **x.category() {
        return Err(Error::Dimension("the functor does not start at the index category".into()));
    }
    check_pointwise(x, pointwise, opts.check_degree)?;
    let filtered = skeletal_filtration(x, p);
    let sum = labelled_sum(x, p, pointwise, |_| true).equivalence()?;
    let total = filtered.total().clone();
    let delta = LinearMap::new(-1, move |key, n| {
        let tag = key.get(2).as_seq().len();
        total.d_gen(key, n).filter(|t| t.get(2).as_seq().len() < tag)
    })
    .memoized();
    let aopts = AssemblyOptions { total: Some(filtered.total().clone()), check_degree: opts.check_degree, bound: opts.bound };
    let eq = filtered_assembly(&sum, &delta, &aopts)?;
    let effective = g_diagram(p.target(), eq.effective());
    Ok(HolanResult { space: holan_space(x, p), chains: EffectiveDiagram::new(filtered, effective, eq)? })
}

/// Effective homology of `hocolim X`, the model over the terminal category.
pub fn hocolim_effective(
    x: &SpaceDiagram,
    pointwise: &[StrongEquivalence],
    opts: &HolanOptions,
) -> Result<(Space, StrongEquivalence)> {
    let p = Functor::to_terminal(x.category());
    let r = holan_effective(x, &p, pointwise, opts)?;
    Ok((r.space.space(0).clone(), r.chains.equivalence))
}

/// A cofibrant replacement with its evaluation maps `X^cof(j) → X(j)`.
#[derive(Clone)]
pub struct CofibrantReplacement {
    pub holan: HolanResult,
    pub evaluation: Vec<SimplicialMap>,
}

/// `X^cof = hoLan_id X` with the evaluation map.
pub fn cofibrant_replacement(
    x: &SpaceDiagram,
    pointwise: &[StrongEquivalence],
    opts: &HolanOptions,
) -> Result<CofibrantReplacement> {
    let p = Functor::identity(x.category());
    let holan = holan_effective(x, &p, pointwise, opts)?;
    let evaluation = (0..x.category().n_objects()).map(|j| evaluation_map(x, holan.space.space(j), j)).collect();
    Ok(CofibrantReplacement { holan, evaluation })
}
