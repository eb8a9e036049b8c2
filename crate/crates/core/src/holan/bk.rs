use std::sync::Arc;

use crate::chain::Key;
use crate::diagcat::{FiniteCategory, Functor, MorId, ObjId, SpaceDiagram};
use crate::error::{Error, Result};
use crate::simp::{nerve, product, simplex, Nerve, Product, Simplex, SimplicialMap, SimplicialSet, Space};

/// A simplex `(t, x, f₁, …, f_n, g)` of the Bousfield–Kan model: `t` is an
/// `m`-simplex of `Δⁿ` as a weakly increasing vertex list, `x` an
/// `m`-simplex of `X(i₀)`, `f_l : i_{l−1} → i_l` and `g : p(i_n) → j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BkSimplex {
    pub t: Vec<usize>,
    pub x: Simplex,
    pub start: ObjId,
    pub chain: Vec<MorId>,
    pub g: MorId,
}

impl BkSimplex {
    /// The nerve degree `n`.
    pub fn nerve_degree(&self) -> usize {
        self.chain.len()
    }

    pub fn dim(&self) -> usize {
        self.t.len() - 1
    }

    pub fn end(&self, cat: &FiniteCategory) -> ObjId {
        Nerve::end(cat, self.start, &self.chain)
    }

    /// `t` as a simplex of `Δⁿ`.
    pub fn t_simplex(&self) -> Simplex {
        vertex_simplex(&self.t)
    }

    /// The simplex of the model, as a degeneracy of a nondegenerate one
    /// keyed by [`bk_key`]. Only meaningful on canonical data.
    pub fn to_simplex(&self) -> Simplex {
        let s = Product::pair(&self.t_simplex(), &self.x);
        Simplex { base: bk_key(self.g, self.start, &self.chain, &s.base), ..s }
    }

    /// Decodes a nondegenerate simplex key.
    pub fn from_key(base: &Key) -> BkSimplex {
        let (g, start, chain, pkey) = split_bk_key(base);
        let (ts, xs) = Product::split(pkey);
        BkSimplex { t: vertices(&ts), x: xs, start, chain, g }
    }
}

/// `Seq[g, i₀, Seq[f₁, …, f_n], (t, x)]`, the last entry a nondegenerate
/// simplex key of `Δⁿ × X(i₀)`.
pub fn bk_key(g: MorId, start: ObjId, chain: &[MorId], pkey: &Key) -> Key {
    Key::seq(vec![Key::int(g as i64), Key::int(start as i64), Key::ints(chain), pkey.clone()])
}

pub fn split_bk_key(k: &Key) -> (MorId, ObjId, Vec<MorId>, &Key) {
    (k.get(0).as_usize(), k.get(1).as_usize(), k.get(2).as_usizes(), k.get(3))
}

/// The vertex list of a simplex of a standard simplex.
pub(crate) fn vertices(t: &Simplex) -> Vec<usize> {
    let base = t.base.as_usizes();
    t.surjection().iter().map(|&j| base[j]).collect()
}

/// The simplex of `Δⁿ` with a given weakly increasing vertex list.
pub(crate) fn vertex_simplex(t: &[usize]) -> Simplex {
    let mut base = t.to_vec();
    base.dedup();
    let degens: Vec<usize> = (0..t.len() - 1).filter(|&i| t[i] == t[i + 1]).collect();
    Simplex::degenerate(Key::ints(&base), base.len() - 1, &degens)
}

/// Brings raw data to its canonical representative: `t` surjective onto
/// `[n]` and no identities in the chain. A vertex `k` missed by `t` is
/// removed by acting on `x` (`k = 0`), composing neighbours (`0 < k < n`)
/// or absorbing `p(f_n)` into `g` (`k = n`); an identity `f_l` is dropped
/// by merging vertices `l − 1` and `l`.
pub fn bk_canonicalize(x: &SpaceDiagram, p: &Functor, raw: BkSimplex) -> Result<BkSimplex> {
    let cat = x.category();
    let j = p.target();
    let BkSimplex { mut t, x: mut xs, mut start, mut chain, mut g } = raw;
    if t.is_empty() || t.len() != xs.dim + 1 || t.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::IllFormed(format!("vertex list {t:?} does not fit an {}-simplex", xs.dim)));
    }
    if t.last().is_some_and(|&v| v > chain.len()) {
        return Err(Error::IllFormed(format!("vertex list {t:?} leaves Δ^{}", chain.len())));
    }
    let mut at = start;
    for &f in &chain {
        if f >= cat.n_morphisms() || cat.dom(f) != at {
            return Err(Error::IllFormed(format!("chain {chain:?} is not composable from {}", cat.object_name(start))));
        }
        at = cat.cod(f);
    }
    if g >= j.n_morphisms() || j.dom(g) != p.object(at) {
        return Err(Error::IllFormed(format!("{} does not start at p({})", j.name(g), cat.object_name(at))));
    }
    loop {
        let n = chain.len();
        if let Some(k) = (0..=n).find(|v| t.binary_search(v).is_err()) {
            if k == 0 {
                xs = x.map(chain[0]).apply(&xs);
                start = cat.cod(chain[0]);
                chain.remove(0);
            } else if k == n {
                g = j.compose(g, p.morphism(chain[n - 1])).expect("composable");
                chain.pop();
            } else {
                let c = cat.compose(chain[k], chain[k - 1]).expect("composable");
                chain.splice(k - 1..=k, [c]);
            }
            for v in t.iter_mut() {
                if *v > k {
                    *v -= 1;
                }
            }
            continue;
        }
        if let Some(l) = (1..=n).find(|&l| cat.is_identity(chain[l - 1])) {
            chain.remove(l - 1);
            for v in t.iter_mut() {
                if *v >= l {
                    *v -= 1;
                }
            }
            continue;
        }
        break;
    }
    Ok(BkSimplex { t, x: xs, start, chain, g })
}

/// All identity-free composable chains of length `k`, as start objects
/// with morphism lists.
pub fn enumerate_nondeg_chains(cat: &Arc<FiniteCategory>, k: usize) -> Vec<(ObjId, Vec<MorId>)> {
    nerve(cat).nondegenerate(k).expect("finite category").iter().map(Nerve::decode).collect()
}

/// The Bousfield–Kan model of `hoLan_p X`, either at one object `j` of the
/// target or as the disjoint union over all of them.
pub struct BkSpace {
    diagram: SpaceDiagram,
    p: Functor,
    at: Option<ObjId>,
    nerve: Space,
}

impl BkSpace {
    pub fn new(diagram: &SpaceDiagram, p: &Functor, at: Option<ObjId>) -> Self {
        BkSpace { diagram: diagram.clone(), p: p.clone(), at, nerve: nerve(diagram.category()) }
    }

    pub fn diagram(&self) -> &SpaceDiagram {
        &self.diagram
    }

    pub fn functor(&self) -> &Functor {
        &self.p
    }

    fn targets(&self, from: ObjId) -> Vec<MorId> {
        let j = self.p.target();
        (0..j.n_morphisms()).filter(|&g| j.dom(g) == from && self.at.is_none_or(|a| j.cod(g) == a)).collect()
    }
}

impl SimplicialSet for BkSpace {
    fn name(&self) -> String {
        match self.at {
            Some(j) => format!("hoLan({})", self.p.target().object_name(j)),
            None => "hoLan".into(),
        }
    }

    fn face_nd(&self, base: &Key, dim: usize, i: usize) -> Simplex {
        let mut s = BkSimplex::from_key(base);
        s.t.remove(i);
        s.x = s.x.face(self.diagram.space(s.start).as_ref(), i);
        debug_assert_eq!(s.t.len(), dim);
        bk_canonicalize(&self.diagram, &self.p, s).expect("faces of canonical simplices are well formed").to_simplex()
    }

    fn nondegenerate(&self, m: usize) -> Option<Vec<Key>> {
        let cat = self.diagram.category();
        let mut out = Vec::new();
        for n in 0..=m {
            for (start, chain) in enumerate_nondeg_chains(cat, n) {
                let gs = self.targets(self.p.object(Nerve::end(cat, start, &chain)));
                if gs.is_empty() {
                    continue;
                }
                let pr = product(&simplex(n), self.diagram.space(start));
                for pk in pr.nondegenerate(m)? {
                    if Simplex::from_key(pk.get(0)).base_dim() != n {
                        continue;
                    }
                    out.extend(gs.iter().map(|&g| bk_key(g, start, &chain, &pk)));
                }
            }
        }
        Some(out)
    }

    fn contains(&self, base: &Key, m: usize) -> bool {
        let cat = self.diagram.category();
        let j = self.p.target();
        let Key::Seq(s) = base else { return false };
        if s.len() != 4 || !matches!(s[0], Key::Int(_)) || !matches!(s[1], Key::Int(_)) || !matches!(s[2], Key::Seq(_)) {
            return false;
        }
        let (g, start, chain, pk) = split_bk_key(base);
        if start >= cat.n_objects() || g >= j.n_morphisms() {
            return false;
        }
        let mut at = start;
        for &f in &chain {
            if f >= cat.n_morphisms() || cat.dom(f) != at || cat.is_identity(f) {
                return false;
            }
            at = cat.cod(f);
        }
        if j.dom(g) != self.p.object(at) || self.at.is_some_and(|a| j.cod(g) != a) {
            return false;
        }
        let pr = product(&simplex(chain.len()), self.diagram.space(start));
        pr.contains(pk, m) && Simplex::from_key(pk.get(0)).base_dim() == chain.len()
    }

    fn dimension(&self) -> Option<usize> {
        let cat = self.diagram.category();
        let top_x = self.diagram.spaces().iter().map(|x| x.dimension()).collect::<Option<Vec<_>>>()?;
        // a nondegenerate chain longer than the number of objects repeats an
        // object, and then the nerve has simplices in every dimension
        let bound = cat.n_objects();
        let top_nerve = (0..=bound).rev().find(|&q| !self.nerve.nondegenerate(q).unwrap().is_empty())?;
        if top_nerve == bound {
            return None;
        }
        Some(top_nerve + top_x.into_iter().max().unwrap_or(0))
    }
}

/// `(t, x, f₁, …, f_n, g) ↦ X(g f_n ⋯ f₁)(x)`, the evaluation map of the
/// cofibrant replacement at `j`.
pub fn evaluation_map(x: &SpaceDiagram, source: &Space, j: ObjId) -> SimplicialMap {
    let d = x.clone();
    SimplicialMap::new(source.clone(), x.space(j).clone(), move |k, _| {
        let s = BkSimplex::from_key(k);
        let cat = d.category();
        let mut f = cat.identity(s.start);
        for &c in &s.chain {
            f = cat.compose(c, f).expect("composable");
        }
        let f = cat.compose(s.g, f).expect("composable");
        d.map(f).apply(&s.x)
    })
}
