use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CategorySpec, FiniteCategory, MorId, ObjId};
use crate::chain::ops::{split_tensor_key, tensor_chains, tensor_key};
use crate::chain::{tensor, Chain, ChainComplex, Key, LinearMap};
use crate::error::{Error, Result};
use crate::reduct::{tensor_reductions, Reduction, StrongEquivalence};
use crate::simp::{normalized_chains, FaceSpec, FiniteSpace, Simplex, SimplicialMap, Space, SpaceSpec};

/// A functor from a finite category to simplicial sets.
#[derive(Clone)]
pub struct SpaceDiagram {
    cat: Arc<FiniteCategory>,
    spaces: Vec<Space>,
    maps: Vec<SimplicialMap>,
}

impl SpaceDiagram {
    /// `maps[f]` is the value on morphism `f`; identities must be sent to
    /// identities. Functoriality is checked by [`SpaceDiagram::audit`].
    pub fn new(cat: Arc<FiniteCategory>, spaces: Vec<Space>, maps: Vec<SimplicialMap>) -> Result<Self> {
        if spaces.len() != cat.n_objects() || maps.len() != cat.n_morphisms() {
            return Err(Error::Dimension("diagram data does not match its index category".into()));
        }
        Ok(SpaceDiagram { cat, spaces, maps })
    }

    /// The constant diagram with identity maps.
    pub fn constant(cat: &Arc<FiniteCategory>, x: &Space) -> Self {
        let maps = (0..cat.n_morphisms()).map(|_| SimplicialMap::identity(x)).collect();
        SpaceDiagram { cat: cat.clone(), spaces: vec![x.clone(); cat.n_objects()], maps }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.cat
    }

    pub fn space(&self, i: ObjId) -> &Space {
        &self.spaces[i]
    }

    pub fn spaces(&self) -> &[Space] {
        &self.spaces
    }

    pub fn map(&self, f: MorId) -> &SimplicialMap {
        &self.maps[f]
    }

    /// Whether every value is an effective simplicial set.
    pub fn is_finite(&self) -> bool {
        self.spaces.iter().all(|x| x.dimension().is_some())
    }

    /// Checks that each map is simplicial, identities act trivially and
    /// composites are preserved, on all nondegenerate simplices through
    /// `max_dim`. Values must be effective.
    pub fn audit(&self, max_dim: usize) -> Result<()> {
        let cat = &self.cat;
        for f in 0..cat.n_morphisms() {
            self.maps[f].check(max_dim)?;
        }
        for n in 0..=max_dim {
            for i in 0..cat.n_objects() {
                let bases = self.spaces[i]
                    .nondegenerate(n)
                    .ok_or_else(|| Error::LocalFiniteness(format!("{} is not effective", self.spaces[i].name())))?;
                for b in bases {
                    let x = Simplex::nondegenerate(b.clone(), n);
                    let id = self.maps[cat.identity(i)].apply(&x);
                    if id != x {
                        return Err(Error::audit("functoriality", format!("id_{} moves {b}", cat.object_name(i))));
                    }
                    for f in (0..cat.n_morphisms()).filter(|&f| cat.dom(f) == i) {
                        for g in (0..cat.n_morphisms()).filter(|&g| cat.dom(g) == cat.cod(f)) {
                            let gf = cat.compose(g, f).expect("composable");
                            let lhs = self.maps[g].apply(&self.maps[f].apply(&x));
                            let rhs = self.maps[gf].apply(&x);
                            if lhs != rhs {
                                return Err(Error::audit(
                                    "functoriality",
                                    format!("{} ∘ {} on {b}: {lhs:?} ≠ {rhs:?}", cat.name(g), cat.name(f)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The diagram of normalized chains, generators keyed `Seq[i, x]`.
    pub fn chains(&self) -> ChainDiagram {
        let cs: Vec<ChainComplex> = self.spaces.iter().map(normalized_chains).collect();
        let total = tagged_sum("C(X)", &cs);
        let maps: Vec<LinearMap> = self.maps.iter().map(|m| m.chain_map()).collect();
        let cat = self.cat.clone();
        let action = move |f: MorId, k: &Key, n: isize| {
            maps[f].apply_gen(k.get(1), n).map_keys(n, |t| object_key(cat.cod(f), t))
        };
        ChainDiagram::new(self.cat.clone(), total, |k| k.get(0).as_usize(), action)
    }
}

fn object_key(i: ObjId, k: &Key) -> Key {
    Key::seq(vec![Key::int(i as i64), k.clone()])
}

/// `⊕_i C_i` with generators `Seq[i, c]`.
fn tagged_sum(name: &str, cs: &[ChainComplex]) -> ChainComplex {
    let d = cs.to_vec();
    let diff = LinearMap::new(-1, move |k, n| {
        let i = k.get(0).as_usize();
        d[i].d_gen(k.get(1), n).map_keys(n - 1, |t| object_key(i, t))
    });
    let mut b = ChainComplex::builder(name, diff);
    if cs.iter().all(ChainComplex::is_effective) {
        let d = cs.to_vec();
        b = b.basis(move |n| {
            d.iter().enumerate().flat_map(|(i, c)| c.basis(n).unwrap().iter().map(|k| object_key(i, k)).collect::<Vec<_>>()).collect()
        });
    }
    let d = cs.to_vec();
    b.contains(move |k, n| match k {
        Key::Seq(s) if s.len() == 2 => matches!(s[0], Key::Int(i) if (i as usize) < d.len() && d[i as usize].contains(&s[1], n)),
        _ => false,
    })
    .build()
}

type ObjectFn = dyn Fn(&Key) -> ObjId + Send + Sync;
type ActionFn = dyn Fn(MorId, &Key, isize) -> Chain + Send + Sync;
type CellsFn = dyn Fn(isize) -> Vec<Key> + Send + Sync;
type DecomposeFn = dyn Fn(&Key, isize) -> (Key, MorId) + Send + Sync;

/// A cellular basis: every generator is `f_* c` for a unique cell `c` and
/// morphism `f` out of the cell's object. Cells are themselves generators.
#[derive(Clone)]
pub struct Cells {
    cells: Arc<CellsFn>,
    object: Arc<ObjectFn>,
    decompose: Arc<DecomposeFn>,
}

impl Cells {
    pub fn new(
        cells: impl Fn(isize) -> Vec<Key> + Send + Sync + 'static,
        object: impl Fn(&Key) -> ObjId + Send + Sync + 'static,
        decompose: impl Fn(&Key, isize) -> (Key, MorId) + Send + Sync + 'static,
    ) -> Self {
        Cells { cells: Arc::new(cells), object: Arc::new(object), decompose: Arc::new(decompose) }
    }

    pub fn in_degree(&self, n: isize) -> Vec<Key> {
        (self.cells)(n)
    }

    /// The object `i_α` the cell lives over.
    pub fn object(&self, cell: &Key) -> ObjId {
        (self.object)(cell)
    }

    /// `(c, f)` with `generator = f_* c`.
    pub fn decompose(&self, generator: &Key, n: isize) -> (Key, MorId) {
        (self.decompose)(generator, n)
    }
}

/// A functor from a finite category to chain complexes, stored as the
/// total complex `⊕_i C(i)` with the object of each generator and the
/// action of morphisms on generators.
#[derive(Clone)]
pub struct ChainDiagram {
    cat: Arc<FiniteCategory>,
    total: ChainComplex,
    object_of: Arc<ObjectFn>,
    action: Arc<ActionFn>,
    cells: Option<Cells>,
}

impl ChainDiagram {
    pub fn new(
        cat: Arc<FiniteCategory>,
        total: ChainComplex,
        object_of: impl Fn(&Key) -> ObjId + Send + Sync + 'static,
        action: impl Fn(MorId, &Key, isize) -> Chain + Send + Sync + 'static,
    ) -> Self {
        ChainDiagram { cat, total, object_of: Arc::new(object_of), action: Arc::new(action), cells: None }
    }

    pub fn with_cells(mut self, cells: Cells) -> Self {
        self.cells = Some(cells);
        self
    }

    /// Same diagram structure over another complex with the same
    /// generators, e.g. after a perturbation.
    pub fn with_total(&self, total: &ChainComplex) -> Self {
        ChainDiagram { total: total.clone(), ..self.clone() }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.cat
    }

    pub fn total(&self) -> &ChainComplex {
        &self.total
    }

    pub fn object_of(&self, k: &Key) -> ObjId {
        (self.object_of)(k)
    }

    /// `f_*` on a generator over `dom f`.
    pub fn act(&self, f: MorId, k: &Key, n: isize) -> Chain {
        (self.action)(f, k, n)
    }

    pub fn act_chain(&self, f: MorId, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree());
        for (k, v) in c.iter() {
            out.add_scaled(&self.act(f, k, c.degree()), *v);
        }
        out
    }

    pub fn cells(&self) -> Option<&Cells> {
        self.cells.as_ref()
    }

    /// The value `C(j)`.
    pub fn value_at(&self, j: ObjId) -> ChainComplex {
        let total = self.total.clone();
        let mut b = ChainComplex::builder(
            format!("{}({})", self.total.name(), self.cat.object_name(j)),
            LinearMap::new(-1, move |k, n| total.d_gen(k, n)),
        );
        if self.total.is_effective() {
            let (t, obj) = (self.total.clone(), self.object_of.clone());
            b = b.basis(move |n| t.basis(n).unwrap().iter().filter(|k| obj(k) == j).cloned().collect());
        }
        let (t, obj) = (self.total.clone(), self.object_of.clone());
        b.contains(move |k, n| t.contains(k, n) && obj(k) == j).build()
    }

    /// Checks `∂ f_* = f_* ∂` and that `f_*` lands over `cod f`, and the
    /// functor laws, on basis generators through `max_degree`.
    pub fn audit(&self, max_degree: isize) -> Result<()> {
        let cat = &self.cat;
        for n in 0..=max_degree {
            for k in self.total.basis_or_err(n)?.iter() {
                let i = self.object_of(k);
                let g = Chain::generator(k.clone(), n);
                if self.act(cat.identity(i), k, n) != g {
                    return Err(Error::audit("functoriality", format!("identity moves {k}")));
                }
                for f in (0..cat.n_morphisms()).filter(|&f| cat.dom(f) == i) {
                    let fk = self.act(f, k, n);
                    if fk.keys().any(|t| self.object_of(t) != cat.cod(f)) {
                        return Err(Error::audit("functoriality", format!("{} of {k} leaves {}", cat.name(f), cat.object_name(cat.cod(f)))));
                    }
                    if self.total.d(&fk) != self.act_chain(f, &self.total.d_gen(k, n)) {
                        return Err(Error::audit("∂ f = f ∂", format!("{} on {k}", cat.name(f))));
                    }
                    for g in (0..cat.n_morphisms()).filter(|&g| cat.dom(g) == cat.cod(f)) {
                        let gf = cat.compose(g, f).expect("composable");
                        if self.act_chain(g, &fk) != self.act(gf, k, n) {
                            return Err(Error::audit(
                                "functoriality",
                                format!("{} ∘ {} on {k}", cat.name(g), cat.name(f)),
                            ));
                        }
                    }
                }
                if let Some(cells) = &self.cells {
                    let (c, f) = cells.decompose(k, n);
                    if cat.dom(f) != cells.object(&c) || self.act(f, &c, n) != g {
                        return Err(Error::audit("cellular basis", format!("{k} ≠ {}_* {c}", cat.name(f))));
                    }
                }
            }
            if let Some(cells) = &self.cells {
                let cs = cells.in_degree(n);
                let mut seen: HashMap<Key, ()> = HashMap::new();
                for c in &cs {
                    for f in (0..cat.n_morphisms()).filter(|&f| cat.dom(f) == cells.object(c)) {
                        for (t, _) in self.act(f, c, n).iter() {
                            if seen.insert(t.clone(), ()).is_some() {
                                return Err(Error::audit("cellular basis", format!("{t} reached twice")));
                            }
                        }
                    }
                }
                if seen.len() != self.total.basis_or_err(n)?.len() {
                    return Err(Error::audit("cellular basis", format!("cells do not span degree {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Checks that a map between the totals of two diagrams commutes with the
/// actions, on basis generators of the source through `max_degree`.
pub fn check_natural(map: &LinearMap, source: &ChainDiagram, target: &ChainDiagram, max_degree: isize) -> Result<()> {
    let cat = source.category();
    for n in 0..=max_degree {
        for k in source.total().basis_or_err(n)?.iter() {
            let i = source.object_of(k);
            for f in (0..cat.n_morphisms()).filter(|&f| cat.dom(f) == i) {
                let lhs = map.apply(&source.act(f, k, n));
                let rhs = target.act_chain(f, &map.apply_gen(k, n));
                if lhs != rhs {
                    return Err(Error::audit("naturality", format!("{} on {k}: {lhs:?} ≠ {rhs:?}", cat.name(f))));
                }
            }
        }
    }
    Ok(())
}

/// Key `Seq[g, cell]` of the generator `g_* cell` of a free diagram.
pub fn free_key(g: MorId, cell: &Key) -> Key {
    Key::seq(vec![Key::int(g as i64), cell.clone()])
}

/// The free diagram `⊕_α Z·I(i_α, −)` on cells given per degree with their
/// objects and boundaries. Generators are `Seq[g, cell]`; the boundary of a
/// cell is a chain of such generators over the cell's object.
pub fn free_diagram(
    cat: &Arc<FiniteCategory>,
    name: &str,
    cells: impl Fn(isize) -> Vec<Key> + Send + Sync + 'static,
    object: impl Fn(&Key) -> ObjId + Send + Sync + 'static,
    boundary: impl Fn(&Key, isize) -> Chain + Send + Sync + 'static,
) -> ChainDiagram {
    let cells: Arc<CellsFn> = Arc::new(cells);
    let object: Arc<ObjectFn> = Arc::new(object);
    let (c1, o1, cat1) = (cells.clone(), object.clone(), cat.clone());
    let cat2 = cat.clone();
    let diff = LinearMap::new(-1, move |k, n| {
        let g = k.get(0).as_usize();
        post_compose(&cat2, g, &boundary(k.get(1), n))
    });
    let total = ChainComplex::builder(name, diff)
        .basis(move |n| {
            let mut out = Vec::new();
            for c in c1(n) {
                for g in (0..cat1.n_morphisms()).filter(|&g| cat1.dom(g) == o1(&c)) {
                    out.push(free_key(g, &c));
                }
            }
            out
        })
        .build();
    let cat3 = cat.clone();
    let cat4 = cat.clone();
    let o2 = object.clone();
    let cat5 = cat.clone();
    let (c2, o3, cat6) = (cells, object.clone(), cat.clone());
    ChainDiagram::new(cat.clone(), total, move |k| cat3.cod(k.get(0).as_usize()), move |f, k, n| {
        Chain::generator(free_key(cat4.compose(f, k.get(0).as_usize()).expect("composable"), k.get(1)), n)
    })
    .with_cells(Cells {
        cells: Arc::new(move |n| c2(n).into_iter().map(|c| free_key(cat6.identity(o3(&c)), &c)).collect()),
        object: Arc::new(move |c| o2(c.get(1))),
        decompose: Arc::new(move |k, _| {
            let g = k.get(0).as_usize();
            (free_key(cat5.identity(cat5.dom(g)), k.get(1)), g)
        }),
    })
}

/// `g_*` on a chain of free generators.
pub fn post_compose(cat: &FiniteCategory, g: MorId, c: &Chain) -> Chain {
    c.map_keys(c.degree(), |k| free_key(cat.compose(g, k.get(0).as_usize()).expect("composable"), k.get(1)))
}

/// The representable diagram `Z·I(i, −)` in degree 0 with the single cell
/// `id_i`.
pub fn representable(cat: &Arc<FiniteCategory>, i: ObjId) -> ChainDiagram {
    free_diagram(
        cat,
        &format!("Z·I({}, −)", cat.object_name(i)),
        |n| if n == 0 { vec![Key::str("id")] } else { Vec::new() },
        move |_| i,
        |_, n| Chain::zero(n - 1),
    )
}

/// A chain diagram together with a natural strong equivalence to an
/// effective one.
#[derive(Clone)]
pub struct EffectiveDiagram {
    pub original: ChainDiagram,
    pub effective: ChainDiagram,
    pub equivalence: StrongEquivalence,
}

impl EffectiveDiagram {
    /// Checks that the totals match the equivalence ends.
    pub fn new(original: ChainDiagram, effective: ChainDiagram, equivalence: StrongEquivalence) -> Result<Self> {
        original.total().expect_same(equivalence.original(), "diagram equivalence")?;
        effective.total().expect_same(equivalence.effective(), "diagram equivalence")?;
        Ok(EffectiveDiagram { original, effective, equivalence })
    }

    /// An effective diagram with the identity equivalence.
    pub fn trivial(d: &ChainDiagram) -> Self {
        EffectiveDiagram { original: d.clone(), effective: d.clone(), equivalence: StrongEquivalence::identity(d.total()) }
    }
}

/// `A ⊗ B` of two equivalences, both tops being `A.top ⊗ B.top`.
pub fn tensor_equivalences(a: &StrongEquivalence, b: &StrongEquivalence) -> StrongEquivalence {
    let left = tensor_reductions(a.left(), b.left());
    let right = tensor_reductions(a.right(), b.right());
    let left = if a.left().is_identity() && b.left().is_identity() { Reduction::identity(left.top()) } else { left };
    let right = right.rebased(left.top(), right.bottom());
    StrongEquivalence::new(left, right).expect("shared top")
}

fn tensor_action(d: &ChainDiagram) -> impl Fn(MorId, &Key, isize) -> Chain + Send + Sync + 'static {
    let d = d.clone();
    move |f, k, n| {
        let (p, a, b) = split_tensor_key(k);
        tensor_chains(&Chain::generator(a.clone(), p), &d.act(f, b, n - p))
    }
}

fn tensor_diagram(c: &ChainComplex, d: &ChainDiagram, total: ChainComplex) -> ChainDiagram {
    let d1 = d.clone();
    let mut out = ChainDiagram::new(d.category().clone(), total, move |k| d1.object_of(split_tensor_key(k).2), tensor_action(d));
    if let (Some(cells), true) = (d.cells(), c.is_effective()) {
        let (c1, cl1) = (c.clone(), cells.clone());
        let cl2 = cells.clone();
        let cl3 = cells.clone();
        out = out.with_cells(Cells::new(
            move |n| {
                let mut v = Vec::new();
                for p in 0..=n {
                    for a in c1.basis(p).unwrap().iter() {
                        v.extend(cl1.in_degree(n - p).iter().map(|x| tensor_key(p, a, x)));
                    }
                }
                v
            },
            move |k| cl2.object(split_tensor_key(k).2),
            move |k, n| {
                let (p, a, b) = split_tensor_key(k);
                let (cell, f) = cl3.decompose(b, n - p);
                (tensor_key(p, a, &cell), f)
            },
        ));
    }
    out
}

/// `C′ ⊗ D` for a complex `C′` regarded as a constant diagram, with the
/// equivalences tensored.
pub fn diagram_tensor_const(c: &StrongEquivalence, d: &EffectiveDiagram) -> Result<EffectiveDiagram> {
    let eq = tensor_equivalences(c, &d.equivalence);
    let original = tensor_diagram(c.original(), &d.original, eq.original().clone());
    let effective = tensor_diagram(c.effective(), &d.effective, eq.effective().clone());
    EffectiveDiagram::new(original, effective, eq)
}

fn external_diagram(c: &ChainDiagram, d: &ChainDiagram, cat: &Arc<FiniteCategory>, total: ChainComplex) -> ChainDiagram {
    let nj = d.category().n_objects();
    let mj = d.category().n_morphisms();
    let (c1, d1) = (c.clone(), d.clone());
    let (c2, d2) = (c.clone(), d.clone());
    let mut out = ChainDiagram::new(
        cat.clone(),
        total,
        move |k| {
            let (_, a, b) = split_tensor_key(k);
            c1.object_of(a) * nj + d1.object_of(b)
        },
        move |fg, k, n| {
            let (p, a, b) = split_tensor_key(k);
            tensor_chains(&c2.act(fg / mj, a, p), &d2.act(fg % mj, b, n - p))
        },
    );
    if let (Some(ca), Some(cb)) = (c.cells(), d.cells()) {
        let (ca1, cb1, ca2, cb2, ca3, cb3) = (ca.clone(), cb.clone(), ca.clone(), cb.clone(), ca.clone(), cb.clone());
        out = out.with_cells(Cells::new(
            move |n| {
                let mut v = Vec::new();
                for p in 0..=n {
                    for a in ca1.in_degree(p) {
                        v.extend(cb1.in_degree(n - p).iter().map(|b| tensor_key(p, &a, b)));
                    }
                }
                v
            },
            move |k| {
                let (_, a, b) = split_tensor_key(k);
                ca2.object(a) * nj + cb2.object(b)
            },
            move |k, n| {
                let (p, a, b) = split_tensor_key(k);
                let (x, f) = ca3.decompose(a, p);
                let (y, g) = cb3.decompose(b, n - p);
                (tensor_key(p, &x, &y), f * mj + g)
            },
        ));
    }
    out
}

/// `C ⊠ D` over `I × J`: `(C ⊠ D)(i, j) = C(i) ⊗ D(j)`, with cells the
/// pairs of cells.
pub fn external_tensor(c: &EffectiveDiagram, d: &EffectiveDiagram) -> Result<EffectiveDiagram> {
    let cat = Arc::new(c.original.category().product(d.original.category()));
    let eq = tensor_equivalences(&c.equivalence, &d.equivalence);
    let original = external_diagram(&c.original, &d.original, &cat, eq.original().clone());
    let effective = external_diagram(&c.effective, &d.effective, &cat, eq.effective().clone());
    EffectiveDiagram::new(original, effective, eq)
}

/// The plain tensor product of the totals, for callers without
/// equivalences.
pub fn tensor_totals(c: &ChainComplex, d: &ChainDiagram) -> ChainDiagram {
    tensor_diagram(c, d, tensor(c, d.total()))
}

/// Diagram JSON for finite spaces: the category, a space per object and,
/// for each non-identity morphism, the image of every nondegenerate
/// simplex. Maps into a one-point space may be omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceDiagramSpec {
    pub category: CategorySpec,
    pub spaces: HashMap<String, SpaceSpec>,
    #[serde(default)]
    pub maps: HashMap<String, HashMap<String, FaceSpec>>,
}

impl SpaceDiagram {
    pub fn from_spec(spec: &SpaceDiagramSpec) -> Result<Self> {
        let cat = Arc::new(FiniteCategory::from_spec(&spec.category)?);
        let mut spaces: Vec<Space> = Vec::new();
        for o in cat.objects() {
            let s = spec.spaces.get(o).ok_or_else(|| Error::Parse(format!("no space for object {o}")))?;
            spaces.push(Arc::new(FiniteSpace::from_spec(o, s)?));
        }
        let mut maps = Vec::new();
        for f in 0..cat.n_morphisms() {
            let (src, tgt) = (&spaces[cat.dom(f)], &spaces[cat.cod(f)]);
            if cat.is_identity(f) {
                maps.push(SimplicialMap::identity(src));
                continue;
            }
            match spec.maps.get(cat.name(f)) {
                Some(table) => {
                    let mut images = HashMap::new();
                    let top = src.dimension().unwrap_or(0);
                    for n in 0..=top {
                        for b in src.nondegenerate(n).unwrap_or_default() {
                            let name = b.to_string();
                            let img = table
                                .get(&name)
                                .ok_or_else(|| Error::Parse(format!("{} does not map {name}", cat.name(f))))?;
                            let bd = (0..=n)
                                .find(|&m| tgt.contains(&Key::str(&img.base), m))
                                .ok_or_else(|| Error::Parse(format!("unknown simplex {}", img.base)))?;
                            if bd + img.degens.len() != n {
                                return Err(Error::Parse(format!("{} maps {name} to the wrong dimension", cat.name(f))));
                            }
                            images.insert(b, Simplex::degenerate(Key::str(&img.base), bd, &img.degens));
                        }
                    }
                    maps.push(SimplicialMap::new(src.clone(), tgt.clone(), move |k, _| images[k].clone()));
                }
                None => {
                    let one_point = tgt.nondegenerate(0).is_some_and(|v| v.len() == 1)
                        && (1..=tgt.dimension().unwrap_or(0)).all(|n| tgt.nondegenerate(n).is_some_and(|v| v.is_empty()));
                    if !one_point {
                        return Err(Error::Parse(format!("no map given for {}", cat.name(f))));
                    }
                    let v = tgt.nondegenerate(0).unwrap()[0].clone();
                    maps.push(SimplicialMap::new(src.clone(), tgt.clone(), move |_, n| {
                        Simplex::degenerate(v.clone(), 0, &(0..n).collect::<Vec<_>>())
                    }));
                }
            }
        }
        let d = SpaceDiagram::new(cat, spaces, maps)?;
        let top = d.spaces.iter().filter_map(|x| x.dimension()).max().unwrap_or(0);
        d.audit(top)?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SpaceDiagramSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        SpaceDiagram::from_spec(&spec)
    }
}
