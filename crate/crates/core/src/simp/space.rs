use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::Key;
use crate::error::{Error, Result};

use super::simplex::subsets;
use super::Simplex;

/// A locally effective simplicial set: nondegenerate simplices are encoded
/// by keys, and faces of nondegenerate simplices are computable. All other
/// face and degeneracy operators follow through [`Simplex`].
pub trait SimplicialSet: Send + Sync {
    fn name(&self) -> String;

    /// `d_i` of the nondegenerate `dim`-simplex `base`, `dim ≥ 1`.
    fn face_nd(&self, base: &Key, dim: usize, i: usize) -> Simplex;

    /// The nondegenerate simplices of dimension `dim`, or `None` when the
    /// space is only locally effective.
    fn nondegenerate(&self, dim: usize) -> Option<Vec<Key>>;

    /// Whether `base` encodes a nondegenerate `dim`-simplex.
    fn contains(&self, base: &Key, dim: usize) -> bool {
        match self.nondegenerate(dim) {
            Some(b) => b.contains(base),
            None => true,
        }
    }

    /// An upper bound on the dimension of nondegenerate simplices, when
    /// one is known.
    fn dimension(&self) -> Option<usize> {
        None
    }
}

pub type Space = Arc<dyn SimplicialSet>;

/// Nondegenerate simplex counts in dimensions `0..=max_dim`.
pub fn simplex_counts(space: &dyn SimplicialSet, max_dim: usize) -> Result<Vec<usize>> {
    (0..=max_dim)
        .map(|n| {
            space
                .nondegenerate(n)
                .map(|b| b.len())
                .ok_or_else(|| Error::LocalFiniteness(format!("{} is not effective", space.name())))
        })
        .collect()
}

/// All simplices of dimension `dim`, degenerate ones included.
pub fn all_simplices(space: &dyn SimplicialSet, dim: usize) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    for m in 0..=dim {
        let bases = space
            .nondegenerate(m)
            .ok_or_else(|| Error::LocalFiniteness(format!("{} is not effective", space.name())))?;
        if bases.is_empty() {
            continue;
        }
        for degens in subsets(dim, dim - m) {
            for b in bases.iter() {
                out.push(Simplex { dim, degens: degens.clone(), base: b.clone() });
            }
        }
    }
    Ok(out)
}

/// Checks the simplicial identities `d_i d_j = d_{j−1} d_i` (i < j) on every
/// nondegenerate simplex through `max_dim`, and that faces of
/// nondegenerate simplices lie in the space. Identities involving
/// degeneracies hold by construction of the canonical form.
pub fn check_identities(space: &dyn SimplicialSet, max_dim: usize) -> Result<()> {
    for n in 1..=max_dim {
        let Some(bases) = space.nondegenerate(n) else {
            return Err(Error::LocalFiniteness(format!("{} is not effective", space.name())));
        };
        for b in bases.iter() {
            let x = Simplex::nondegenerate(b.clone(), n);
            for i in 0..=n {
                let f = x.face(space, i);
                if f.dim != n - 1 || !space.contains(&f.base, f.base_dim()) {
                    return Err(Error::audit("face in space", format!("d_{i} {x:?} = {f:?}")));
                }
            }
            if n < 2 {
                continue;
            }
            for j in 1..=n {
                for i in 0..j {
                    let lhs = x.face(space, j).face(space, i);
                    let rhs = x.face(space, i).face(space, j - 1);
                    if lhs != rhs {
                        return Err(Error::audit(
                            "d_i d_j = d_{j-1} d_i",
                            format!("i = {i}, j = {j} on {x:?}: {lhs:?} ≠ {rhs:?}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A face expression in finite-space JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub base: String,
    #[serde(default)]
    pub degens: Vec<usize>,
}

/// Finite-space JSON: nondegenerate simplex names per dimension and the
/// faces of each positive-dimensional one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub dims: BTreeMap<usize, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceSpec>>,
}

/// A finite simplicial set given by tables.
pub struct FiniteSpace {
    name: String,
    cells: Vec<Vec<Key>>,
    faces: HashMap<Key, Vec<Simplex>>,
}

impl FiniteSpace {
    /// `cells[n]` lists the nondegenerate `n`-simplices; `faces` gives the
    /// `n + 1` faces of each positive-dimensional one. The simplicial
    /// identities are checked.
    pub fn new(name: impl Into<String>, cells: Vec<Vec<Key>>, faces: HashMap<Key, Vec<Simplex>>) -> Result<Self> {
        let name = name.into();
        let mut dim_of = HashMap::new();
        for (n, cs) in cells.iter().enumerate() {
            for c in cs {
                if dim_of.insert(c.clone(), n).is_some() {
                    return Err(Error::IllFormed(format!("simplex {c} listed twice")));
                }
            }
        }
        for (n, cs) in cells.iter().enumerate().skip(1) {
            for c in cs {
                let fs = faces.get(c).ok_or_else(|| Error::IllFormed(format!("no faces for {c}")))?;
                if fs.len() != n + 1 {
                    return Err(Error::IllFormed(format!("{c} has {} faces, expected {}", fs.len(), n + 1)));
                }
                for f in fs {
                    if f.dim != n - 1 || dim_of.get(&f.base) != Some(&f.base_dim()) {
                        return Err(Error::IllFormed(format!("face {f:?} of {c} is not an {}-simplex", n - 1)));
                    }
                }
            }
        }
        let space = FiniteSpace { name, cells, faces };
        let top = space.cells.len().saturating_sub(1);
        check_identities(&space, top).map_err(|e| match e {
            Error::Audit { law, witness } => Error::IllFormed(format!("{law}: {witness}")),
            other => other,
        })?;
        Ok(space)
    }

    pub fn from_spec(name: &str, spec: &SpaceSpec) -> Result<Self> {
        let top = spec.dims.keys().next_back().copied().unwrap_or(0);
        let mut cells = vec![Vec::new(); if spec.dims.is_empty() { 0 } else { top + 1 }];
        let mut dim_of = HashMap::new();
        for (n, names) in &spec.dims {
            for s in names {
                dim_of.insert(s.clone(), *n);
            }
            cells[*n] = names.iter().map(|s| Key::str(s)).collect();
        }
        let mut faces = HashMap::new();
        for (s, fs) in &spec.faces {
            if !dim_of.contains_key(s) {
                return Err(Error::Parse(format!("faces given for unknown simplex {s}")));
            }
            let mut out = Vec::new();
            for f in fs {
                let bd = *dim_of.get(&f.base).ok_or_else(|| Error::Parse(format!("unknown face base {}", f.base)))?;
                let mut d = f.degens.clone();
                d.sort_unstable();
                d.dedup();
                if d.len() != f.degens.len() || d.iter().any(|&j| j >= bd + d.len()) {
                    return Err(Error::Parse(format!("bad degeneracy word {:?} on {}", f.degens, f.base)));
                }
                out.push(Simplex { dim: bd + d.len(), degens: d, base: Key::str(&f.base) });
            }
            faces.insert(Key::str(s), out);
        }
        FiniteSpace::new(name, cells, faces).map_err(|e| match e {
            Error::IllFormed(m) => Error::Parse(m),
            other => other,
        })
    }

    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let spec: SpaceSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        FiniteSpace::from_spec(name, &spec)
    }

    /// JSON spec; only meaningful when all simplex keys are strings.
    pub fn to_spec(&self) -> SpaceSpec {
        let dims = self
            .cells
            .iter()
            .enumerate()
            .map(|(n, cs)| (n, cs.iter().map(|c| c.to_string()).collect()))
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|(k, fs)| {
                (k.to_string(), fs.iter().map(|f| FaceSpec { base: f.base.to_string(), degens: f.degens.clone() }).collect())
            })
            .collect();
        SpaceSpec { dims, faces }
    }

    /// Copies an effective space of bounded dimension into tables.
    pub fn from_space(space: &dyn SimplicialSet, max_dim: usize) -> Result<Self> {
        let mut cells = Vec::new();
        let mut faces = HashMap::new();
        for n in 0..=max_dim {
            let bs = space
                .nondegenerate(n)
                .ok_or_else(|| Error::LocalFiniteness(format!("{} is not effective", space.name())))?;
            if n > 0 {
                for b in &bs {
                    faces.insert(b.clone(), (0..=n).map(|i| space.face_nd(b, n, i)).collect());
                }
            }
            cells.push(bs);
        }
        while cells.len() > 1 && cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        FiniteSpace::new(space.name(), cells, faces)
    }
}

impl SimplicialSet for FiniteSpace {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn face_nd(&self, base: &Key, _dim: usize, i: usize) -> Simplex {
        self.faces.get(base).unwrap_or_else(|| panic!("{base} is not a simplex of {}", self.name))[i].clone()
    }

    fn nondegenerate(&self, dim: usize) -> Option<Vec<Key>> {
        Some(self.cells.get(dim).cloned().unwrap_or_default())
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.cells.len().saturating_sub(1))
    }
}

/// Ordered simplicial complexes on vertex sets `0..=n` whose simplices are
/// increasing vertex lists: the full simplex or its boundary.
struct VertexComplex {
    n: usize,
    boundary: bool,
}

impl SimplicialSet for VertexComplex {
    fn name(&self) -> String {
        if self.boundary {
            format!("∂Δ^{}", self.n)
        } else {
            format!("Δ^{}", self.n)
        }
    }

    fn face_nd(&self, base: &Key, _dim: usize, i: usize) -> Simplex {
        let mut v = base.as_usizes();
        v.remove(i);
        let d = v.len() - 1;
        Simplex::nondegenerate(Key::ints(&v), d)
    }

    fn nondegenerate(&self, dim: usize) -> Option<Vec<Key>> {
        if dim > self.n || (self.boundary && dim == self.n) {
            return Some(Vec::new());
        }
        Some(subsets(self.n + 1, dim + 1).iter().map(|s| Key::ints(s)).collect())
    }

    fn contains(&self, base: &Key, dim: usize) -> bool {
        match base {
            Key::Seq(s) => {
                let v = base.as_usizes();
                s.len() == dim + 1
                    && v.windows(2).all(|w| w[0] < w[1])
                    && v.last().is_some_and(|&l| l <= self.n)
                    && !(self.boundary && dim == self.n)
            }
            _ => false,
        }
    }

    fn dimension(&self) -> Option<usize> {
        Some(if self.boundary { self.n.saturating_sub(1) } else { self.n })
    }
}

/// The standard `n`-simplex; simplices are increasing vertex lists.
pub fn simplex(n: usize) -> Space {
    Arc::new(VertexComplex { n, boundary: false })
}

/// The boundary of the standard `n`-simplex.
pub fn boundary(n: usize) -> Space {
    Arc::new(VertexComplex { n, boundary: true })
}

pub fn point() -> Space {
    simplex(0)
}

/// The empty simplicial set.
pub fn empty() -> Space {
    Arc::new(FiniteSpace { name: "∅".into(), cells: Vec::new(), faces: HashMap::new() })
}

/// The minimal `n`-sphere: a vertex `*` and one nondegenerate `n`-simplex
/// `s` all of whose faces are the degenerate point.
pub fn sphere(n: usize) -> Space {
    if n == 0 {
        let cells = vec![vec![Key::str("*"), Key::str("s")]];
        return Arc::new(FiniteSpace { name: "S^0".into(), cells, faces: HashMap::new() });
    }
    let mut cells = vec![Vec::new(); n + 1];
    cells[0].push(Key::str("*"));
    cells[n].push(Key::str("s"));
    let degenerate_point = Simplex::degenerate(Key::str("*"), 0, &(0..n - 1).collect::<Vec<_>>());
    let faces = HashMap::from([(Key::str("s"), vec![degenerate_point; n + 1])]);
    Arc::new(FiniteSpace { name: format!("S^{n}"), cells, faces })
}

/// The circle with two vertices `v0, v1` and edges `e0: v0 → v1`,
/// `e1: v1 → v0`, on which `Z/2` acts freely by swapping indices.
pub fn two_cell_circle() -> Space {
    let v = |s: &str| Simplex::nondegenerate(Key::str(s), 0);
    let faces = HashMap::from([(Key::str("e0"), vec![v("v1"), v("v0")]), (Key::str("e1"), vec![v("v0"), v("v1")])]);
    let cells = vec![vec![Key::str("v0"), Key::str("v1")], vec![Key::str("e0"), Key::str("e1")]];
    Arc::new(FiniteSpace { name: "S^1_free".into(), cells, faces })
}

/// The minimal real projective plane: `d_0 σ = d_2 σ = a`, `d_1 σ = s_0 v`.
pub fn projective_plane() -> Space {
    let v = Key::str("v");
    let a = Simplex::nondegenerate(Key::str("a"), 1);
    let faces = HashMap::from([
        (Key::str("a"), vec![Simplex::nondegenerate(v.clone(), 0); 2]),
        (Key::str("σ"), vec![a.clone(), Simplex::degenerate(v.clone(), 0, &[0]), a]),
    ]);
    let cells = vec![vec![v], vec![Key::str("a")], vec![Key::str("σ")]];
    Arc::new(FiniteSpace { name: "RP^2".into(), cells, faces })
}

/// The simplices of `X` whose nondegenerate base has dimension `≤ k`.
pub struct Skeleton {
    inner: Space,
    k: usize,
}

impl SimplicialSet for Skeleton {
    fn name(&self) -> String {
        format!("sk_{} {}", self.k, self.inner.name())
    }

    fn face_nd(&self, base: &Key, dim: usize, i: usize) -> Simplex {
        self.inner.face_nd(base, dim, i)
    }

    fn nondegenerate(&self, dim: usize) -> Option<Vec<Key>> {
        if dim > self.k {
            Some(Vec::new())
        } else {
            self.inner.nondegenerate(dim)
        }
    }

    fn contains(&self, base: &Key, dim: usize) -> bool {
        dim <= self.k && self.inner.contains(base, dim)
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.inner.dimension().map_or(self.k, |d| d.min(self.k)))
    }
}

pub fn skeleton(x: &Space, k: usize) -> Space {
    Arc::new(Skeleton { inner: x.clone(), k })
}

/// `X × Y`. A nondegenerate `n`-simplex is a pair of `n`-simplices with
/// disjoint degeneracy sets, keyed `Seq[x.to_key(), y.to_key()]`.
pub struct Product {
    x: Space,
    y: Space,
}

impl Product {
    pub fn factors(&self) -> (&Space, &Space) {
        (&self.x, &self.y)
    }

    /// The canonical simplex of `X × Y` for a pair of `n`-simplices.
    pub fn pair(x: &Simplex, y: &Simplex) -> Simplex {
        let common: Vec<usize> = x.degens.iter().copied().filter(|j| y.degens.binary_search(j).is_ok()).collect();
        let (x0, y0) = (x.strip(&common), y.strip(&common));
        Simplex { dim: x.dim, degens: common, base: Key::seq(vec![x0.to_key(), y0.to_key()]) }
    }

    /// The components of a nondegenerate product key.
    pub fn split(base: &Key) -> (Simplex, Simplex) {
        (Simplex::from_key(base.get(0)), Simplex::from_key(base.get(1)))
    }
}

impl SimplicialSet for Product {
    fn name(&self) -> String {
        format!("{} × {}", self.x.name(), self.y.name())
    }

    fn face_nd(&self, base: &Key, _dim: usize, i: usize) -> Simplex {
        let (a, b) = Product::split(base);
        Product::pair(&a.face(self.x.as_ref(), i), &b.face(self.y.as_ref(), i))
    }

    fn nondegenerate(&self, n: usize) -> Option<Vec<Key>> {
        let mut out = Vec::new();
        for p in 0..=n {
            let xs = self.x.nondegenerate(p)?;
            if xs.is_empty() {
                continue;
            }
            for q in 0..=n {
                // degeneracy sets of sizes n − p and n − q must be disjoint
                if (n - p) + (n - q) > n {
                    continue;
                }
                let ys = self.y.nondegenerate(q)?;
                if ys.is_empty() {
                    continue;
                }
                for cx in subsets(n, n - p) {
                    let rest: Vec<usize> = (0..n).filter(|j| cx.binary_search(j).is_err()).collect();
                    for pick in subsets(rest.len(), n - q) {
                        let cy: Vec<usize> = pick.iter().map(|&i| rest[i]).collect();
                        for a in &xs {
                            for b in &ys {
                                let sx = Simplex { dim: n, degens: cx.clone(), base: a.clone() };
                                let sy = Simplex { dim: n, degens: cy.clone(), base: b.clone() };
                                out.push(Key::seq(vec![sx.to_key(), sy.to_key()]));
                            }
                        }
                    }
                }
            }
        }
        Some(out)
    }

    fn contains(&self, base: &Key, n: usize) -> bool {
        let Key::Seq(s) = base else { return false };
        if s.len() != 2 {
            return false;
        }
        let (a, b) = Product::split(base);
        a.dim == n
            && b.dim == n
            && a.degens.iter().all(|j| b.degens.binary_search(j).is_err())
            && self.x.contains(&a.base, a.base_dim())
            && self.y.contains(&b.base, b.base_dim())
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.x.dimension()? + self.y.dimension()?)
    }
}

pub fn product(x: &Space, y: &Space) -> Arc<Product> {
    Arc::new(Product { x: x.clone(), y: y.clone() })
}
