use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::abgrp::{AbGroup, FeDiagram, Hom};
use crate::chain::Key;
use crate::diagcat::SpaceDiagram;
use crate::simp::{subsets, Simplex, SimplicialMap, SimplicialSet, Space};

/// `K(π, n)`: a `q`-simplex is a normalized `n`-cocycle on `Δ^q` with
/// values in `π`, stored as its values on the `n`-faces of `Δ^q` in
/// lexicographic order. Faces and degeneracies are pullbacks.
pub struct EmSpace {
    group: AbGroup,
    n: usize,
    orders: Vec<i64>,
}

/// Values of a cochain on the `n`-faces, each a coordinate vector.
pub type CocycleTable = Vec<Vec<i64>>;

impl EmSpace {
    pub fn new(group: &AbGroup, n: usize) -> Self {
        assert!(n >= 1, "K(π, n) needs n ≥ 1");
        let orders = group.orders().iter().map(|q| q.to_i64().expect("group order fits in i64")).collect();
        EmSpace { group: group.clone(), n, orders }
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The `n`-faces of `Δ^q` in table order.
    pub fn faces(&self, q: usize) -> Vec<Vec<usize>> {
        subsets(q + 1, self.n + 1)
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.orders).map(|(&x, &q)| if q == 0 { x } else { x.rem_euclid(q) }).collect()
    }

    fn is_zero(v: &[i64]) -> bool {
        v.iter().all(|&x| x == 0)
    }

    pub fn key(table: &[Vec<i64>]) -> Key {
        Key::seq(table.iter().map(|v| Key::ints(v)).collect())
    }

    pub fn table(key: &Key) -> CocycleTable {
        key.as_seq().iter().map(|v| v.as_seq().iter().map(Key::as_int).collect()).collect()
    }

    /// `φ^* c` for a monotone `φ: [q′] → [q]` given by its values.
    pub fn pullback(&self, table: &[Vec<i64>], q: usize, phi: &[usize]) -> CocycleTable {
        let index: HashMap<Vec<usize>, usize> = self.faces(q).into_iter().enumerate().map(|(i, f)| (f, i)).collect();
        let zero = vec![0; self.orders.len()];
        self.faces(phi.len() - 1)
            .iter()
            .map(|f| {
                let img: Vec<usize> = f.iter().map(|&v| phi[v]).collect();
                if img.windows(2).any(|w| w[0] == w[1]) {
                    zero.clone()
                } else {
                    table[index[&img]].clone()
                }
            })
            .collect()
    }

    pub fn is_cocycle(&self, table: &[Vec<i64>], q: usize) -> bool {
        let faces = self.faces(q);
        if table.len() != faces.len() || table.iter().any(|v| v.len() != self.orders.len() || self.reduce(v) != *v) {
            return false;
        }
        let index: HashMap<&Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        for s in subsets(q + 1, self.n + 2) {
            let mut acc = vec![0i64; self.orders.len()];
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (a, v) in acc.iter_mut().zip(&table[index[&f]]) {
                    *a += sign * v;
                }
            }
            if !EmSpace::is_zero(&self.reduce(&acc)) {
                return false;
            }
        }
        true
    }

    /// The canonical simplex of a cocycle table on `Δ^q`.
    pub fn simplex_of(&self, table: CocycleTable, q: usize) -> Simplex {
        let mut degens = Vec::new();
        for i in 0..q {
            let di: Vec<usize> = (0..q).map(|v| if v < i { v } else { v + 1 }).collect();
            let si: Vec<usize> = (0..=q).map(|v| if v <= i { v } else { v - 1 }).collect();
            if self.pullback(&self.pullback(&table, q, &di), q - 1, &si) == table {
                degens.push(i);
            }
        }
        let keep: Vec<usize> = (0..=q).filter(|&v| v == 0 || degens.binary_search(&(v - 1)).is_err()).collect();
        let base = self.pullback(&table, q, &keep);
        Simplex::degenerate(EmSpace::key(&base), keep.len() - 1, &degens)
    }

    /// The full table of any simplex.
    pub fn expand(&self, s: &Simplex) -> CocycleTable {
        self.pullback(&EmSpace::table(&s.base), s.base_dim(), &s.surjection())
    }

    /// All cocycles on `Δ^q`: free values on the faces through vertex 0,
    /// the rest forced by the cocycle condition.
    fn cocycles(&self, q: usize, elements: &[Vec<i64>]) -> Vec<CocycleTable> {
        let faces = self.faces(q);
        let free: Vec<usize> = (0..faces.len()).filter(|&i| faces[i][0] == 0).collect();
        let index: HashMap<&Vec<usize>, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; free.len()];
        loop {
            let mut table = vec![vec![0i64; self.orders.len()]; faces.len()];
            for (slot, &i) in free.iter().enumerate() {
                table[i] = elements[choice[slot]].clone();
            }
            for (i, f) in faces.iter().enumerate() {
                if f[0] == 0 {
                    continue;
                }
                // δc({0} ∪ f) = 0 solved for c(f)
                let mut acc = vec![0i64; self.orders.len()];
                for r in 0..f.len() {
                    let mut g = vec![0];
                    g.extend(f.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, &v)| v));
                    let sign = if (r + 1) % 2 == 0 { 1 } else { -1 };
                    for (a, v) in acc.iter_mut().zip(&table[index[&g]]) {
                        *a -= sign * v;
                    }
                }
                table[i] = self.reduce(&acc);
            }
            out.push(table);
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return out;
                }
                choice[pos] += 1;
                if choice[pos] < elements.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }
}

impl SimplicialSet for EmSpace {
    fn name(&self) -> String {
        format!("K({}, {})", self.group, self.n)
    }

    fn face_nd(&self, base: &Key, dim: usize, i: usize) -> Simplex {
        let di: Vec<usize> = (0..dim).map(|v| if v < i { v } else { v + 1 }).collect();
        self.simplex_of(self.pullback(&EmSpace::table(base), dim, &di), dim - 1)
    }

    fn nondegenerate(&self, q: usize) -> Option<Vec<Key>> {
        let elements: Vec<Vec<i64>> = self
            .group
            .elements()?
            .into_iter()
            .map(|e| e.iter().map(|x| x.to_i64().expect("small element")).collect())
            .collect();
        Some(
            self.cocycles(q, &elements)
                .into_iter()
                .filter(|t| !self.simplex_of(t.clone(), q).is_degenerate())
                .map(|t| EmSpace::key(&t))
                .collect(),
        )
    }

    fn contains(&self, base: &Key, dim: usize) -> bool {
        let Key::Seq(rows) = base else { return false };
        if rows.iter().any(|r| !matches!(r, Key::Seq(v) if v.iter().all(|x| matches!(x, Key::Int(_))))) {
            return false;
        }
        let table = EmSpace::table(base);
        self.is_cocycle(&table, dim) && !self.simplex_of(table, dim).is_degenerate()
    }

    fn dimension(&self) -> Option<usize> {
        self.group.is_trivial().then_some(0)
    }
}

/// `K(π, n)` as a space.
pub fn em_space(group: &AbGroup, n: usize) -> Space {
    Arc::new(EmSpace::new(group, n))
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The simplicial map `K(A, n) → K(B, n)` of a homomorphism, applied to
/// cocycle values.
pub fn em_map(hom: &Hom, n: usize) -> SimplicialMap {
    let source = Arc::new(EmSpace::new(hom.domain(), n));
    let target = Arc::new(EmSpace::new(hom.codomain(), n));
    let (h, t) = (hom.clone(), target.clone());
    SimplicialMap::new(source, target, move |k, q| {
        let table: CocycleTable = EmSpace::table(k)
            .iter()
            .map(|v| {
                let w: Vec<i64> = h.apply(&to_big(v)).iter().map(|x| x.to_i64().expect("small element")).collect();
                t.reduce(&w)
            })
            .collect();
        t.simplex_of(table, q)
    })
}

/// The diagram `i ↦ K(π(i), n)` with maps induced by those of `π`.
pub fn em_diagram(pi: &FeDiagram, n: usize) -> SpaceDiagram {
    let cat = Arc::new(pi.category().clone());
    let maps: Vec<SimplicialMap> = (0..cat.n_morphisms()).map(|f| em_map(pi.map(f), n)).collect();
    let spaces: Vec<Space> = (0..cat.n_objects()).map(|i| maps[cat.identity(i)].source().clone()).collect();
    // maps must share the value objects
    let maps = (0..cat.n_morphisms())
        .map(|f| {
            let m = maps[f].clone();
            SimplicialMap::new(spaces[cat.dom(f)].clone(), spaces[cat.cod(f)].clone(), move |k, q| m.on_nondegenerate(k, q))
        })
        .collect();
    SpaceDiagram::new(cat, spaces, maps).expect("one value per object")
}
