use std::fmt;

use crate::chain::Key;

use super::SimplicialSet;

/// A simplex in canonical form `s_{j_k} … s_{j_1} y` with `j_k > … > j_1`
/// and `y` nondegenerate. The degeneracy word is stored as the increasing
/// list `j_1 < … < j_k`, which is also the set of `i` with `θ(i) = θ(i+1)`
/// for the surjection `θ: [dim] → [dim − k]` with `x = θ^* y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: usize,
    pub degens: Vec<usize>,
    pub base: Key,
}

impl Simplex {
    pub fn nondegenerate(base: Key, dim: usize) -> Self {
        Simplex { dim, degens: Vec::new(), base }
    }

    /// `s_{j_k} … s_{j_1} base`; `degens` in any order, distinct.
    pub fn degenerate(base: Key, base_dim: usize, degens: &[usize]) -> Self {
        let mut d = degens.to_vec();
        d.sort_unstable();
        d.dedup();
        assert_eq!(d.len(), degens.len(), "repeated degeneracy index");
        let dim = base_dim + d.len();
        assert!(d.iter().all(|&j| j < dim), "degeneracy index out of range");
        Simplex { dim, degens: d, base }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degens.is_empty()
    }

    pub fn base_dim(&self) -> usize {
        self.dim - self.degens.len()
    }

    /// The surjection `θ` as its value list.
    pub fn surjection(&self) -> Vec<usize> {
        surjection(self.dim, &self.degens)
    }

    /// `Seq[dim, degens, base]`.
    pub fn to_key(&self) -> Key {
        Key::seq(vec![Key::int(self.dim as i64), Key::ints(&self.degens), self.base.clone()])
    }

    pub fn from_key(k: &Key) -> Self {
        Simplex { dim: k.get(0).as_usize(), degens: k.get(1).as_usizes(), base: k.get(2).clone() }
    }

    /// `s_i x`, without consulting the space.
    pub fn degeneracy(&self, i: usize) -> Simplex {
        assert!(i <= self.dim, "degeneracy s_{i} on a {}-simplex", self.dim);
        let op: Vec<usize> = (0..=self.dim + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
        let theta = self.surjection();
        let comp: Vec<usize> = op.iter().map(|&k| theta[k]).collect();
        Simplex { dim: self.dim + 1, degens: collapse_set(&comp), base: self.base.clone() }
    }

    /// `d_i x`.
    pub fn face(&self, space: &dyn SimplicialSet, i: usize) -> Simplex {
        assert!(i <= self.dim && self.dim > 0, "face d_{i} on a {}-simplex", self.dim);
        let op: Vec<usize> = (0..self.dim).map(|k| if k < i { k } else { k + 1 }).collect();
        self.apply(space, &op)
    }

    /// `op^* x` for a monotone `op: [k] → [dim]` given by its values.
    pub fn apply(&self, space: &dyn SimplicialSet, op: &[usize]) -> Simplex {
        let theta = self.surjection();
        let comp: Vec<usize> = op.iter().map(|&k| theta[k]).collect();
        let mut image = comp.clone();
        image.dedup();
        let m = self.base_dim();
        let epi: Vec<usize> = comp.iter().map(|v| image.binary_search(v).unwrap()).collect();
        if image.len() == m + 1 {
            return Simplex { dim: op.len() - 1, degens: collapse_set(&epi), base: self.base.clone() };
        }
        restrict(space, &self.base, m, &image).apply(space, &epi)
    }

    /// The face spanned by the given increasing vertex list.
    pub fn restrict(&self, space: &dyn SimplicialSet, vertices: &[usize]) -> Simplex {
        self.apply(space, vertices)
    }

    /// Front face `x|[0..p]`.
    pub fn front(&self, space: &dyn SimplicialSet, p: usize) -> Simplex {
        self.apply(space, &(0..=p).collect::<Vec<_>>())
    }

    /// Back face `x|[p..dim]`.
    pub fn back(&self, space: &dyn SimplicialSet, p: usize) -> Simplex {
        self.apply(space, &(p..=self.dim).collect::<Vec<_>>())
    }

    /// Removes the degeneracies in `common ⊆ degens`, so that the result
    /// `x'` satisfies `x = s_common x'`.
    pub fn strip(&self, common: &[usize]) -> Simplex {
        let degens = self
            .degens
            .iter()
            .filter(|c| common.binary_search(c).is_err())
            .map(|&c| c - common.iter().filter(|&&k| k < c).count())
            .collect();
        Simplex { dim: self.dim - common.len(), degens, base: self.base.clone() }
    }

    /// `(s_common)` applied to `x`, inverse of [`Simplex::strip`].
    pub fn with_degens(&self, common: &[usize]) -> Simplex {
        let mut x = self.clone();
        for &j in common {
            x = x.degeneracy(j);
        }
        x
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in self.degens.iter().rev() {
            write!(f, "s{j}")?;
        }
        write!(f, "{}", self.base)
    }
}

pub(crate) fn surjection(dim: usize, degens: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dim + 1);
    let mut v = 0;
    out.push(0);
    for i in 0..dim {
        if degens.binary_search(&i).is_err() {
            v += 1;
        }
        out.push(v);
    }
    out
}

pub(crate) fn collapse_set(theta: &[usize]) -> Vec<usize> {
    (0..theta.len().saturating_sub(1)).filter(|&i| theta[i] == theta[i + 1]).collect()
}

/// The face of a nondegenerate `m`-simplex spanned by `image`, removing
/// missing vertices from the top down.
fn restrict(space: &dyn SimplicialSet, base: &Key, m: usize, image: &[usize]) -> Simplex {
    let j = (0..=m).rev().find(|v| image.binary_search(v).is_err()).expect("proper face");
    let w = space.face_nd(base, m, j);
    let op: Vec<usize> = image.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
    w.apply(space, &op)
}

/// All increasing `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
