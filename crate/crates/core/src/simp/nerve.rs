use std::sync::Arc;

use crate::chain::Key;
use crate::diagcat::{FiniteCategory, MorId, ObjId};

use super::{SimplicialSet, Simplex, Space};

/// The nerve of a finite category. A `q`-simplex is a composable chain
/// `i_0 --f_1--> … --f_q--> i_q`; nondegenerate ones contain no identity.
/// Keys are `Seq[i_0, Seq[f_1, …, f_q]]`.
pub struct Nerve {
    cat: Arc<FiniteCategory>,
}

impl Nerve {
    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn key(start: ObjId, chain: &[MorId]) -> Key {
        Key::seq(vec![Key::int(start as i64), Key::ints(chain)])
    }

    pub fn decode(k: &Key) -> (ObjId, Vec<MorId>) {
        (k.get(0).as_usize(), k.get(1).as_usizes())
    }

    /// The canonical simplex of any composable chain: each identity `f_l`
    /// is the degeneracy `s_{l−1}`.
    pub fn simplex(cat: &FiniteCategory, start: ObjId, chain: &[MorId]) -> Simplex {
        let degens: Vec<usize> = (0..chain.len()).filter(|&l| cat.is_identity(chain[l])).collect();
        let rest: Vec<MorId> = chain.iter().copied().filter(|&f| !cat.is_identity(f)).collect();
        Simplex { dim: chain.len(), degens, base: Nerve::key(start, &rest) }
    }

    /// `d_i` of a composable chain, before canonicalization.
    pub fn face_chain(cat: &FiniteCategory, start: ObjId, chain: &[MorId], i: usize) -> (ObjId, Vec<MorId>) {
        let q = chain.len();
        if i == 0 {
            (cat.cod(chain[0]), chain[1..].to_vec())
        } else if i == q {
            (start, chain[..q - 1].to_vec())
        } else {
            let mut out = chain[..i - 1].to_vec();
            out.push(cat.compose(chain[i], chain[i - 1]).expect("composable chain"));
            out.extend_from_slice(&chain[i + 1..]);
            (start, out)
        }
    }

    /// The last object of a chain.
    pub fn end(cat: &FiniteCategory, start: ObjId, chain: &[MorId]) -> ObjId {
        chain.last().map_or(start, |&f| cat.cod(f))
    }
}

impl SimplicialSet for Nerve {
    fn name(&self) -> String {
        "N I".into()
    }

    fn face_nd(&self, base: &Key, _dim: usize, i: usize) -> Simplex {
        let (start, chain) = Nerve::decode(base);
        let (s, c) = Nerve::face_chain(&self.cat, start, &chain, i);
        Nerve::simplex(&self.cat, s, &c)
    }

    fn nondegenerate(&self, q: usize) -> Option<Vec<Key>> {
        let cat = &self.cat;
        let mut out = Vec::new();
        for start in 0..cat.n_objects() {
            let mut stack: Vec<Vec<MorId>> = vec![Vec::new()];
            while let Some(chain) = stack.pop() {
                if chain.len() == q {
                    out.push(Nerve::key(start, &chain));
                    continue;
                }
                let at = Nerve::end(cat, start, &chain);
                for f in (0..cat.n_morphisms()).rev() {
                    if cat.dom(f) == at && !cat.is_identity(f) {
                        let mut c = chain.clone();
                        c.push(f);
                        stack.push(c);
                    }
                }
            }
        }
        Some(out)
    }

    fn contains(&self, base: &Key, q: usize) -> bool {
        let cat = &self.cat;
        let Key::Seq(s) = base else { return false };
        if s.len() != 2 {
            return false;
        }
        let (start, chain) = Nerve::decode(base);
        if chain.len() != q || start >= cat.n_objects() {
            return false;
        }
        let mut at = start;
        for &f in &chain {
            if f >= cat.n_morphisms() || cat.dom(f) != at || cat.is_identity(f) {
                return false;
            }
            at = cat.cod(f);
        }
        true
    }
}

pub fn nerve(cat: &Arc<FiniteCategory>) -> Space {
    Arc::new(Nerve { cat: cat.clone() })
}
