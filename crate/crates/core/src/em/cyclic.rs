use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::space::EmSpace;
use crate::chain::{Chain, ChainComplex, Key, LinearMap};
use crate::reduct::Reduction;
use crate::simp::subsets;

type Word = Vec<i64>;
// (h, word) in the bar resolution, (h, n) in the small resolution
type BarChain = BTreeMap<(i64, Word), i64>;
type ResChain = BTreeMap<(i64, usize), i64>;

fn add<K: Ord>(d: &mut BTreeMap<K, i64>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    match d.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let e = o.get_mut();
            *e = e.checked_add(c).expect("coefficient overflow");
            if *e == 0 {
                o.remove();
            }
        }
    }
}

fn add_all<K: Ord + Clone>(d: &mut BTreeMap<K, i64>, e: &BTreeMap<K, i64>, s: i64) {
    for (k, c) in e {
        add(d, k.clone(), c * s);
    }
}

/// Comparison between the bar resolution of `Z` over `Z[Z/m]` (`m = 0`
/// for `Z`) and the small periodic resolution, built from the contracting
/// homotopies of both, then descended to coinvariants.
struct CyclicBar {
    m: i64,
    f0: Mutex<HashMap<usize, BarChain>>,
    g0: Mutex<HashMap<Word, ResChain>>,
    h0: Mutex<HashMap<Word, BarChain>>,
}

impl CyclicBar {
    fn op(&self, a: i64, b: i64) -> i64 {
        if self.m == 0 {
            a + b
        } else {
            (a + b).rem_euclid(self.m)
        }
    }

    fn d_bar(&self, h: i64, w: &[i64]) -> BarChain {
        let mut out = BTreeMap::new();
        let n = w.len();
        if n == 0 {
            return out;
        }
        add(&mut out, (self.op(h, w[0]), w[1..].to_vec()), 1);
        for i in 0..n - 1 {
            let v = self.op(w[i], w[i + 1]);
            if v != 0 {
                let mut u = w[..i].to_vec();
                u.push(v);
                u.extend_from_slice(&w[i + 2..]);
                add(&mut out, (h, u), if i % 2 == 0 { -1 } else { 1 });
            }
        }
        add(&mut out, (h, w[..n - 1].to_vec()), if n % 2 == 0 { 1 } else { -1 });
        out
    }

    fn s_bar(&self, h: i64, w: &[i64]) -> BarChain {
        let mut out = BTreeMap::new();
        if h != 0 {
            let mut u = vec![h];
            u.extend_from_slice(w);
            out.insert((0, u), 1);
        }
        out
    }

    fn d_res(&self, h: i64, n: usize) -> ResChain {
        let mut out = BTreeMap::new();
        if n == 0 || (self.m == 0 && n > 1) {
            return out;
        }
        if self.m == 0 || n % 2 == 1 {
            add(&mut out, (self.op(h, 1), n - 1), 1);
            add(&mut out, (h, n - 1), -1);
        } else {
            for j in 0..self.m {
                add(&mut out, (j, n - 1), 1);
            }
        }
        out
    }

    fn k_res(&self, h: i64, n: usize) -> ResChain {
        let mut out = BTreeMap::new();
        if self.m == 0 {
            if n == 0 {
                for j in 0..h {
                    add(&mut out, (j, 1), 1);
                }
                for j in h..0 {
                    add(&mut out, (j, 1), -1);
                }
            }
        } else if n % 2 == 0 {
            for j in 0..h {
                add(&mut out, (j, n + 1), 1);
            }
        } else if h == self.m - 1 {
            add(&mut out, (0, n + 1), 1);
        }
        out
    }

    fn act<K: Ord + Clone>(&self, a: i64, c: &BTreeMap<(i64, K), i64>) -> BTreeMap<(i64, K), i64> {
        let mut out = BTreeMap::new();
        for ((h, x), v) in c {
            add(&mut out, (self.op(a, *h), x.clone()), *v);
        }
        out
    }

    /// The comparison `R → B` on the generator `(0, n)`.
    fn f0(&self, n: usize) -> BarChain {
        if let Some(c) = self.f0.lock().expect("cache").get(&n) {
            return c.clone();
        }
        let mut out = BTreeMap::new();
        if n == 0 {
            out.insert((0, Vec::new()), 1);
        } else {
            for ((h, j), c) in self.d_res(0, n) {
                for ((h2, w), c2) in self.act(h, &self.f0(j)) {
                    add_all(&mut out, &self.s_bar(h2, &w), c * c2);
                }
            }
        }
        self.f0.lock().expect("cache").insert(n, out.clone());
        out
    }

    /// The comparison `B → R` on the generator `(0, w)`.
    fn g0(&self, w: &[i64]) -> ResChain {
        if let Some(c) = self.g0.lock().expect("cache").get(w) {
            return c.clone();
        }
        let mut out = BTreeMap::new();
        if w.is_empty() {
            out.insert((0, 0), 1);
        } else {
            let mut tmp = BTreeMap::new();
            for ((h, ww), c) in self.d_bar(0, w) {
                add_all(&mut tmp, &self.act(h, &self.g0(&ww)), c);
            }
            for ((h, n), c) in tmp {
                add_all(&mut out, &self.k_res(h, n), c);
            }
        }
        self.g0.lock().expect("cache").insert(w.to_vec(), out.clone());
        out
    }

    fn f_chain(&self, c: &ResChain) -> BarChain {
        let mut out = BTreeMap::new();
        for ((h, n), v) in c {
            add_all(&mut out, &self.act(*h, &self.f0(*n)), *v);
        }
        out
    }

    /// A homotopy `1 ≃ f g` on the bar resolution at `(0, w)`.
    fn h0(&self, w: &[i64]) -> BarChain {
        if let Some(c) = self.h0.lock().expect("cache").get(w) {
            return c.clone();
        }
        let mut out = BTreeMap::new();
        if !w.is_empty() {
            let mut x = BTreeMap::new();
            add(&mut x, (0, w.to_vec()), 1);
            add_all(&mut x, &self.f_chain(&self.g0(w)), -1);
            for ((h, ww), c) in self.d_bar(0, w) {
                add_all(&mut x, &self.act(h, &self.h0(&ww)), -c);
            }
            for ((h, ww), c) in x {
                add_all(&mut out, &self.s_bar(h, &ww), c);
            }
        }
        self.h0.lock().expect("cache").insert(w.to_vec(), out.clone());
        out
    }
}

fn down<K: Ord + Clone>(c: &BTreeMap<(i64, K), i64>) -> BTreeMap<K, i64> {
    let mut out = BTreeMap::new();
    for ((_, x), v) in c {
        add(&mut out, x.clone(), *v);
    }
    out
}

/// Translation between cocycle keys of `K(π, 1)` and bar words in one
/// cyclic coordinate of `π`.
#[derive(Clone)]
struct WordCodec {
    m: i64,
    len: usize,
    coord: usize,
}

impl WordCodec {
    fn word(&self, key: &Key, q: usize) -> Word {
        let table = EmSpace::table(key);
        let edges = subsets(q + 1, 2);
        (1..=q).map(|i| table[edges.iter().position(|e| e[0] == i - 1 && e[1] == i).unwrap()][self.coord]).collect()
    }

    fn key(&self, w: &[i64]) -> Key {
        let q = w.len();
        let table: Vec<Vec<i64>> = subsets(q + 1, 2)
            .iter()
            .map(|e| {
                let s: i64 = w[e[0]..e[1]].iter().sum();
                let mut v = vec![0; self.len];
                v[self.coord] = if self.m == 0 { s } else { s.rem_euclid(self.m) };
                v
            })
            .collect();
        EmSpace::key(&table)
    }
}

/// The small complex `Z ←0 Z ←m Z ←0 ⋯` of `Z/m` (`Z ←0 Z` for `m = 0`),
/// one generator `n` in each degree `n`.
pub fn small_cyclic_complex(m: i64) -> ChainComplex {
    let d = LinearMap::new(-1, move |k, n| {
        if m != 0 && n > 0 && n % 2 == 0 {
            Chain::term(Key::int(n - 1), n - 1, m)
        } else {
            let _ = k;
            Chain::zero(n - 1)
        }
    });
    let top = move |n: isize| n >= 0 && (m != 0 || n <= 1);
    ChainComplex::builder(if m == 0 { "C(Z)".to_string() } else { format!("C(Z/{m})") }, d)
        .basis(move |n| if top(n) { vec![Key::int(n)] } else { Vec::new() })
        .contains(move |k, n| top(n) && *k == Key::int(n))
        .build()
}

/// `C(K(π, 1)) ⇒` the small cyclic complex, for `π` with a single
/// nontrivial coordinate `coord` of order `m` (`0` for `Z`) among `len`.
pub fn cyclic_reduction(top: &ChainComplex, m: i64, len: usize, coord: usize) -> Reduction {
    let bar = Arc::new(CyclicBar { m, f0: Mutex::default(), g0: Mutex::default(), h0: Mutex::default() });
    let codec = WordCodec { m, len, coord };
    let bottom = small_cyclic_complex(m);
    let (b1, c1) = (bar.clone(), codec.clone());
    let alpha = LinearMap::new(0, move |k, n| {
        let w = c1.word(k, n as usize);
        Chain::from_terms(n, down(&b1.g0(&w)).into_iter().map(|(j, v)| (Key::int(j as i64), v)))
    });
    let (b2, c2) = (bar.clone(), codec.clone());
    let beta = LinearMap::new(0, move |k, n| {
        let j = k.as_int() as usize;
        Chain::from_terms(n, down(&b2.f0(j)).into_iter().map(|(w, v)| (c2.key(&w), v)))
    });
    let (b3, c3) = (bar, codec);
    let eta0 = LinearMap::new(1, move |k, n| {
        let w = c3.word(k, n as usize);
        Chain::from_terms(n + 1, down(&b3.h0(&w)).into_iter().map(|(w, v)| (c3.key(&w), v)))
    });
    let pi = LinearMap::identity().sub(&beta.compose(&alpha)).memoized();
    let eta1 = pi.compose(&eta0).compose(&pi).memoized();
    let eta = eta1.compose(top.differential()).compose(&eta1);
    Reduction::new(top.clone(), bottom, alpha.memoized(), beta.memoized(), eta).memoized()
}
