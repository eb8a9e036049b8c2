use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{integer_kernel, lattice_basis, smith_normal_form, LatticeSolver};
use super::IntMatrix;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z/q_1 + ... + Z/q_r` with `q_i = 0`
/// standing for `Z`.
///
/// Any list of orders is accepted (including 1); [`AbGroup::canonical`]
/// gives the invariant-factor normal form: torsion factors `d_1 | d_2 | ...`
/// all at least 2, followed by the free generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    orders: Vec<BigInt>,
}

impl AbGroup {
    pub fn new(orders: Vec<BigInt>) -> Self {
        assert!(orders.iter().all(|q| !q.is_negative()), "orders must be nonnegative");
        AbGroup { orders }
    }

    pub fn from_orders(orders: &[u64]) -> Self {
        AbGroup::new(orders.iter().map(|&q| BigInt::from(q)).collect())
    }

    pub fn trivial() -> Self {
        AbGroup { orders: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { orders: vec![BigInt::zero(); rank] }
    }

    pub fn cyclic(q: u64) -> Self {
        AbGroup::from_orders(&[q])
    }

    /// Builds the canonical group with the given torsion and free rank.
    pub fn from_invariants(torsion: &[u64], free_rank: usize) -> Self {
        let mut orders: Vec<BigInt> = torsion.iter().map(|&q| BigInt::from(q)).collect();
        orders.extend(std::iter::repeat(BigInt::zero()).take(free_rank));
        AbGroup::new(orders).canonical()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Number of cyclic generators in this decomposition.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.canonical().orders.iter().filter(|q| q.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.canonical().orders.into_iter().filter(|q| !q.is_zero()).collect()
    }

    /// True when the group is zero.
    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(One::is_one)
    }

    pub fn is_canonical(&self) -> bool {
        let tors: Vec<&BigInt> = self.orders.iter().take_while(|q| !q.is_zero()).collect();
        let free_ok = self.orders[tors.len()..].iter().all(Zero::is_zero);
        let tors_ok = tors.iter().all(|q| **q >= BigInt::from(2))
            && tors.windows(2).all(|w| w[1].is_multiple_of(w[0]));
        free_ok && tors_ok
    }

    /// Invariant-factor normal form.
    pub fn canonical(&self) -> AbGroup {
        if self.is_canonical() {
            return self.clone();
        }
        let snf = smith_normal_form(&IntMatrix::diagonal(&self.orders));
        let mut orders: Vec<BigInt> =
            snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        orders.extend(std::iter::repeat(BigInt::zero()).take(self.orders.len() - snf.rank()));
        AbGroup { orders }
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut n = BigInt::one();
        for q in &self.orders {
            if q.is_zero() {
                return None;
            }
            n *= q;
        }
        Some(n)
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        AbGroup { orders }
    }

    pub fn direct_sum_all<'a>(groups: impl IntoIterator<Item = &'a AbGroup>) -> AbGroup {
        let mut orders = Vec::new();
        for g in groups {
            orders.extend(g.orders.iter().cloned());
        }
        AbGroup { orders }
    }

    /// Reduces an element vector into the standard representatives `[0, q)`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.orders.len(), "element length mismatch");
        x.iter()
            .zip(&self.orders)
            .map(|(v, q)| if q.is_zero() { v.clone() } else { v.mod_floor(q) })
            .collect()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.orders.len()]
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn is_zero_element(&self, a: &[BigInt]) -> bool {
        self.reduce(a).iter().all(Zero::is_zero)
    }

    /// All elements, for finite groups of manageable size.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let mut out = vec![vec![]];
        for q in &self.orders {
            if q.is_zero() {
                return None;
            }
            let q: u64 = q.try_into().ok()?;
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for e in &out {
                for v in 0..q {
                    let mut e2 = e.clone();
                    e2.push(BigInt::from(v));
                    next.push(e2);
                }
            }
            out = next;
        }
        Some(out)
    }

    pub fn to_spec(&self) -> GroupSpec {
        let c = self.canonical();
        GroupSpec {
            free_rank: c.orders.iter().filter(|q| q.is_zero()).count(),
            torsion: c.orders.iter().filter(|q| !q.is_zero()).map(|q| q.to_string()).collect(),
        }
    }
}

impl fmt::Display for AbGroup {
    /// Canonical printing: free part first, then torsion by divisibility,
    /// e.g. `Z^2 + Z/2 + Z/6`; the zero group prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let free = c.orders.iter().filter(|q| q.is_zero()).count();
        let mut parts = Vec::new();
        match free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for q in c.orders.iter().filter(|q| !q.is_zero()) {
            parts.push(format!("Z/{q}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// JSON form `{"free_rank": r, "torsion": [q, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<String>,
}

mod torsion_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &[String], s: S) -> Result<S::Ok, S::Error> {
        let nums: Option<Vec<u64>> = t.iter().map(|x| x.parse().ok()).collect();
        match nums {
            Some(n) => s.collect_seq(n),
            None => s.collect_seq(t),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|x| match x {
                serde_json::Value::Number(n) => Ok(n.to_string()),
                serde_json::Value::String(s) => Ok(s),
                _ => Err(serde::de::Error::custom("torsion entries must be integers")),
            })
            .collect()
    }
}

impl GroupSpec {
    pub fn to_group(&self) -> Result<AbGroup> {
        let mut orders = Vec::new();
        for t in &self.torsion {
            let q: BigInt = t.parse().map_err(|_| Error::Parse(format!("bad torsion order {t}")))?;
            if q < BigInt::from(2) {
                return Err(Error::Parse(format!("torsion order must be at least 2, got {q}")));
            }
            orders.push(q);
        }
        orders.extend(std::iter::repeat(BigInt::zero()).take(self.free_rank));
        Ok(AbGroup::new(orders))
    }
}

/// A homomorphism between cyclic decompositions, given by the images of
/// domain generators as matrix columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    domain: AbGroup,
    codomain: AbGroup,
    matrix: IntMatrix,
}

impl Hom {
    /// Checks well-definedness and reduces columns modulo the codomain orders.
    pub fn new(domain: AbGroup, codomain: AbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.len() || matrix.cols() != domain.len() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.len(),
                domain.len()
            )));
        }
        let mut m = matrix;
        for i in 0..m.rows() {
            let q = &codomain.orders[i];
            if !q.is_zero() {
                for j in 0..m.cols() {
                    let v = m[(i, j)].mod_floor(q);
                    m[(i, j)] = v;
                }
            }
        }
        for (j, qj) in domain.orders.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            let col: Vec<BigInt> = m.column(j).into_iter().map(|x| x * qj).collect();
            if !codomain.is_zero_element(&col) {
                return Err(Error::IllDefined(format!(
                    "generator {j} has order {qj} but its image does not"
                )));
            }
        }
        Ok(Hom { domain, codomain, matrix: m })
    }

    pub fn identity(g: &AbGroup) -> Self {
        Hom::new(g.clone(), g.clone(), IntMatrix::identity(g.len())).expect("identity is well-defined")
    }

    pub fn zero(domain: &AbGroup, codomain: &AbGroup) -> Self {
        Hom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.len(), domain.len()),
        }
    }

    pub fn domain(&self) -> &AbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.codomain.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Hom) -> Result<Hom> {
        if other.codomain != self.domain {
            return Err(Error::Dimension("composing homomorphisms with mismatched groups".into()));
        }
        Hom::new(other.domain.clone(), self.codomain.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// A fully effective abelian group realised as a subquotient `L / M` of an
/// ambient cyclic decomposition, where `M` contains the ambient relations.
///
/// Elements are represented by ambient vectors; [`FeGroup::decide`] is the
/// decision algorithm returning canonical coordinates `0 <= z_i < q_i`.
#[derive(Clone, Debug)]
pub struct FeGroup {
    group: AbGroup,
    ambient: AbGroup,
    gens: Vec<Vec<BigInt>>,
    lattice: LatticeSolver,
    // rows of U_R for the kept (non-unit) factors
    coords: IntMatrix,
}

impl FeGroup {
    /// Subquotient of `ambient`: the subgroup spanned by the columns of
    /// `sub_span` modulo the subgroup spanned by `rel_span` (plus the ambient
    /// relations). `rel_span` must lie inside `sub_span` + ambient relations.
    pub fn subquotient(ambient: &AbGroup, sub_span: &IntMatrix, rel_span: &IntMatrix) -> Result<Self> {
        let n = ambient.len();
        if sub_span.rows() != n || rel_span.rows() != n {
            return Err(Error::Dimension("subquotient spans must live in the ambient group".into()));
        }
        let amb_rel = ambient_relations(ambient);
        let lattice = LatticeSolver::new(lattice_basis(&sub_span.hstack(&amb_rel)));
        let rels = rel_span.hstack(&amb_rel);
        let k = lattice.basis().cols();
        let mut rel_cols = Vec::with_capacity(rels.cols());
        for c in rels.columns() {
            let y = lattice.solve(&c).ok_or_else(|| {
                Error::IllDefined("relation outside the subgroup in subquotient".into())
            })?;
            rel_cols.push(y);
        }
        let r = IntMatrix::from_columns(k, &rel_cols);
        let snf = smith_normal_form(&r);
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        for i in 0..k {
            let d = if i < snf.rank() { snf.s[(i, i)].clone() } else { BigInt::zero() };
            if d.is_one() {
                continue;
            }
            orders.push(d);
            kept.push(i);
        }
        let coords = snf.u.select_rows(&kept);
        let gens = kept
            .iter()
            .map(|&i| ambient.reduce(&lattice.basis().mul_vec(&snf.u_inv.column(i))))
            .collect();
        Ok(FeGroup { group: AbGroup::new(orders), ambient: ambient.clone(), gens, lattice, coords })
    }

    /// The whole ambient group, in canonical form.
    pub fn whole(ambient: &AbGroup) -> Self {
        let n = ambient.len();
        FeGroup::subquotient(ambient, &IntMatrix::identity(n), &IntMatrix::zeros(n, 0))
            .expect("whole group is a valid subquotient")
    }

    /// Canonical group (invariant factors, free part last).
    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn ambient(&self) -> &AbGroup {
        &self.ambient
    }

    /// Ambient representative of the `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> &[BigInt] {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    /// Coordinates of an ambient element, or `None` if it is not in the
    /// subgroup.
    pub fn decide(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.lattice.solve(x)?;
        Some(self.group.reduce(&self.coords.mul_vec(&y)))
    }

    /// Ambient representative of the element with the given coordinates.
    pub fn represent(&self, z: &[BigInt]) -> Vec<BigInt> {
        let mut acc = self.ambient.zero_element();
        for (zi, g) in z.iter().zip(&self.gens) {
            for (a, gi) in acc.iter_mut().zip(g) {
                *a += zi * gi;
            }
        }
        self.ambient.reduce(&acc)
    }

    /// Inclusion of the canonical generators into the ambient group.
    pub fn inclusion(&self) -> Hom {
        let m = IntMatrix::from_columns(self.ambient.len(), &self.gens);
        Hom::new(self.group.clone(), self.ambient.clone(), m).expect("inclusion is well-defined")
    }

    /// Projection `ambient -> group`; only meaningful when the subgroup is
    /// the whole ambient group (cokernels).
    pub fn projection(&self) -> Result<Hom> {
        let n = self.ambient.len();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            cols.push(self.decide(&e).ok_or_else(|| {
                Error::IllDefined("projection from a proper subgroup".into())
            })?);
        }
        Hom::new(self.ambient.clone(), self.group.clone(), IntMatrix::from_columns(self.group.len(), &cols))
    }
}

fn ambient_relations(g: &AbGroup) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = g
        .orders
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| {
            let mut c = vec![BigInt::zero(); g.len()];
            c[i] = q.clone();
            c
        })
        .collect();
    IntMatrix::from_columns(g.len(), &cols)
}

/// Lattice of integer vectors `x` with `M x ≡ 0` modulo the codomain orders.
fn kernel_lattice(f: &Hom) -> IntMatrix {
    let a = f.domain.len();
    let big = f.matrix.hstack(&IntMatrix::diagonal(&f.codomain.orders));
    let ker = integer_kernel(&big);
    let idx: Vec<usize> = (0..a).collect();
    ker.select_rows(&idx)
}

/// Kernel of `f` with its inclusion into the domain.
pub fn kernel(f: &Hom) -> (FeGroup, Hom) {
    let n = f.domain.len();
    let k = FeGroup::subquotient(&f.domain, &kernel_lattice(f), &IntMatrix::zeros(n, 0))
        .expect("kernel lattice contains the domain relations");
    let incl = k.inclusion();
    (k, incl)
}

/// Cokernel of `f` with the projection from the codomain.
pub fn cokernel(f: &Hom) -> (FeGroup, Hom) {
    let n = f.codomain.len();
    let c = FeGroup::subquotient(&f.codomain, &IntMatrix::identity(n), &f.matrix)
        .expect("image lies in the codomain");
    let proj = c.projection().expect("cokernel projection");
    (c, proj)
}

/// Homology `ker(out) / im(inc)` at the middle group of `A --inc--> B --out--> C`.
pub fn homology_at(inc: &Hom, out: &Hom) -> Result<FeGroup> {
    if inc.codomain != out.domain {
        return Err(Error::Dimension("homology_at: maps do not compose".into()));
    }
    FeGroup::subquotient(&out.domain, &kernel_lattice(out), &inc.matrix)
}
