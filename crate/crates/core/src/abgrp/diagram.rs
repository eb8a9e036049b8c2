use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::{kernel, AbGroup, FeGroup, GroupSpec, Hom};
use super::IntMatrix;
use crate::diagcat::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// JSON form of a coefficient diagram: `{"constant": group}`,
/// `{"representable": object}`, or per-object groups with matrices (rows)
/// for morphisms. An omitted matrix is the identity between equal groups
/// and zero into or out of the trivial group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FeDiagramSpec {
    Constant { constant: GroupSpec },
    Representable { representable: String },
    Explicit {
        groups: BTreeMap<String, GroupSpec>,
        #[serde(default)]
        maps: BTreeMap<String, Vec<Vec<i64>>>,
    },
}

/// A functor from a finite category to finitely generated abelian groups.
#[derive(Clone, Debug)]
pub struct FeDiagram {
    category: FiniteCategory,
    groups: Vec<AbGroup>,
    maps: Vec<Hom>,
}

impl FeDiagram {
    /// Checks that identities go to identities and composites to composites.
    pub fn new(category: FiniteCategory, groups: Vec<AbGroup>, maps: Vec<Hom>) -> Result<Self> {
        if groups.len() != category.n_objects() || maps.len() != category.n_morphisms() {
            return Err(Error::Dimension("diagram data does not match its index category".into()));
        }
        for (f, m) in maps.iter().enumerate() {
            if m.domain() != &groups[category.dom(f)] || m.codomain() != &groups[category.cod(f)] {
                return Err(Error::audit("functoriality", format!("{} has the wrong endpoints", category.name(f))));
            }
            if category.is_identity(f) && *m != Hom::identity(m.domain()) {
                return Err(Error::audit("functoriality", format!("{} is not sent to the identity", category.name(f))));
            }
        }
        for f in 0..category.n_morphisms() {
            for g in 0..category.n_morphisms() {
                if let Some(gf) = category.compose(g, f) {
                    if maps[g].compose(&maps[f])? != maps[gf] {
                        return Err(Error::audit(
                            "functoriality",
                            format!("{} ∘ {}", category.name(g), category.name(f)),
                        ));
                    }
                }
            }
        }
        Ok(FeDiagram { category, groups, maps })
    }

    /// Builds a diagram from integer matrices for the non-identity
    /// morphisms, in morphism id order.
    pub fn from_matrices(
        category: FiniteCategory,
        groups: Vec<AbGroup>,
        matrices: impl Fn(MorId) -> IntMatrix,
    ) -> Result<Self> {
        let mut maps = Vec::with_capacity(category.n_morphisms());
        for f in 0..category.n_morphisms() {
            let (a, b) = (&groups[category.dom(f)], &groups[category.cod(f)]);
            let m = if category.is_identity(f) { IntMatrix::identity(a.len()) } else { matrices(f) };
            maps.push(Hom::new(a.clone(), b.clone(), m)?);
        }
        FeDiagram::new(category, groups, maps)
    }

    /// Constant diagram with identity maps.
    pub fn constant(category: &FiniteCategory, group: &AbGroup) -> Self {
        let groups = vec![group.clone(); category.n_objects()];
        let maps = vec![Hom::identity(group); category.n_morphisms()];
        FeDiagram::new(category.clone(), groups, maps).expect("constant diagram is functorial")
    }

    /// `j ↦ Z·I(i, j)`, the linearized representable functor at `i`.
    pub fn representable(category: &FiniteCategory, i: ObjId) -> Result<Self> {
        let homs: Vec<Vec<MorId>> = (0..category.n_objects()).map(|j| category.hom(i, j)).collect();
        let groups = homs.iter().map(|h| AbGroup::free(h.len())).collect();
        FeDiagram::from_matrices(category.clone(), groups, |f| {
            let (a, b) = (&homs[category.dom(f)], &homs[category.cod(f)]);
            let mut m = vec![vec![0i64; a.len()]; b.len()];
            for (col, &g) in a.iter().enumerate() {
                let fg = category.compose(f, g).expect("composable");
                m[b.iter().position(|&h| h == fg).expect("hom set closed")][col] = 1;
            }
            IntMatrix::from_rows(&m)
        })
    }

    /// Builds a diagram over `category` from its JSON form.
    pub fn from_spec(category: &FiniteCategory, spec: &FeDiagramSpec) -> Result<Self> {
        match spec {
            FeDiagramSpec::Constant { constant } => Ok(FeDiagram::constant(category, &constant.to_group()?)),
            FeDiagramSpec::Representable { representable } => {
                let i = category
                    .object_by_name(representable)
                    .ok_or_else(|| Error::Parse(format!("unknown object {representable}")))?;
                FeDiagram::representable(category, i)
            }
            FeDiagramSpec::Explicit { groups, maps } => {
                let mut gs = Vec::with_capacity(category.n_objects());
                for name in category.objects() {
                    let g = groups.get(name).ok_or_else(|| Error::Parse(format!("no group for object {name}")))?;
                    gs.push(g.to_group()?);
                }
                for name in maps.keys() {
                    if category.morphism_by_name(name).is_none() {
                        return Err(Error::Parse(format!("unknown morphism {name}")));
                    }
                }
                let mut matrices = Vec::with_capacity(category.n_morphisms());
                for f in 0..category.n_morphisms() {
                    let (a, b) = (&gs[category.dom(f)], &gs[category.cod(f)]);
                    let m = match maps.get(category.name(f)) {
                        Some(rows) => {
                            if rows.len() != b.len() || rows.iter().any(|r| r.len() != a.len()) {
                                return Err(Error::Parse(format!("matrix of {} has the wrong shape", category.name(f))));
                            }
                            IntMatrix::from_rows(rows)
                        }
                        None if a.is_empty() || b.is_empty() => IntMatrix::zeros(b.len(), a.len()),
                        None if a == b => IntMatrix::identity(a.len()),
                        None => return Err(Error::Parse(format!("no matrix for {}", category.name(f)))),
                    };
                    matrices.push(m);
                }
                FeDiagram::from_matrices(category.clone(), gs, |f| matrices[f].clone())
            }
        }
    }

    pub fn zero(category: &FiniteCategory) -> Self {
        FeDiagram::constant(category, &AbGroup::trivial())
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn group(&self, i: ObjId) -> &AbGroup {
        &self.groups[i]
    }

    pub fn map(&self, f: MorId) -> &Hom {
        &self.maps[f]
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(AbGroup::is_trivial)
    }
}

/// The group of natural transformations `π → ρ`, realised as the kernel of
/// the naturality map on `∏_i Hom(π(i), ρ(i))`.
#[derive(Clone, Debug)]
pub struct HomDiagram {
    pi: FeDiagram,
    rho: FeDiagram,
    // start of the block for object i in the ambient vector
    offsets: Vec<usize>,
    ambient: AbGroup,
    kernel: FeGroup,
}

impl HomDiagram {
    /// The group `Hom(π, ρ)` in canonical form.
    pub fn group(&self) -> &AbGroup {
        self.kernel.group()
    }

    /// The subquotient presentation inside `∏_i Hom(π(i), ρ(i))`.
    pub fn fe_group(&self) -> &FeGroup {
        &self.kernel
    }

    /// Per-object homomorphisms of the natural transformation with the
    /// given coordinates.
    pub fn decode(&self, z: &[BigInt]) -> Vec<Hom> {
        let v = self.kernel.represent(z);
        self.unpack(&v)
    }

    /// Per-object homomorphisms of the `k`-th canonical generator.
    pub fn generator(&self, k: usize) -> Vec<Hom> {
        self.unpack(self.kernel.generator(k))
    }

    /// Coordinates of a family of per-object matrices, or `None` if it is
    /// not a natural transformation.
    pub fn decide(&self, family: &[IntMatrix]) -> Option<Vec<BigInt>> {
        let mut v = Vec::with_capacity(self.ambient.len());
        for (i, m) in family.iter().enumerate() {
            let (rows, cols) = (self.rho.groups[i].len(), self.pi.groups[i].len());
            if m.rows() != rows || m.cols() != cols {
                return None;
            }
            for b in 0..rows {
                for a in 0..cols {
                    v.push(m[(b, a)].clone());
                }
            }
        }
        self.kernel.decide(&self.ambient.reduce(&v))
    }

    fn unpack(&self, v: &[BigInt]) -> Vec<Hom> {
        (0..self.pi.groups.len())
            .map(|i| {
                let (rows, cols) = (self.rho.groups[i].len(), self.pi.groups[i].len());
                let mut m = IntMatrix::zeros(rows, cols);
                for b in 0..rows {
                    for a in 0..cols {
                        m[(b, a)] = v[self.offsets[i] + b * cols + a].clone();
                    }
                }
                Hom::new(self.pi.groups[i].clone(), self.rho.groups[i].clone(), m)
                    .expect("kernel elements are well-defined homomorphisms")
            })
            .collect()
    }
}

/// `Hom(π, ρ)` for two diagrams over the same finite category.
///
/// The ambient group holds one entry per pair of generators `(b, a)` of
/// `(ρ(i), π(i))`, with the order of `ρ(i)`'s generator `b`. The constraint
/// map sends a family `g` to the well-definedness defects `q_a · g(i)e_a`
/// and the naturality defects `ρ(f)g(i) − g(i')π(f)`.
pub fn hom_diagram(pi: &FeDiagram, rho: &FeDiagram) -> Result<HomDiagram> {
    if pi.category != rho.category {
        return Err(Error::Dimension("diagrams over different categories".into()));
    }
    let cat = &pi.category;
    let mut offsets = Vec::new();
    let mut orders = Vec::new();
    for i in 0..cat.n_objects() {
        offsets.push(orders.len());
        for b in rho.groups[i].orders() {
            for _ in 0..pi.groups[i].len() {
                orders.push(b.clone());
            }
        }
    }
    let ambient = AbGroup::new(orders);
    let n = ambient.len();
    // constraint rows, each with its target order
    let mut target_orders: Vec<BigInt> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let entry = |i: usize, b: usize, a: usize| offsets[i] + b * pi.groups[i].len() + a;
    for i in 0..cat.n_objects() {
        let (p, r) = (&pi.groups[i], &rho.groups[i]);
        for (a, qa) in p.orders().iter().enumerate() {
            if qa.is_zero() {
                continue;
            }
            for (b, rb) in r.orders().iter().enumerate() {
                let mut row = vec![BigInt::zero(); n];
                row[entry(i, b, a)] = qa.clone();
                rows.push(row);
                target_orders.push(rb.clone());
            }
        }
    }
    for f in 0..cat.n_morphisms() {
        if cat.is_identity(f) {
            continue;
        }
        let (i, j) = (cat.dom(f), cat.cod(f));
        let (rf, pf) = (rho.maps[f].matrix(), pi.maps[f].matrix());
        for a in 0..pi.groups[i].len() {
            for (b2, rb2) in rho.groups[j].orders().iter().enumerate() {
                let mut row = vec![BigInt::zero(); n];
                // (ρ(f) g(i))[b2][a] = Σ_b ρ(f)[b2][b] g(i)[b][a]
                for b in 0..rho.groups[i].len() {
                    row[entry(i, b, a)] += &rf[(b2, b)];
                }
                // (g(j) π(f))[b2][a] = Σ_a2 g(j)[b2][a2] π(f)[a2][a]
                for a2 in 0..pi.groups[j].len() {
                    row[entry(j, b2, a2)] -= &pf[(a2, a)];
                }
                rows.push(row);
                target_orders.push(rb2.clone());
            }
        }
    }
    let target = AbGroup::new(target_orders);
    let m = IntMatrix::from_big_rows(rows.len(), n, rows);
    let constraint = Hom::new(ambient.clone(), target, m)?;
    let (k, _) = kernel(&constraint);
    Ok(HomDiagram { pi: pi.clone(), rho: rho.clone(), offsets, ambient, kernel: k })
}
