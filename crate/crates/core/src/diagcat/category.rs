use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category with an explicit composition table.
///
/// Morphism ids are indices into [`FiniteCategory::morphisms`]; identities
/// are ordinary morphisms flagged in [`FiniteCategory::identity`].
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    // comp[g * n + f] = g ∘ f when cod f = dom g
    comp: Vec<Option<MorId>>,
}

/// Category JSON: `{"objects": [...], "morphisms": [{"name","dom","cod"}...],
/// "compose": [["g","f","gf"]...]}`. Identities are added automatically
/// and need not be listed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

impl FiniteCategory {
    /// Builds a category from non-identity morphisms and the composition
    /// table `(g, f, g∘f)`, then audits associativity and unit laws.
    ///
    /// In the table `g` and `f` index the given `morphisms`, while `g∘f` is
    /// a full morphism id: ids `0..objects.len()` are the identities and the
    /// given morphisms follow.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        compose: &[(MorId, MorId, MorId)],
    ) -> Result<Self> {
        let n_obj = objects.len();
        let mut mors: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism { name: format!("id_{o}"), dom: i, cod: i })
            .collect();
        let identities: Vec<MorId> = (0..n_obj).collect();
        for (name, dom, cod) in morphisms {
            if dom >= n_obj || cod >= n_obj {
                return Err(Error::audit("objects", format!("morphism {name} has unknown endpoint")));
            }
            mors.push(Morphism { name, dom, cod });
        }
        let n = mors.len();
        let mut comp = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if mors[f].cod != mors[g].dom {
                    continue;
                }
                if g < n_obj {
                    comp[g * n + f] = Some(f);
                } else if f < n_obj {
                    comp[g * n + f] = Some(g);
                }
            }
        }
        for &(g, f, gf) in compose {
            // shift past the identities
            let (g, f, gf) = (g + n_obj, f + n_obj, gf);
            if g >= n || f >= n || gf >= n {
                return Err(Error::audit("composition", "composite refers to unknown morphism"));
            }
            if mors[f].cod != mors[g].dom {
                return Err(Error::audit(
                    "composition",
                    format!("{} ∘ {} listed but not composable", mors[g].name, mors[f].name),
                ));
            }
            let slot = &mut comp[g * n + f];
            if let Some(prev) = *slot {
                if prev != gf {
                    return Err(Error::audit(
                        "composition",
                        format!("{} ∘ {} listed twice with different results", mors[g].name, mors[f].name),
                    ));
                }
            }
            *slot = Some(gf);
        }
        let cat = FiniteCategory { objects, morphisms: mors, identities, comp };
        cat.audit()?;
        Ok(cat)
    }

    /// Like [`FiniteCategory::new`] but with composites given as morphism ids
    /// that already include the identities (used by generated categories).
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        comp: Vec<Option<MorId>>,
    ) -> Result<Self> {
        let cat = FiniteCategory { objects, morphisms, identities, comp };
        cat.audit()?;
        Ok(cat)
    }

    pub fn from_spec(spec: &CategorySpec) -> Result<Self> {
        let obj_idx: HashMap<&str, usize> =
            spec.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_idx.len() != spec.objects.len() {
            return Err(Error::Parse("duplicate object name".into()));
        }
        let obj = |name: &str| {
            obj_idx.get(name).copied().ok_or_else(|| Error::Parse(format!("unknown object {name}")))
        };
        let mut mors = Vec::new();
        let mut mor_idx: HashMap<String, usize> = HashMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            mor_idx.insert(format!("id_{o}"), usize::MAX - i);
        }
        for m in &spec.morphisms {
            if mor_idx.insert(m.name.clone(), mors.len()).is_some() {
                return Err(Error::Parse(format!("duplicate morphism name {}", m.name)));
            }
            mors.push((m.name.clone(), obj(&m.dom)?, obj(&m.cod)?));
        }
        let n_obj = spec.objects.len();
        let mut triples = Vec::new();
        for [g, f, gf] in &spec.compose {
            let look = |name: &str| -> Result<Option<usize>> {
                match mor_idx.get(name) {
                    None => Err(Error::Parse(format!("unknown morphism {name}"))),
                    Some(&i) if i >= usize::MAX - n_obj => Ok(None),
                    Some(&i) => Ok(Some(i)),
                }
            };
            let (gi, fi) = (look(g)?, look(f)?);
            let gfi = match mor_idx.get(gf.as_str()) {
                None => return Err(Error::Parse(format!("unknown morphism {gf}"))),
                Some(&i) if i >= usize::MAX - n_obj => usize::MAX - i,
                Some(&i) => i + n_obj,
            };
            // composites with an identity are implied
            if let (Some(gi), Some(fi)) = (gi, fi) {
                triples.push((gi, fi, gfi));
            }
        }
        FiniteCategory::new(spec.objects.clone(), mors, &triples)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CategorySpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        FiniteCategory::from_spec(&spec)
    }

    pub fn to_spec(&self) -> CategorySpec {
        let nonid: Vec<MorId> = (0..self.morphisms.len()).filter(|&m| !self.is_identity(m)).collect();
        let mut compose = Vec::new();
        for &g in &nonid {
            for &f in &nonid {
                if let Some(gf) = self.compose(g, f) {
                    compose.push([
                        self.morphisms[g].name.clone(),
                        self.morphisms[f].name.clone(),
                        if self.is_identity(gf) {
                            format!("id_{}", self.objects[self.dom(gf)])
                        } else {
                            self.morphisms[gf].name.clone()
                        },
                    ]);
                }
            }
        }
        CategorySpec {
            objects: self.objects.clone(),
            morphisms: nonid
                .iter()
                .map(|&m| MorphismSpec {
                    name: self.morphisms[m].name.clone(),
                    dom: self.objects[self.morphisms[m].dom].clone(),
                    cod: self.objects[self.morphisms[m].cod].clone(),
                })
                .collect(),
            compose,
        }
    }

    /// Checks that every composable pair has a composite with the right
    /// endpoints, that identities are units, and that composition is
    /// associative. The error names the violating triple.
    pub fn audit(&self) -> Result<()> {
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.morphisms[f].cod == self.morphisms[g].dom;
                match (composable, self.comp[g * n + f]) {
                    (true, None) => {
                        return Err(Error::audit(
                            "composition",
                            format!("missing composite {} ∘ {}", self.name(g), self.name(f)),
                        ))
                    }
                    (false, Some(_)) => {
                        return Err(Error::audit(
                            "composition",
                            format!("composite of non-composable {} ∘ {}", self.name(g), self.name(f)),
                        ))
                    }
                    (true, Some(gf)) => {
                        if self.dom(gf) != self.dom(f) || self.cod(gf) != self.cod(g) {
                            return Err(Error::audit(
                                "composition",
                                format!("{} ∘ {} = {} has wrong endpoints", self.name(g), self.name(f), self.name(gf)),
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            let (a, b) = (self.dom(f), self.cod(f));
            if self.comp[f * n + self.identities[a]] != Some(f) || self.comp[self.identities[b] * n + f] != Some(f) {
                return Err(Error::audit("unit", format!("identity law fails for {}", self.name(f))));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.comp[g * n + f] else { continue };
                for h in 0..n {
                    let Some(hg) = self.comp[h * n + g] else { continue };
                    if self.comp[h * n + gf] != self.comp[hg * n + f] {
                        return Err(Error::audit(
                            "associativity",
                            format!("({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})", h = self.name(h), g = self.name(g), f = self.name(f)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        FiniteCategory::new(vec!["*".into()], vec![], &[]).expect("terminal category")
    }

    /// The one-object category of a finite group.
    pub fn from_group(group: &super::FiniteGroup) -> Self {
        let n = group.order();
        let e = group.identity();
        // morphism ids are group elements, with the identity moved to slot 0
        let to_mor = |g: usize| if g == e { 0 } else if g < e { g + 1 } else { g };
        let mut order: Vec<usize> = vec![e];
        order.extend((0..n).filter(|&g| g != e));
        let morphisms = order
            .iter()
            .map(|&g| Morphism { name: group.name(g).to_string(), dom: 0, cod: 0 })
            .collect();
        let mut comp = vec![None; n * n];
        for &g in &order {
            for &f in &order {
                comp[to_mor(g) * n + to_mor(f)] = Some(to_mor(group.mul(g, f)));
            }
        }
        FiniteCategory::from_parts(vec!["*".into()], morphisms, vec![0], comp)
            .expect("group category is a category")
    }

    /// The pushout shape `a ← c → b`.
    pub fn span() -> Self {
        FiniteCategory::new(
            vec!["a".into(), "c".into(), "b".into()],
            vec![("l".into(), 1, 0), ("r".into(), 1, 2)],
            &[],
        )
        .expect("span category")
    }

    /// The poset `0 → 1 → ... → n`.
    pub fn linear_order(n: usize) -> Self {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut mors = Vec::new();
        let mut id_of = HashMap::new();
        for i in 0..=n {
            for j in i + 1..=n {
                id_of.insert((i, j), mors.len());
                mors.push((format!("{i}<{j}"), i, j));
            }
        }
        let mut triples = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    triples.push((id_of[&(j, k)], id_of[&(i, j)], id_of[&(i, k)] + n + 1));
                }
            }
        }
        FiniteCategory::new(objects, mors, &triples).expect("linear order")
    }

    pub fn opposite(&self) -> Self {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), dom: m.cod, cod: m.dom })
            .collect();
        let mut comp = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                comp[g * n + f] = self.comp[f * n + g];
            }
        }
        FiniteCategory { objects: self.objects.clone(), morphisms, identities: self.identities.clone(), comp }
    }

    /// Product category; object `(i, j)` has id `i * |J| + j`, morphism
    /// `(f, g)` has id `f * |J_mor| + g`.
    pub fn product(&self, other: &FiniteCategory) -> Self {
        let (no, mo) = (other.objects.len(), other.morphisms.len());
        let mut objects = Vec::new();
        for a in &self.objects {
            for b in &other.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let mut morphisms = Vec::new();
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    name: format!("({},{})", f.name, g.name),
                    dom: f.dom * no + g.dom,
                    cod: f.cod * no + g.cod,
                });
            }
        }
        let n = morphisms.len();
        let mut comp = vec![None; n * n];
        for f1 in 0..self.morphisms.len() {
            for g1 in 0..self.morphisms.len() {
                let Some(c1) = self.compose(g1, f1) else { continue };
                for f2 in 0..mo {
                    for g2 in 0..mo {
                        if let Some(c2) = other.compose(g2, f2) {
                            comp[(g1 * mo + g2) * n + f1 * mo + f2] = Some(c1 * mo + c2);
                        }
                    }
                }
            }
        }
        let identities = (0..self.objects.len())
            .flat_map(|i| (0..no).map(move |j| (i, j)))
            .map(|(i, j)| self.identities[i] * mo + other.identities[j])
            .collect();
        FiniteCategory::from_parts(objects, morphisms, identities, comp).expect("product category")
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, i: ObjId) -> &str {
        &self.objects[i]
    }

    pub fn name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn identity(&self, i: ObjId) -> MorId {
        self.identities[i]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.dom(f)] == f
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g * self.morphisms.len() + f]
    }

    /// Morphisms `a → b` in id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len()).filter(|&f| self.dom(f) == a && self.cod(f) == b).collect()
    }

    /// Composite `f_n ∘ ... ∘ f_1` of a chain given in order `f_1, ..., f_n`;
    /// for an empty chain returns the identity of `start`.
    pub fn compose_chain(&self, start: ObjId, chain: &[MorId]) -> Option<MorId> {
        let mut acc = self.identity(start);
        for &f in chain {
            acc = self.compose(f, acc)?;
        }
        Some(acc)
    }
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}
