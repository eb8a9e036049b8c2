use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupSpec, OrbitCategory, SpaceDiagram};
use crate::chain::Key;
use crate::error::{Error, Result};
use crate::simp::{FiniteSpace, Simplex, SimplicialMap, SimplicialSet, Space, SpaceSpec};

/// A finite simplicial set with a simplicial action of a finite group,
/// given on nondegenerate simplices.
#[derive(Clone)]
pub struct GSpace {
    space: Space,
    group: FiniteGroup,
    // action[g][x] = g·x on nondegenerate simplices
    action: Vec<HashMap<Key, Key>>,
}

/// G-space JSON: a group, a finite space and, per group element name, the
/// image of each nondegenerate simplex. Simplices not listed are fixed by
/// that element.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSpaceSpec {
    pub group: GroupSpec,
    pub space: SpaceSpec,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

impl GSpace {
    /// `act(g, x, n)` is the image of the nondegenerate `n`-simplex `x`.
    /// The action must be simplicial and satisfy the group laws; both are
    /// checked exhaustively.
    pub fn new(space: Space, group: FiniteGroup, act: impl Fn(usize, &Key, usize) -> Key) -> Result<Self> {
        let top = space
            .dimension()
            .ok_or_else(|| Error::LocalFiniteness(format!("{} is not finite", space.name())))?;
        let mut action = vec![HashMap::new(); group.order()];
        for n in 0..=top {
            for x in space.nondegenerate(n).unwrap_or_default() {
                for (g, table) in action.iter_mut().enumerate() {
                    let y = act(g, &x, n);
                    if !space.contains(&y, n) {
                        return Err(Error::audit("action", format!("{}·{x} = {y} is not an {n}-simplex", group.name(g))));
                    }
                    table.insert(x.clone(), y);
                }
            }
        }
        let out = GSpace { space, group, action };
        out.audit()?;
        Ok(out)
    }

    pub fn from_spec(spec: &GSpaceSpec) -> Result<Self> {
        let group = FiniteGroup::from_spec(&spec.group)?;
        let space: Space = Arc::new(FiniteSpace::from_spec("X", &spec.space)?);
        let mut tables = vec![HashMap::new(); group.order()];
        for (name, table) in &spec.action {
            let g = (0..group.order())
                .find(|&g| group.name(g) == name)
                .ok_or_else(|| Error::Parse(format!("unknown group element {name}")))?;
            for (x, y) in table {
                tables[g].insert(Key::str(x), Key::str(y));
            }
        }
        GSpace::new(space, group, |g, x, _| tables[g].get(x).cloned().unwrap_or_else(|| x.clone()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GSpaceSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        GSpace::from_spec(&spec)
    }

    /// The trivial action.
    pub fn trivial(space: Space, group: FiniteGroup) -> Result<Self> {
        GSpace::new(space, group, |_, x, _| x.clone())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `g·x` for any simplex.
    pub fn act(&self, g: usize, x: &Simplex) -> Simplex {
        Simplex { base: self.action[g][&x.base].clone(), ..x.clone() }
    }

    fn audit(&self) -> Result<()> {
        let x = &self.space;
        let g = &self.group;
        let top = x.dimension().unwrap_or(0);
        for n in 0..=top {
            for b in x.nondegenerate(n).unwrap_or_default() {
                let s = Simplex::nondegenerate(b.clone(), n);
                if self.act(g.identity(), &s) != s {
                    return Err(Error::audit("action", format!("identity moves {b}")));
                }
                for a in 0..g.order() {
                    let as_ = self.act(a, &s);
                    for c in 0..g.order() {
                        if self.act(c, &as_) != self.act(g.mul(c, a), &s) {
                            return Err(Error::audit(
                                "action",
                                format!("{}·({}·{b}) ≠ ({}{})·{b}", g.name(c), g.name(a), g.name(c), g.name(a)),
                            ));
                        }
                    }
                    for i in 0..=n {
                        if n == 0 {
                            break;
                        }
                        if self.act(a, &s.face(x.as_ref(), i)) != as_.face(x.as_ref(), i) {
                            return Err(Error::audit("simplicial action", format!("{} and d_{i} on {b}", g.name(a))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether every element of `h` fixes the nondegenerate simplex `x`.
    pub fn is_fixed(&self, h: &[usize], x: &Key) -> bool {
        h.iter().all(|&a| self.action[a][x] == *x)
    }

    /// The fixed-point diagram `G/H ↦ X^H` over the opposite orbit
    /// category. A morphism `gH ↦ gaK` induces `X^K → X^H, x ↦ a·x`.
    pub fn fixed_points(&self) -> SpaceDiagram {
        let orbit = OrbitCategory::new(&self.group);
        self.fixed_points_over(&orbit)
    }

    pub fn fixed_points_over(&self, orbit: &OrbitCategory) -> SpaceDiagram {
        let cat = Arc::new(orbit.category().opposite());
        let top = self.space.dimension().unwrap_or(0);
        let spaces: Vec<Space> = (0..cat.n_objects())
            .map(|i| {
                let h = orbit.subgroup(i);
                let cells = (0..=top)
                    .map(|n| self.space.nondegenerate(n).unwrap_or_default().into_iter().filter(|x| self.is_fixed(h, x)).collect())
                    .collect();
                Arc::new(SubSpace { name: format!("{}^{}", self.space.name(), cat.object_name(i).trim_start_matches("G/")), parent: self.space.clone(), cells })
                    as Space
            })
            .collect();
        let maps = (0..cat.n_morphisms())
            .map(|f| {
                let a = orbit.representative(f);
                let table = self.action[a].clone();
                SimplicialMap::new(spaces[cat.dom(f)].clone(), spaces[cat.cod(f)].clone(), move |x, n| {
                    Simplex::nondegenerate(table[x].clone(), n)
                })
            })
            .collect();
        SpaceDiagram::new(cat, spaces, maps).expect("fixed points match the orbit category")
    }
}

/// A subcomplex of a simplicial set given by its nondegenerate simplices.
pub struct SubSpace {
    name: String,
    parent: Space,
    cells: Vec<Vec<Key>>,
}

impl SubSpace {
    /// `cells[n]` must be closed under faces in `parent`.
    pub fn new(name: impl Into<String>, parent: Space, cells: Vec<Vec<Key>>) -> Self {
        SubSpace { name: name.into(), parent, cells }
    }
}

impl SimplicialSet for SubSpace {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn face_nd(&self, base: &Key, dim: usize, i: usize) -> Simplex {
        self.parent.face_nd(base, dim, i)
    }

    fn nondegenerate(&self, dim: usize) -> Option<Vec<Key>> {
        Some(self.cells.get(dim).cloned().unwrap_or_default())
    }

    fn contains(&self, base: &Key, dim: usize) -> bool {
        self.cells.get(dim).is_some_and(|c| c.contains(base))
    }

    fn dimension(&self) -> Option<usize> {
        Some((0..self.cells.len()).rev().find(|&n| !self.cells[n].is_empty()).unwrap_or(0))
    }
}
