use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::category::{FiniteCategory, MorId, Morphism, ObjId};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Group JSON: `{"elements": [names...], "table": [[...]...]}` where
/// `table[a][b]` is the index of `a·b`. `elements` defaults to `0, 1, ...`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default)]
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::audit("group", "empty multiplication table"));
        }
        if names.len() != n {
            return Err(Error::audit("group", "element names do not match table size"));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::audit("closure", "table is not a square table of element indices"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::audit("identity", "no two-sided identity"))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::audit("inverse", format!("{} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::audit(
                            "associativity",
                            format!("({}·{})·{}", names[a], names[b], names[c]),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity, inverse })
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let names = if spec.elements.is_empty() {
            (0..spec.table.len()).map(|i| i.to_string()).collect()
        } else {
            spec.elements.clone()
        };
        FiniteGroup::new(names, spec.table.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        FiniteGroup::from_spec(&spec)
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec { elements: self.names.clone(), table: self.table.clone() }
    }

    /// The cyclic group `Z/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new((0..n).map(|i| i.to_string()).collect(), table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    fn is_subgroup(&self, s: &BTreeSet<usize>) -> bool {
        s.contains(&self.identity) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    /// All subgroups, ordered by size and then by element indices.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        assert!(n <= 20, "subgroup enumeration is exhaustive and limited to order 20");
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..(1 << n) {
            let s: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if self.is_subgroup(&s) {
                out.push(s.into_iter().collect());
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// The orbit category of a finite group, with the coset data behind each
/// morphism.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    group: FiniteGroup,
    category: FiniteCategory,
    subgroups: Vec<Vec<usize>>,
    // morphism id -> element a with the morphism gH ↦ gaK
    rep: Vec<usize>,
}

impl OrbitCategory {
    /// One object `G/H` per subgroup `H`; morphisms `G/H → G/K` are the
    /// cosets `aK` with `a⁻¹Ha ⊆ K`, acting by `gH ↦ gaK`.
    pub fn new(group: &FiniteGroup) -> Self {
        let subgroups = group.subgroups();
        let n = group.order();
        let label = |h: &Vec<usize>| -> String {
            if h.len() == 1 {
                "G/e".into()
            } else if h.len() == n {
                "G/G".into()
            } else {
                let names: Vec<&str> = h.iter().map(|&a| group.name(a)).collect();
                format!("G/{{{}}}", names.join(","))
            }
        };
        let objects: Vec<String> = subgroups.iter().map(label).collect();
        let coset = |a: usize, k: &Vec<usize>| -> Vec<usize> {
            let mut c: Vec<usize> = k.iter().map(|&x| group.mul(a, x)).collect();
            c.sort_unstable();
            c
        };
        let mut morphisms = Vec::new();
        let mut rep = Vec::new();
        let mut cosets: Vec<(ObjId, ObjId, Vec<usize>)> = Vec::new();
        let mut identities = vec![0; subgroups.len()];
        for (hi, h) in subgroups.iter().enumerate() {
            for (ki, k) in subgroups.iter().enumerate() {
                let mut seen = BTreeSet::new();
                for a in 0..n {
                    let c = coset(a, k);
                    if seen.contains(&c) {
                        continue;
                    }
                    let ainv = group.inv(a);
                    let ok = h.iter().all(|&x| k.contains(&group.mul(group.mul(ainv, x), a)));
                    if !ok {
                        continue;
                    }
                    seen.insert(c.clone());
                    let r = c[0];
                    if hi == ki && c == *k {
                        identities[hi] = morphisms.len();
                    }
                    morphisms.push(Morphism {
                        name: format!("{}->{}:{}", objects[hi], objects[ki], group.name(r)),
                        dom: hi,
                        cod: ki,
                    });
                    rep.push(r);
                    cosets.push((hi, ki, c));
                }
            }
        }
        let m = morphisms.len();
        let mut comp = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if cosets[f].1 != cosets[g].0 {
                    continue;
                }
                // f = aK : G/H → G/K, g = bL : G/K → G/L, g∘f = abL
                let ab = group.mul(rep[f], rep[g]);
                let c = coset(ab, &subgroups[cosets[g].1]);
                let gf = (0..m)
                    .find(|&x| cosets[x].0 == cosets[f].0 && cosets[x].1 == cosets[g].1 && cosets[x].2 == c)
                    .expect("composite coset is a morphism");
                comp[g * m + f] = Some(gf);
            }
        }
        let category = FiniteCategory::from_parts(objects, morphisms, identities, comp)
            .expect("orbit category satisfies the category laws");
        OrbitCategory { group: group.clone(), category, subgroups, rep }
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self, i: ObjId) -> &[usize] {
        &self.subgroups[i]
    }

    /// Element `a` such that the morphism is `gH ↦ gaK`.
    pub fn representative(&self, f: MorId) -> usize {
        self.rep[f]
    }

    /// Object of the trivial subgroup.
    pub fn free_orbit(&self) -> ObjId {
        0
    }

    /// Object of the whole group.
    pub fn fixed_orbit(&self) -> ObjId {
        self.subgroups.len() - 1
    }
}
