use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::ops::explicit_complex;
use super::{Chain, ChainComplex, Key};
use crate::error::{Error, Result};

/// Effective complex JSON: `{"degrees": {n: [key...]}, "differential":
/// {key: [[key, coeff]...]}}`. Differential entries are indexed by the
/// compact JSON text of the generator key, so keys must be distinct across
/// degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub degrees: BTreeMap<usize, Vec<Key>>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<(Key, i64)>>,
}

impl ComplexSpec {
    /// Serializes an effective complex through `max_degree`.
    pub fn from_complex(c: &ChainComplex, max_degree: usize) -> Result<Self> {
        let mut degrees = BTreeMap::new();
        let mut differential = BTreeMap::new();
        for n in 0..=max_degree {
            let basis = c.basis_or_err(n as isize)?;
            for k in basis.iter() {
                let d = c.d_gen(k, n as isize);
                let text = k.to_json();
                if !d.is_zero() {
                    differential.insert(text.clone(), d.iter().map(|(t, v)| (t.clone(), *v)).collect());
                } else if differential.contains_key(&text) {
                    return Err(Error::Parse(format!("generator {k} occurs in two degrees")));
                }
            }
            degrees.insert(n, basis.as_ref().clone());
        }
        Ok(ComplexSpec { degrees, differential })
    }

    pub fn to_complex(&self, name: &str) -> Result<ChainComplex> {
        let top = self.degrees.keys().next_back().copied().unwrap_or(0);
        let mut bases = vec![Vec::new(); top + 1];
        let mut degree_of: HashMap<String, usize> = HashMap::new();
        for (n, keys) in &self.degrees {
            for k in keys {
                if degree_of.insert(k.to_json(), *n).is_some() {
                    return Err(Error::Parse(format!("generator {k} listed twice")));
                }
            }
            bases[*n] = keys.clone();
        }
        let mut boundaries = HashMap::new();
        for (text, terms) in &self.differential {
            let n = *degree_of
                .get(text)
                .ok_or_else(|| Error::Parse(format!("differential of unknown generator {text}")))?;
            let key: Key = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            let d = n as isize;
            boundaries.insert((key, d), Chain::from_terms(d - 1, terms.iter().cloned()));
        }
        explicit_complex(name, bases, boundaries).map_err(|e| match e {
            Error::Dimension(m) => Error::Parse(m),
            other => other,
        })
    }
}
