use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use super::Key;

/// A finite integer combination of generators in a fixed degree.
///
/// Zero coefficients are never stored. Coefficients are machine integers
/// with checked arithmetic; an overflow panics instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    degree: isize,
    terms: BTreeMap<Key, i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("chain coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("chain coefficient overflow")
}

impl Chain {
    pub fn zero(degree: isize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn generator(key: Key, degree: isize) -> Self {
        Chain::term(key, degree, 1)
    }

    pub fn term(key: Key, degree: isize, coeff: i64) -> Self {
        let mut c = Chain::zero(degree);
        c.add_term(key, coeff);
        c
    }

    pub fn from_terms(degree: isize, terms: impl IntoIterator<Item = (Key, i64)>) -> Self {
        let mut c = Chain::zero(degree);
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &Key) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Key, i64> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: Key, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = checked_add(*e.get(), coeff);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += coeff * other`
    pub fn add_scaled(&mut self, other: &Chain, coeff: i64) {
        if coeff == 0 || other.is_zero() {
            return;
        }
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), checked_mul(*v, coeff));
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(other, 1);
        c
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(other, -1);
        c
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    pub fn scale(&self, s: i64) -> Chain {
        if s == 0 {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), checked_mul(*v, s))).collect(),
        }
    }

    /// Same terms, regarded in another degree.
    pub fn with_degree(mut self, degree: isize) -> Chain {
        self.degree = degree;
        self
    }

    /// Applies a key transformation (assumed injective) to every term.
    pub fn map_keys(&self, degree: isize, f: impl Fn(&Key) -> Key) -> Chain {
        Chain::from_terms(degree, self.terms.iter().map(|(k, v)| (f(k), *v)))
    }

    /// Keeps only terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Key) -> bool) -> Chain {
        Chain {
            degree: self.degree,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// Largest absolute coefficient.
    pub fn norm(&self) -> i64 {
        self.terms.values().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let sign = if *v < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if v.abs() == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{}*{k}", v.abs())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>[{}]", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = Key::str("a");
        let mut c = Chain::term(a.clone(), 1, 3);
        c.add_term(a.clone(), -3);
        assert!(c.is_zero());
        assert_eq!(c.coeff(&a), 0);
    }

    #[test]
    fn display() {
        let c = Chain::from_terms(1, [(Key::str("b"), -2), (Key::str("a"), 1)]);
        assert_eq!(c.to_string(), "a - 2*b");
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        Chain::term(Key::Int(0), 0, i64::MAX).scale(2);
    }
}
