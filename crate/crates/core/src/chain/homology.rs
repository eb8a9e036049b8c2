use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Chain, ChainComplex, Key};
use crate::abgrp::{integer_kernel, AbGroup, FeGroup, IntMatrix};
use crate::error::{Error, Result};

/// Matrix of `∂_n` in the enumerated bases: rows index the degree `n − 1`
/// basis, columns the degree `n` basis.
pub fn boundary_matrix(c: &ChainComplex, n: isize) -> Result<IntMatrix> {
    let cols = c.basis_or_err(n)?;
    let rows = c.basis_or_err(n - 1)?;
    let index: HashMap<&Key, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (j, k) in cols.iter().enumerate() {
        for (t, v) in c.d_gen(k, n).iter() {
            let i = *index
                .get(t)
                .ok_or_else(|| Error::audit("basis", format!("∂{k} contains {t} outside the basis")))?;
            m[(i, j)] = BigInt::from(*v);
        }
    }
    Ok(m)
}

/// The homology group `H_n(C)` with representative cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: isize,
    basis: Arc<Vec<Key>>,
    group: FeGroup,
}

impl Homology {
    pub fn degree(&self) -> isize {
        self.degree
    }

    /// The group in canonical invariant-factor form.
    pub fn group(&self) -> &AbGroup {
        self.group.group()
    }

    /// A cycle representing each canonical generator.
    pub fn representatives(&self) -> Vec<Chain> {
        self.group.generators().iter().map(|v| self.to_chain(v)).collect()
    }

    /// Coordinates of the class of a cycle, or `None` if it is not a cycle.
    pub fn class_of(&self, c: &Chain) -> Option<Vec<BigInt>> {
        let v = self.to_vector(c)?;
        self.group.decide(&v)
    }

    fn to_chain(&self, v: &[BigInt]) -> Chain {
        Chain::from_terms(
            self.degree,
            self.basis.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(k, x)| {
                (k.clone(), x.to_i64().expect("representative coefficient fits a machine integer"))
            }),
        )
    }

    fn to_vector(&self, c: &Chain) -> Option<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.basis.len()];
        for (k, x) in c.iter() {
            let i = self.basis.iter().position(|b| b == k)?;
            v[i] = BigInt::from(*x);
        }
        Some(v)
    }
}

/// `H_n` of an effective complex via Smith normal form.
pub fn homology(c: &ChainComplex, n: isize) -> Result<Homology> {
    let basis = c.basis_or_err(n)?;
    let dn = boundary_matrix(c, n)?;
    let dn1 = boundary_matrix(c, n + 1)?;
    let cycles = integer_kernel(&dn);
    let ambient = AbGroup::free(basis.len());
    let group = FeGroup::subquotient(&ambient, &cycles, &dn1)?;
    Ok(Homology { degree: n, basis, group })
}

/// Homology groups in degrees `0..=max_degree`.
pub fn homology_groups(c: &ChainComplex, max_degree: isize) -> Result<Vec<AbGroup>> {
    (0..=max_degree).map(|n| homology(c, n).map(|h| h.group().clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ops::explicit_complex;

    fn chain(deg: isize, terms: &[(&str, i64)]) -> Chain {
        Chain::from_terms(deg, terms.iter().map(|(k, v)| (Key::str(k), *v)))
    }

    #[test]
    fn triangle_boundary_matrix() {
        let keys = |v: &[&str]| v.iter().map(|s| Key::str(s)).collect::<Vec<_>>();
        let mut bd = HashMap::new();
        bd.insert((Key::str("01"), 1), chain(0, &[("1", 1), ("0", -1)]));
        bd.insert((Key::str("02"), 1), chain(0, &[("2", 1), ("0", -1)]));
        bd.insert((Key::str("12"), 1), chain(0, &[("2", 1), ("1", -1)]));
        let c = explicit_complex("dD2", vec![keys(&["0", "1", "2"]), keys(&["01", "02", "12"])], bd).unwrap();
        let m = boundary_matrix(&c, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        for j in 0..3 {
            let s: BigInt = (0..3).map(|i| m[(i, j)].clone()).sum();
            assert!(s.is_zero());
        }
        let groups = homology_groups(&c, 1).unwrap();
        assert_eq!(groups, vec![AbGroup::free(1), AbGroup::free(1)]);
        let h1 = homology(&c, 1).unwrap();
        let z = h1.representatives()[0].clone();
        assert!(c.d(&z).is_zero());
        assert_eq!(h1.class_of(&z.scale(3)).unwrap(), vec![BigInt::from(3)]);
    }

    #[test]
    fn point_boundary_matrix_is_empty() {
        let c = explicit_complex("pt", vec![vec![Key::str("*")]], HashMap::new()).unwrap();
        let m = boundary_matrix(&c, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
        assert_eq!(homology_groups(&c, 2).unwrap(), vec![AbGroup::free(1), AbGroup::trivial(), AbGroup::trivial()]);
    }

    #[test]
    fn projective_plane_cells() {
        // v; a with ∂a = 0; σ with ∂σ = 2a
        let mut bd = HashMap::new();
        bd.insert((Key::str("s"), 2), chain(1, &[("a", 2)]));
        let c = explicit_complex(
            "RP2",
            vec![vec![Key::str("v")], vec![Key::str("a")], vec![Key::str("s")]],
            bd,
        )
        .unwrap();
        assert_eq!(homology(&c, 1).unwrap().group(), &AbGroup::cyclic(2));
        assert!(homology(&c, 2).unwrap().group().is_trivial());
    }
}
