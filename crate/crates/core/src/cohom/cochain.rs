use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgrp::{homology_at, AbGroup, FeDiagram, FeGroup, Hom, IntMatrix};
use crate::chain::{Chain, ChainComplex, Key, LinearMap};
use crate::diagcat::ChainDiagram;
use crate::error::{Error, Result};
use crate::reduct::Reduction;

/// `Hom(C_*, π)` truncated at `top`: degree `n` is `⊕_c π(i_c)` over the
/// cells `c` of degree `n`, and `δ^n: C^n → C^{n+1}` precomposes with `∂`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    cells: Vec<Vec<Key>>,
    offsets: Vec<Vec<usize>>,
    groups: Vec<AbGroup>,
    codifferentials: Vec<Hom>,
}

impl CochainComplex {
    /// Highest degree whose cohomology is available.
    pub fn max_degree(&self) -> usize {
        self.codifferentials.len() - 1
    }

    pub fn cells(&self, n: usize) -> &[Key] {
        &self.cells[n]
    }

    pub fn group(&self, n: usize) -> &AbGroup {
        &self.groups[n]
    }

    /// The nonzero per-cell values of a cochain of degree `n`.
    pub fn cocycle_blocks(&self, n: usize, x: &[BigInt]) -> Vec<(Key, Vec<BigInt>)> {
        let off = &self.offsets[n];
        self.cells[n]
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), x[off[i]..off[i + 1]].to_vec()))
            .filter(|(_, v)| v.iter().any(|a| !a.is_zero()))
            .collect()
    }

    /// `δ^n: C^n → C^{n+1}`.
    pub fn codifferential(&self, n: usize) -> &Hom {
        &self.codifferentials[n]
    }

    /// `δ^{n+1} δ^n = 0` modulo the orders, for every stored pair.
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 0..self.codifferentials.len().saturating_sub(1) {
            if !self.codifferentials[n + 1].compose(&self.codifferentials[n])?.is_zero() {
                return Err(Error::audit("δδ = 0", format!("degree {n}")));
            }
        }
        Ok(())
    }

    /// `H^n` as a subquotient of `C^n`; its generators are cocycles.
    pub fn cohomology(&self, n: usize) -> Result<FeGroup> {
        if n > self.max_degree() {
            return Err(Error::Dimension(format!("cochains stop at degree {}", self.max_degree())));
        }
        let incoming = if n == 0 {
            Hom::zero(&AbGroup::trivial(), &self.groups[0])
        } else {
            self.codifferentials[n - 1].clone()
        };
        homology_at(&incoming, &self.codifferentials[n])
    }

    /// `H^0, …, H^{max_degree}` in canonical form.
    pub fn cohomology_groups(&self) -> Result<Vec<AbGroup>> {
        (0..=self.max_degree()).map(|n| Ok(self.cohomology(n)?.group().canonical())).collect()
    }
}

fn block_offsets(groups: &[&AbGroup]) -> Vec<usize> {
    let mut out = Vec::with_capacity(groups.len() + 1);
    let mut acc = 0;
    out.push(0);
    for g in groups {
        acc += g.len();
        out.push(acc);
    }
    out
}

/// `Hom(C, π)` through degree `max_degree`, by Yoneda over the cellular
/// basis: a natural map out of the free diagram on a cell `c` over `i` is
/// its value on `c`, an element of `π(i)`.
pub fn dualize(c: &ChainDiagram, pi: &FeDiagram, max_degree: usize) -> Result<CochainComplex> {
    if **c.category() != *pi.category() {
        return Err(Error::Dimension("coefficients live over another category".into()));
    }
    let cells = c.cells().ok_or_else(|| Error::LocalFiniteness("the chain diagram has no cellular basis".into()))?;
    let top = max_degree + 1;
    let by_degree: Vec<Vec<Key>> = (0..=top as isize).map(|n| cells.in_degree(n)).collect();
    let groups: Vec<AbGroup> = by_degree
        .iter()
        .map(|cs| AbGroup::direct_sum_all(cs.iter().map(|k| pi.group(cells.object(k)))))
        .collect();
    let offsets: Vec<Vec<usize>> = by_degree
        .iter()
        .map(|cs| block_offsets(&cs.iter().map(|k| pi.group(cells.object(k))).collect::<Vec<_>>()))
        .collect();
    let mut codifferentials = Vec::with_capacity(top);
    for n in 0..top {
        let (src, tgt) = (&by_degree[n], &by_degree[n + 1]);
        let (src_off, tgt_off) = (&offsets[n], &offsets[n + 1]);
        let index: HashMap<&Key, usize> = src.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = vec![vec![BigInt::zero(); src_off[src.len()]]; tgt_off[tgt.len()]];
        for (row, cell) in tgt.iter().enumerate() {
            let i = cells.object(cell);
            for (gen, coeff) in c.total().d_gen(cell, n as isize + 1).iter() {
                let (base, f) = cells.decompose(gen, n as isize);
                let col = *index.get(&base).ok_or_else(|| Error::audit("cellular basis", format!("{base} is not a cell")))?;
                if c.category().cod(f) != i || c.category().dom(f) != cells.object(&base) {
                    return Err(Error::audit("cellular basis", format!("{gen} does not lie over {i}")));
                }
                let a = pi.map(f).matrix();
                for r in 0..a.rows() {
                    for s in 0..a.cols() {
                        m[tgt_off[row] + r][src_off[col] + s] += a.row(r)[s].clone() * coeff;
                    }
                }
            }
        }
        let matrix = IntMatrix::from_big_rows(tgt_off[tgt.len()], src_off[src.len()], m);
        codifferentials.push(Hom::new(groups[n].clone(), groups[n + 1].clone(), matrix)?);
    }
    Ok(CochainComplex { cells: by_degree, offsets, groups, codifferentials })
}

/// The matrix of a degree-`shift` map from `C_n` to `D_{n+shift}`.
fn matrix_of(map: &LinearMap, from: &[Key], to: &[Key], n: isize) -> Vec<Vec<i64>> {
    let index: HashMap<&Key, usize> = to.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = vec![vec![0i64; from.len()]; to.len()];
    for (j, k) in from.iter().enumerate() {
        for (t, v) in map.apply(&Chain::generator(k.clone(), n)).iter() {
            m[index[t]][j] += v;
        }
    }
    m
}

/// `φ^* = φ^T ⊗ 1_A` on coordinates in `A^{basis}`.
fn dual(m: &[Vec<i64>], rows_of_source: usize, a: &AbGroup) -> IntMatrix {
    let k = a.len();
    let cols = m.len() * k;
    let rows = rows_of_source * k;
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            for t in 0..k {
                out[j * k + t][i * k + t] = BigInt::from(v);
            }
        }
    }
    IntMatrix::from_big_rows(rows, cols, out)
}

struct DualSide {
    basis: Vec<Vec<Key>>,
    groups: Vec<AbGroup>,
}

impl DualSide {
    fn new(c: &ChainComplex, top: isize, a: &AbGroup) -> Result<Self> {
        let basis: Vec<Vec<Key>> = (0..=top).map(|n| c.basis_or_err(n).map(|b| b.to_vec())).collect::<Result<_>>()?;
        let groups = basis.iter().map(|b| AbGroup::direct_sum_all(std::iter::repeat(a).take(b.len()))).collect();
        Ok(DualSide { basis, groups })
    }
}

/// Checks the five reduction identities for the dual maps
/// `α^*, β^*, η^*` on `Hom(−, A)`, modulo the orders of `A`, through
/// `max_degree`.
pub fn verify_dual_reduction(r: &Reduction, coefficients: &AbGroup, max_degree: isize) -> Result<()> {
    let a = coefficients;
    let top = DualSide::new(r.top(), max_degree + 2, a)?;
    let bot = DualSide::new(r.bottom(), max_degree + 2, a)?;
    let hom = |m: IntMatrix, from: &AbGroup, to: &AbGroup| Hom::new(from.clone(), to.clone(), m);
    // α^*_n: Hom(B_n) → Hom(T_n), β^*_n: Hom(T_n) → Hom(B_n),
    // η^*_n: Hom(T_{n+1}) → Hom(T_n), δ^n: Hom(T_n) → Hom(T_{n+1})
    let alpha = |n: usize| {
        let m = matrix_of(r.projection(), &top.basis[n], &bot.basis[n], n as isize);
        hom(dual(&m, top.basis[n].len(), a), &bot.groups[n], &top.groups[n])
    };
    let beta = |n: usize| {
        let m = matrix_of(r.inclusion(), &bot.basis[n], &top.basis[n], n as isize);
        hom(dual(&m, bot.basis[n].len(), a), &top.groups[n], &bot.groups[n])
    };
    let eta = |n: usize| {
        let m = matrix_of(r.homotopy(), &top.basis[n], &top.basis[n + 1], n as isize);
        hom(dual(&m, top.basis[n].len(), a), &top.groups[n + 1], &top.groups[n])
    };
    let delta = |n: usize| {
        let m = matrix_of(r.top().differential(), &top.basis[n + 1], &top.basis[n], n as isize + 1);
        hom(dual(&m, top.basis[n + 1].len(), a), &top.groups[n], &top.groups[n + 1])
    };
    let fail = |law: &str, n: usize| Err(Error::audit(law, format!("dual identity fails in degree {n}")));
    for n in 0..=max_degree.max(0) as usize {
        let (an, bn, en) = (alpha(n)?, beta(n)?, eta(n)?);
        if bn.compose(&an)? != Hom::identity(&bot.groups[n]) {
            return fail("β*α* = 1", n);
        }
        if !en.compose(&alpha(n + 1)?)?.is_zero() {
            return fail("η*α* = 0", n);
        }
        if !bn.compose(&en)?.is_zero() {
            return fail("β*η* = 0", n);
        }
        if !en.compose(&eta(n + 1)?)?.is_zero() {
            return fail("η*η* = 0", n);
        }
        let mut lhs = en.compose(&delta(n)?)?.matrix().clone();
        if n > 0 {
            lhs = add(&lhs, delta(n - 1)?.compose(&eta(n - 1)?)?.matrix());
        }
        let rhs = sub(&IntMatrix::identity(top.groups[n].len()), an.compose(&bn)?.matrix());
        if !Hom::new(top.groups[n].clone(), top.groups[n].clone(), sub(&lhs, &rhs))?.is_zero() {
            return fail("η*δ + δη* = 1 − α*β*", n);
        }
    }
    Ok(())
}

fn add(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let rows = (0..x.rows()).map(|i| x.row(i).iter().zip(y.row(i)).map(|(a, b)| a + b).collect()).collect();
    IntMatrix::from_big_rows(x.rows(), x.cols(), rows)
}

fn sub(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let rows = (0..x.rows()).map(|i| x.row(i).iter().zip(y.row(i)).map(|(a, b)| a - b).collect()).collect();
    IntMatrix::from_big_rows(x.rows(), x.cols(), rows)
}
