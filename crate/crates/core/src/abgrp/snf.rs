use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = S` together with the inverses of the
/// unimodular transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Nearest-integer quotient, so remainders satisfy `|r| <= |b| / 2`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // r carries the sign of b, so r - b always moves toward zero
    if (&r * BigInt::from(2)).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] -= q row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        let mq = -q;
        self.a.add_row_multiple(dst, src, &mq);
        self.u.add_row_multiple(dst, src, &mq);
        self.u_inv.add_col_multiple(src, dst, q);
    }

    /// col[dst] -= q col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        let mq = -q;
        self.a.add_col_multiple(dst, src, &mq);
        self.v.add_col_multiple(dst, src, &mq);
        self.v_inv.add_row_multiple(src, dst, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Computes the Smith normal form of `m`.
///
/// Pivots are chosen with minimal absolute value among the remaining
/// submatrix; all arithmetic is exact.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&w.a, t, t..rows, t..cols) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[(i, t)].is_zero() {
                    let q = round_div(&w.a[(i, t)], &w.a[(t, t)]);
                    w.row_sub(i, t, &q);
                    if !w.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[(t, j)].is_zero() {
                    let q = round_div(&w.a[(t, j)], &w.a[(t, t)]);
                    w.col_sub(j, t, &q);
                    if !w.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest leftover of row t / column t onto the pivot
                let mut best = (t, t);
                let mut best_abs = w.a[(t, t)].abs();
                for i in t + 1..rows {
                    let x = w.a[(i, t)].abs();
                    if !x.is_zero() && x < best_abs {
                        best = (i, t);
                        best_abs = x;
                    }
                }
                for j in t + 1..cols {
                    let x = w.a[(t, j)].abs();
                    if !x.is_zero() && x < best_abs {
                        best = (t, j);
                        best_abs = x;
                    }
                }
                if best.0 != t {
                    w.swap_rows(t, best.0);
                }
                if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = w.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a[(i, j)].is_zero() && !w.a[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    // row[t] += row[i]
                    w.row_sub(t, i, &one);
                }
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !w.a[(i, i)].is_zero()).count();
    SmithForm { s: w.a, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv, rank }
}

fn min_pivot(
    a: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            let better = match &best {
                None => true,
                Some((_, b)) => ax < *b,
            };
            if better {
                let is_one = ax == BigInt::from(1);
                best = Some(((i, j), ax));
                if is_one {
                    return best.map(|(p, _)| p);
                }
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Basis (as matrix columns) of the integer kernel `{x : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank()..m.cols()).collect();
    snf.v.select_columns(&idx)
}

/// A basis (full column rank) of the lattice spanned by the columns of `span`.
pub fn lattice_basis(span: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(span);
    let mut cols = Vec::with_capacity(snf.rank());
    for i in 0..snf.rank() {
        let d = &snf.s[(i, i)];
        cols.push(snf.u_inv.column(i).into_iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntMatrix::from_columns(span.rows(), &cols)
}

/// Solver for `B y = x` where `B` has full column rank.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    basis: IntMatrix,
    snf: SmithForm,
}

impl LatticeSolver {
    pub fn new(basis: IntMatrix) -> Self {
        let snf = smith_normal_form(&basis);
        assert_eq!(snf.rank(), basis.cols(), "lattice basis must have full column rank");
        LatticeSolver { basis, snf }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates `y` with `B y = x`, or `None` when `x` is outside the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.snf.u.mul_vec(x);
        let k = self.basis.cols();
        let mut z = Vec::with_capacity(k);
        for (i, wi) in w.iter().enumerate() {
            if i < k {
                let d = &self.snf.s[(i, i)];
                let (q, r) = wi.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                z.push(q);
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }
}
