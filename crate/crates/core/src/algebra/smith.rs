//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `d = u * a * v` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain of nonnegative entries. The inverses of both
/// transforms are kept since cohomology needs them.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.u.swap_rows(i, j);
            self.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.v.swap_cols(i, j);
            self.v_inv.swap_rows(i, j);
        }
    }

    /// row[target] += q * row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        self.a.add_row_multiple(target, source, q);
        self.u.add_row_multiple(target, source, q);
        self.u_inv.add_col_multiple(source, target, &-q);
    }

    /// col[target] += q * col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        self.a.add_col_multiple(target, source, q);
        self.v.add_col_multiple(target, source, q);
        self.v_inv.add_row_multiple(source, target, &-q);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Smallest nonzero |entry| in the lower-right block starting at `t`,
    /// ties broken by lowest row, then lowest column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let v = &self.a[(r, c)];
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => v.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Clears row and column `t` by division. Returns false if a nonzero
    /// remainder was left behind.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        let p = self.a[(t, t)].clone();
        for r in t + 1..self.a.rows() {
            if self.a[(r, t)].is_zero() {
                continue;
            }
            let q = &self.a[(r, t)] / &p;
            self.add_row(r, t, &-q);
            clean &= self.a[(r, t)].is_zero();
        }
        for c in t + 1..self.a.cols() {
            if self.a[(t, c)].is_zero() {
                continue;
            }
            let q = &self.a[(t, c)] / &p;
            self.add_col(c, t, &-q);
            clean &= self.a[(t, c)].is_zero();
        }
        clean
    }

    /// A row below `t` holding an entry the pivot does not divide.
    fn indivisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        (t + 1..self.a.rows())
            .find(|&r| (t + 1..self.a.cols()).any(|c| !self.a[(r, c)].is_multiple_of(p)))
    }
}

/// Computes the Smith normal form of `a`. Total: empty and zero matrices
/// yield identity transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut red = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((r, c)) = red.pivot(t) else { break };
        red.swap_rows(t, r);
        red.swap_cols(t, c);
        if !red.eliminate(t) {
            continue;
        }
        if let Some(r) = red.indivisible_row(t) {
            red.add_row(t, r, &BigInt::from(1));
            continue;
        }
        if red.a[(t, t)].is_negative() {
            red.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        u: red.u,
        u_inv: red.u_inv,
        d: red.a,
        v: red.v,
        v_inv: red.v_inv,
    }
}
