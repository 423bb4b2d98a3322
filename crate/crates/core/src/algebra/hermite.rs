//! Row-style Hermite normal form, used to bring transition matrices into a
//! canonical shape by a change of basis on the target side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `h = w * a` with `w` unimodular and `h` in row echelon form: pivots are
/// positive and entries above each pivot lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub w: IntMatrix,
    pub w_inv: IntMatrix,
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let m = a.rows();
    let mut h = a.clone();
    let mut w = IntMatrix::identity(m);
    let mut w_inv = IntMatrix::identity(m);

    let add_row = |h: &mut IntMatrix, w: &mut IntMatrix, w_inv: &mut IntMatrix, t: usize, s: usize, q: &BigInt| {
        h.add_row_multiple(t, s, q);
        w.add_row_multiple(t, s, q);
        w_inv.add_col_multiple(s, t, &-q);
    };

    let mut row = 0;
    for col in 0..a.cols() {
        if row == m {
            break;
        }
        loop {
            let pick = (row..m)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()).then(x.cmp(&y)));
            let Some(p) = pick else { break };
            h.swap_rows(row, p);
            w.swap_rows(row, p);
            w_inv.swap_cols(row, p);
            let mut clean = true;
            for r in row + 1..m {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = &h[(r, col)] / &h[(row, col)];
                add_row(&mut h, &mut w, &mut w_inv, r, row, &-q);
                clean &= h[(r, col)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            w.negate_row(row);
            w_inv.negate_col(row);
        }
        let pivot = h[(row, col)].clone();
        for r in 0..row {
            let q = h[(r, col)].div_floor(&pivot);
            add_row(&mut h, &mut w, &mut w_inv, r, row, &-q);
        }
        row += 1;
    }
    HermiteForm { h, w, w_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> HermiteForm {
        let f = hermite_normal_form(a);
        assert_eq!(&f.w * a, f.h);
        assert!((&f.w * &f.w_inv).is_identity());
        f
    }

    #[test]
    fn canonical_under_left_unimodular_change() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let g = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let f1 = check(&a);
        let f2 = check(&(&g * &a));
        assert_eq!(f1.h, f2.h);
        assert_eq!(f1.h, IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]));
    }

    #[test]
    fn reduces_above_pivots() {
        let a = IntMatrix::from_rows(&[vec![2, 7], vec![0, 3]]);
        let f = check(&a);
        assert_eq!(f.h, IntMatrix::from_rows(&[vec![2, 1], vec![0, 3]]));
    }

    #[test]
    fn singular_input() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![-1, -2]]);
        let f = check(&a);
        assert_eq!(f.h, IntMatrix::from_rows(&[vec![1, 2], vec![0, 0]]));
    }
}
