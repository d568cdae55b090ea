//! Dense elimination for small matrices.
//!
//! [`rank_bareiss`] is fraction-free: when the input has integer entries every
//! intermediate entry is an integer minor. [`rank_naive`] is textbook
//! elimination with division; the two are kept side by side so each can check
//! the other.

use crate::scalar::Field;

/// Matrices with both dimensions below this use the dense routines.
pub const DENSE_CUTOFF: usize = 64;

pub fn rank_bareiss<F: Field>(mut a: Vec<Vec<F>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = F::one();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let pivot = a[row][col].clone();
        for i in row + 1..m {
            let lead = a[i][col].clone();
            for j in col + 1..n {
                let v = pivot.mul_ref(&a[i][j]).sub_ref(&lead.mul_ref(&a[row][j]));
                a[i][j] = v.div_ref(&prev);
            }
            a[i][col] = F::zero();
        }
        prev = pivot;
        row += 1;
    }
    row
}

pub fn rank_naive<F: Field>(a: Vec<Vec<F>>) -> usize {
    rref_dense(a).1.len()
}

/// Reduced row echelon form with division. Returns the reduced rows (only the
/// nonzero ones) and the pivot columns.
pub fn rref_dense<F: Field>(mut a: Vec<Vec<F>>) -> (Vec<Vec<F>>, Vec<usize>) {
    let m = a.len();
    if m == 0 {
        return (a, Vec::new());
    }
    let n = a[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv();
        for j in col..n {
            a[row][j] = a[row][j].mul_ref(&inv);
        }
        for i in 0..m {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..n {
                    let v = a[i][j].sub_ref(&f.mul_ref(&a[row][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn bareiss_on_singular_matrix() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(4), q(5), q(6)], vec![q(7), q(8), q(9)]];
        assert_eq!(rank_bareiss(a.clone()), 2);
        assert_eq!(rank_naive(a), 2);
    }

    #[test]
    fn bareiss_keeps_integers() {
        // Entries stay integral on an integer input.
        let a = vec![vec![q(2), q(3), q(1)], vec![q(4), q(1), q(5)], vec![q(6), q(2), q(7)]];
        assert_eq!(rank_bareiss(a), 3);
    }

    #[test]
    fn rref_of_wide_matrix() {
        let a = vec![vec![q(0), q(2), q(4)], vec![q(0), q(1), q(3)]];
        let (r, p) = rref_dense(a);
        assert_eq!(p, vec![1, 2]);
        assert_eq!(r[0], vec![q(0), q(1), q(0)]);
    }
}
