//! Exact kernel computation by fraction-free elimination.
//!
//! Rows are cleared to integers, eliminated with cross-multiplication and
//! gcd reduction, and the nullspace is recovered by rational
//! back-substitution. Pivoting is deterministic: first nonzero entry in
//! row-major canonical order.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Basis of the right kernel of the matrix given as `rows` (each of length
/// `ncols`). Free variables are set to 1 one at a time, in column order.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut mat: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            assert_eq!(row.len(), ncols, "ragged row");
            clear_denominators(row)
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();

    // Forward elimination to row echelon form.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot_row = (rank..mat.len()).find(|&r| !mat[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        mat.swap(rank, pr);
        let (pivot, below) = mat[rank..].split_first_mut().unwrap();
        for row in below {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot[col].gcd(&row[col]);
            let pm = &row[col] / &g;
            let rm = &pivot[col] / &g;
            for c in col..ncols {
                row[c] = &row[c] * &rm - &pivot[c] * &pm;
            }
            reduce_row(row);
        }
        pivot_cols.push(col);
        rank += 1;
    }
    mat.truncate(rank);

    // Back-substitution: one kernel vector per free column.
    let mut kernel = Vec::new();
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut x = vec![Scalar::zero(); ncols];
        x[free] = Scalar::one();
        for r in (0..rank).rev() {
            let pc = pivot_cols[r];
            let mut acc = Scalar::zero();
            for c in pc + 1..ncols {
                if !mat[r][c].is_zero() && !x[c].is_zero() {
                    acc += &(Scalar::from_int(mat[r][c].clone()) * &x[c]);
                }
            }
            if !acc.is_zero() {
                x[pc] = -acc / Scalar::from_int(mat[r][pc].clone());
            }
        }
        kernel.push(x);
    }
    kernel
}

fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for s in row {
        lcm = lcm.lcm(s.denom());
    }
    row.iter()
        .map(|s| s.numer() * (&lcm / s.denom()))
        .collect()
}

fn reduce_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Scalar {
        Scalar::new(p, q).unwrap()
    }

    fn check_in_kernel(rows: &[Vec<Scalar>], x: &[Scalar]) {
        for row in rows {
            let dot: Scalar = row.iter().zip(x).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero(), "vector not in kernel");
        }
    }

    #[test]
    fn full_rank_matrix_has_trivial_kernel() {
        let rows = vec![vec![s(1, 1), s(0, 1)], vec![s(1, 2), s(1, 3)]];
        assert!(kernel_basis(&rows, 2).is_empty());
    }

    #[test]
    fn proportional_rows_collapse_to_rank_one() {
        let rows = vec![
            vec![s(1, 2), s(1, 3), s(-1, 1)],
            vec![s(3, 2), s(1, 1), s(-3, 1)],
        ];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            check_in_kernel(&rows, x);
            assert!(!x.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn one_dimensional_kernel() {
        // x + y - z = 0, x - y = 0 has kernel spanned by (1, 1, 2).
        let rows = vec![
            vec![s(1, 1), s(1, 1), s(-1, 1)],
            vec![s(1, 1), s(-1, 1), s(0, 1)],
        ];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 1);
        check_in_kernel(&rows, &k[0]);
        let unit = &k[0][1] / &k[0][0];
        assert_eq!(unit, s(1, 1));
        assert_eq!(&k[0][2] / &k[0][0], s(2, 1));
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let rows = vec![vec![s(0, 1); 3]];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 3);
        for (i, x) in k.iter().enumerate() {
            assert_eq!(x[i], Scalar::one());
        }
    }

    #[test]
    fn dependent_rational_rows() {
        // Row 2 = 2 * row 1, kernel has dimension 2 of a 3-column system.
        let rows = vec![
            vec![s(2, 3), s(-1, 5), s(7, 2)],
            vec![s(4, 3), s(-2, 5), s(7, 1)],
        ];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            check_in_kernel(&rows, x);
        }
    }
}
