use num_traits::Zero;
use thiserror::Error;

use super::Rational;

/// The system `A x = b` has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("linear system is inconsistent")]
pub struct Inconsistent;

/// Solves `A x = b` exactly, pivoting on columns left to right.
///
/// Free variables are set to zero, so an underdetermined system yields one
/// particular solution.
pub fn solve_linear_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, Inconsistent> {
    let cols = a.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..cols).collect();
    solve_linear_exact_with_order(a, b, &order)
}

/// As [`solve_linear_exact`], but pivot columns are tried in `col_order`.
///
/// Different orders pick different particular solutions of an
/// underdetermined system.
pub fn solve_linear_exact_with_order(
    a: &[Vec<Rational>],
    b: &[Rational],
    col_order: &[usize],
) -> Result<Vec<Rational>, Inconsistent> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut seen = vec![false; cols];
    for &c in col_order {
        assert!(c < cols && !seen[c], "col_order must be a permutation");
        seen[c] = true;
    }
    assert_eq!(col_order.len(), cols, "col_order must be a permutation");

    // Augmented matrix.
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for &col in col_order {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Err(Inconsistent);
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, c) in pivots {
        x[c] = m[r][cols].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn apply(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
        a.iter()
            .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum())
            .collect()
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        let b = vec![rat(1, 2), int(-3)];
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), b);
    }

    #[test]
    fn s3_trivial_character_system() {
        let a = mat(&[&[6, 3, 2], &[0, 1, 0], &[0, 0, 2]]);
        let b = vec![int(1), int(1), int(1)];
        let x = solve_linear_exact(&a, &b).unwrap();
        assert_eq!(x, vec![rat(-1, 2), int(1), rat(1, 2)]);
        assert_eq!(apply(&a, &x), b);
    }

    #[test]
    fn inconsistent_system() {
        let a = mat(&[&[1], &[1]]);
        assert_eq!(solve_linear_exact(&a, &[int(0), int(1)]), Err(Inconsistent));
    }

    #[test]
    fn empty_system() {
        assert_eq!(solve_linear_exact(&[], &[]), Ok(vec![]));
    }

    #[test]
    fn underdetermined_orders_differ_but_both_solve() {
        let a = mat(&[&[1, 1, 2]]);
        let b = vec![int(4)];
        let x1 = solve_linear_exact_with_order(&a, &b, &[0, 1, 2]).unwrap();
        let x2 = solve_linear_exact_with_order(&a, &b, &[2, 1, 0]).unwrap();
        assert_ne!(x1, x2);
        assert_eq!(apply(&a, &x1), b);
        assert_eq!(apply(&a, &x2), b);
    }

    proptest! {
        #[test]
        fn consistent_systems_resubstitute(
            entries in prop::collection::vec(-4i64..=4, 12),
            xs in prop::collection::vec(-6i64..=6, 4),
            perm_seed in 0usize..24,
        ) {
            let a: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let x0: Vec<Rational> = xs.iter().map(|&v| rat(v, 3)).collect();
            let b = apply(&a, &x0);
            let mut order: Vec<usize> = (0..4).collect();
            // a deterministic permutation from the seed
            let mut s = perm_seed;
            for i in (1..4).rev() {
                order.swap(i, s % (i + 1));
                s /= i + 1;
            }
            let x = solve_linear_exact_with_order(&a, &b, &order).unwrap();
            prop_assert_eq!(apply(&a, &x), b);
        }
    }
}
