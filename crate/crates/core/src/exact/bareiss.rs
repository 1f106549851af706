//! Fraction-free (Bareiss) elimination over the integers.
//!
//! This is a second, independent route to the rank: it never forms a
//! fraction, every intermediate value is a minor of the input.

use super::matrix::RationalMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank of an integer matrix given as rows.
pub fn rank_integer(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let height = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..width {
        if rank == height {
            break;
        }
        let Some(p) = (rank..height).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..height {
            for c in col + 1..width {
                // a[r][c] = (a[rank][col]*a[r][c] - a[r][col]*a[rank][c]) / prev
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix via Bareiss on its row-scaled integer form.
pub fn rank_fraction_free(m: &RationalMatrix) -> usize {
    rank_integer(&m.integer_rows())
}

/// Determinant of a square integer matrix.
pub fn determinant_integer(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return BigInt::one();
    }
    let mut a = rows.to_vec();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = (&a[k][k] * &a[r][c] - &a[r][k] * &a[k][c]) / &prev;
                a[r][c] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
