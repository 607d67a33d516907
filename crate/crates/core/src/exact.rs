//! Exact rational helpers shared by the geometry and validation code.

use std::cmp::Ordering;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

/// Exact rational scalar, always in reduced form with a positive denominator.
pub type Rational = RBig;

pub fn rational(num: i128, den: i128) -> Rational {
    assert!(den != 0, "zero denominator");
    let num = if den < 0 { -num } else { num };
    RBig::from_parts(IBig::from(num), UBig::from(den.unsigned_abs()))
}

pub fn integer(n: i128) -> Rational {
    RBig::from(IBig::from(n))
}

/// Compares `√a` with `√b + √c` for nonnegative rationals without any
/// square roots: `√a ≤ √b + √c` iff `a - b - c ≤ 0` or `(a - b - c)² ≤ 4bc`.
pub fn cmp_sqrt_sum(a: &Rational, b: &Rational, c: &Rational) -> Ordering {
    let d = a - b - c;
    if d < RBig::ZERO {
        return Ordering::Less;
    }
    let lhs = &d * &d;
    let rhs = RBig::from(4) * b * c;
    lhs.cmp(&rhs)
}

/// Inverts a square rational matrix by Gauss-Jordan elimination.
pub fn invert(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RBig::ONE } else { RBig::ZERO })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != RBig::ZERO)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col] == RBig::ZERO {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] = &a[r][j] - t;
                let t = &factor * &inv[col][j];
                inv[r][j] = &inv[r][j] - t;
            }
        }
    }
    Some(inv)
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = RBig::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != RBig::ZERO) else {
            return RBig::ZERO;
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col] == RBig::ZERO {
                continue;
            }
            let factor = &a[r][col] / &p;
            let (upper, lower) = a.split_at_mut(r);
            for (x, pivot_entry) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x -= &factor * pivot_entry;
            }
        }
    }
    det
}

/// Sylvester's criterion on a symmetric rational matrix.
pub fn is_positive_definite(matrix: &[Vec<Rational>]) -> bool {
    (1..=matrix.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = matrix[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor) > RBig::ZERO
    })
}
