//! Exact rational arithmetic helpers shared by all modules.
//!
//! Everything upstream of the numeric Einstein solver is computed over
//! arbitrary-precision rationals so that paper values can be matched exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a rational.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest `f64` to a rational (good to one ulp for the magnitudes used here).
pub fn to_f64(x: &Q) -> f64 {
    x.to_f64()
        .unwrap_or_else(|| x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap())
}

/// Render a rational as `"num/den"`, or just `"num"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Solve the square linear system `a * x = b` by Gaussian elimination.
///
/// Returns `None` when the matrix is singular.
pub fn solve_linear(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone();
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &inv;
            for k in col..n {
                let sub = &factor * &a[col][k];
                a[row][k] = &a[row][k] - sub;
            }
            let sub = &factor * &b[col];
            b[row] = &b[row] - sub;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Invert a square rational matrix. Returns `None` when singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Q> = (0..n).map(|i| if i == j { q(1) } else { q(0) }).collect();
        cols.push(solve_linear(m.to_vec(), e)?);
    }
    // `cols[j]` is the j-th column of the inverse; transpose into rows.
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Absolute value of a rational.
pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![q(5), q(10)];
        let x = solve_linear(a, b).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
    }

    #[test]
    fn detects_singular() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve_linear(a, vec![q(1), q(2)]).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], qr(2, 3));
        assert_eq!(inv[0][1], qr(1, 3));
    }
}
