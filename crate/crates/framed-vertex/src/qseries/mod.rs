//! Exact q-series arithmetic: Laurent polynomials in `q^(1/24)`, canonical
//! fractions, quantum integers, and determinants over the fraction field.
//!
//! * [`LaurentPoly`] — sparse exact Laurent polynomials in `t = q^(1/24)`.
//! * [`QRat`] — canonical reduced fractions with structural equality.
//! * [`bracket`], [`bracket_factorial`] — quantum integers
//!   `[n] = q^(n/2) - q^(-n/2)` and their factorials.
//! * [`determinant`] — exact Gaussian elimination over the fraction field.

mod laurent;
mod modgcd;
mod qrat;

pub use laurent::LaurentPoly;
pub use qrat::{EvalError, QRat, QRatError};

/// The quantum integer `[n] = q^(n/2) - q^(-n/2)` as a field value
/// (`[0] = 0`).
pub fn bracket(n: u64) -> QRat {
    QRat::q_half_pow(n as i64) - QRat::q_half_pow(-(n as i64))
}

/// The quantum factorial `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn bracket_factorial(n: u64) -> QRat {
    (1..=n).map(bracket).product()
}

/// Determinant of a square matrix over the fraction field, by exact
/// Gaussian elimination with column pivoting. The empty matrix has
/// determinant 1. Panics if the matrix is not square.
// The elimination reads the pivot row while rewriting a lower row, so
// index loops are the clear form here.
#[allow(clippy::needless_range_loop)]
pub fn determinant(mat: &[Vec<QRat>]) -> QRat {
    let n = mat.len();
    for row in mat {
        assert_eq!(row.len(), n, "determinant requires a square matrix");
    }
    if n == 0 {
        return QRat::one();
    }
    let mut m: Vec<Vec<QRat>> = mat.to_vec();
    let mut det = QRat::one();
    let mut negate = false;
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return QRat::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            negate = !negate;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col + 1..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
            m[r][col] = QRat::zero();
        }
    }
    if negate {
        -det
    } else {
        det
    }
}

/// Test-only hook: checks two polynomials are coprime (used to assert the
/// canonical-form invariant from sibling test modules).
#[cfg(test)]
pub(crate) fn modgcd_gcd_is_one(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    modgcd::poly_gcd(a, b).is_one()
}
