//! Canonical elements of the fraction field `Q(q^(1/24))`.
//!
//! * [`QRat`] — a reduced fraction of [`LaurentPoly`]s in a *canonical form*
//!   chosen so that equality of values is structural equality:
//!   - numerator and denominator share no nonconstant polynomial factor;
//!   - the denominator has lowest exponent 0 (nonzero constant term),
//!     coprime integer coefficients, and positive leading coefficient;
//!   - zero is `0/1`.
//! * arithmetic (`+`, `-`, `*`, `/`, powers) that keeps fractions reduced
//!   using the classical small-gcd scheme: reduced inputs need only gcds of
//!   the *denominators* (addition) or cross gcds (multiplication), never a
//!   full gcd of the blown-up result.
//! * `q -> q^(-1)` inversion and exact evaluation at rational sample points.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::LaurentPoly;
use super::modgcd::poly_gcd;

/// Errors from fraction construction and division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum QRatError {
    /// Attempted to divide by the zero value or build a fraction with a
    /// zero denominator.
    #[error("division by zero in Q(q^(1/24))")]
    DivisionByZero,
}

/// Errors from evaluating at a rational sample point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    /// Laurent polynomials cannot be evaluated at 0.
    #[error("evaluation point must be nonzero")]
    ZeroPoint,
    /// The denominator vanishes at the chosen point; pick another.
    #[error("denominator vanishes at the sample point; resample")]
    DenominatorVanishes,
}

/// A value in the fraction field `Q(q^(1/24))`, always in canonical form.
///
/// Because the form is canonical, `==` (structural equality) is equality of
/// field values; `QRat` is also `Hash`, so values can key memo tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QRat {
    /// Build `num / den`, fully reduced. Errors if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QRatError> {
        if den.is_zero() {
            return Err(QRatError::DivisionByZero);
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            Ok(Self::normalize_unit(num, den))
        } else {
            Ok(Self::normalize_unit(
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            ))
        }
    }

    /// Canonicalize a fraction already known to be reduced: anchor the
    /// denominator at exponent 0, make it integer-primitive with positive
    /// leading coefficient, and push the adjusting unit into the numerator.
    fn normalize_unit(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QRat {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        let shift = den.min_exp().unwrap();
        let den = den.shifted(-shift);
        let num = num.shifted(-shift);
        let (content, den) = den.primitive_int();
        let num = num.scaled(&content.recip());
        QRat { num, den }
    }

    /// The zero value.
    pub fn zero() -> Self {
        QRat {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    /// The unit value.
    pub fn one() -> Self {
        QRat {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    /// The integer `n` as a constant.
    pub fn from_int(n: i64) -> Self {
        QRat {
            num: LaurentPoly::from_int(n),
            den: LaurentPoly::one(),
        }
    }

    /// A rational constant.
    pub fn from_rational(c: BigRational) -> Self {
        QRat {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    /// A polynomial as a fraction with denominator 1.
    pub fn from_poly(p: LaurentPoly) -> Self {
        QRat {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// The monomial `t^e = q^(e/24)`.
    pub fn t_pow(e: i64) -> Self {
        QRat::from_poly(LaurentPoly::monomial(e, BigRational::one()))
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        QRat::t_pow(24 * n)
    }

    /// `q^(n/2)`.
    pub fn q_half_pow(n: i64) -> Self {
        QRat::t_pow(12 * n)
    }

    /// `q^(n/4)` (framing weights use quarter-integer powers).
    pub fn q_quarter_pow(n: i64) -> Self {
        QRat::t_pow(6 * n)
    }

    /// Numerator of the canonical form.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator of the canonical form.
    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// Whether the value is zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the value is one.
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether the value is a Laurent polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<QRat, QRatError> {
        if self.is_zero() {
            return Err(QRatError::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    /// Checked division; errors on a zero divisor.
    pub fn try_div(&self, rhs: &QRat) -> Result<QRat, QRatError> {
        Ok(self * &rhs.inv()?)
    }

    /// `self^n` for any integer `n`; panics on `0^n` with `n < 0`.
    pub fn pow(&self, n: i64) -> QRat {
        if n == 0 {
            return QRat::one();
        }
        let base = if n < 0 {
            self.inv().expect("pow: negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = QRat::one();
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// The substitution `q -> q^(-1)` (an involutive field automorphism).
    pub fn invert_q(&self) -> QRat {
        Self::normalize_unit(self.num.invert_q(), self.den.invert_q())
    }

    /// Exact evaluation at `t = t0` (sampled pre-filtering); errors when the
    /// point is zero or the denominator vanishes there.
    pub fn eval_at(&self, t0: &BigRational) -> Result<BigRational, EvalError> {
        if t0.is_zero() {
            return Err(EvalError::ZeroPoint);
        }
        let dv = self.den.eval(t0);
        if dv.is_zero() {
            return Err(EvalError::DenominatorVanishes);
        }
        Ok(self.num.eval(t0) / dv)
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

impl From<LaurentPoly> for QRat {
    fn from(p: LaurentPoly) -> Self {
        QRat::from_poly(p)
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

// ---- Add / Sub / Mul / Div / Neg ----

impl std::ops::Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Accumulations usually share a denominator: one gcd with the sum.
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if num.is_zero() {
                return QRat::zero();
            }
            let g = poly_gcd(&num, &self.den);
            if g.is_one() {
                return QRat::normalize_unit(num, self.den.clone());
            }
            return QRat::normalize_unit(
                num.exact_div(&g).expect("gcd divides"),
                self.den.exact_div(&g).expect("gcd divides"),
            );
        }
        let g1 = poly_gcd(&self.den, &rhs.den);
        if g1.is_one() {
            // Coprime denominators: the result is automatically reduced.
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return QRat::normalize_unit(num, den);
        }
        let dp = rhs.den.exact_div(&g1).expect("gcd divides");
        let bp = self.den.exact_div(&g1).expect("gcd divides");
        let t = &(&self.num * &dp) + &(&rhs.num * &bp);
        if t.is_zero() {
            return QRat::zero();
        }
        // Any residual common factor of t with the full denominator b*dp
        // divides g1, so one more small gcd finishes the reduction.
        let g2 = poly_gcd(&t, &g1);
        if g2.is_one() {
            QRat::normalize_unit(t, &self.den * &dp)
        } else {
            QRat::normalize_unit(
                t.exact_div(&g2).expect("gcd divides"),
                &self.den.exact_div(&g2).expect("gcd divides") * &dp,
            )
        }
    }
}

impl std::ops::Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        // Cross-cancel first; the product of the reduced pieces is reduced.
        let g_ad = poly_gcd(&self.num, &rhs.den);
        let g_cb = poly_gcd(&rhs.num, &self.den);
        let (na, db) = if g_ad.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.exact_div(&g_ad).expect("gcd divides"),
                rhs.den.exact_div(&g_ad).expect("gcd divides"),
            )
        };
        let (nc, da) = if g_cb.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.exact_div(&g_cb).expect("gcd divides"),
                self.den.exact_div(&g_cb).expect("gcd divides"),
            )
        };
        QRat::normalize_unit(&na * &nc, &da * &db)
    }
}

impl std::ops::Div for &QRat {
    type Output = QRat;
    /// Panics on a zero divisor; use [`QRat::try_div`] to handle that case.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QRat) -> QRat {
        self * &rhs.inv().expect("QRat division by zero")
    }
}

macro_rules! forward_qrat_ops {
    ($($op:ident :: $method:ident),*) => {$(
        impl std::ops::$op for QRat {
            type Output = QRat;
            fn $method(self, rhs: QRat) -> QRat {
                std::ops::$op::$method(&self, &rhs)
            }
        }
        impl std::ops::$op<&QRat> for QRat {
            type Output = QRat;
            fn $method(self, rhs: &QRat) -> QRat {
                std::ops::$op::$method(&self, rhs)
            }
        }
        impl std::ops::$op<QRat> for &QRat {
            type Output = QRat;
            fn $method(self, rhs: QRat) -> QRat {
                std::ops::$op::$method(self, &rhs)
            }
        }
    )*};
}
forward_qrat_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl std::ops::Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |acc, x| &acc * &x)
    }
}

// ---- Serialization ----
//
// `{"num": [[exp, "coeff"], ...], "den": [...]}` with ascending exponents in
// units of q^(1/24). Deserialization re-canonicalizes, so round-trips are
// identities and hand-written inputs normalize safely.

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("QRat", 2)?;
        s.serialize_field("num", &self.num)?;
        s.serialize_field("den", &self.den)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: LaurentPoly,
            den: LaurentPoly,
        }
        let raw = Raw::deserialize(deserializer)?;
        QRat::new(raw.num, raw.den).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    /// `[n] = q^(n/2) - q^(-n/2)` as a raw polynomial.
    fn bracket_poly(n: i64) -> LaurentPoly {
        poly(&[(-12 * n, -1), (12 * n, 1)])
    }

    fn assert_canonical(x: &QRat) {
        if x.is_zero() {
            assert!(x.den().is_one());
            return;
        }
        assert_eq!(x.den().min_exp(), Some(0));
        let (content, prim) = x.den().primitive_int();
        assert_eq!(content, int(1), "denominator not integer-primitive");
        assert_eq!(&prim, x.den());
        assert!(crate::qseries::modgcd_gcd_is_one(x.num(), x.den()));
    }

    #[test]
    fn construction_reduces_to_canonical_form() {
        // (q - 1)/(q^(1/2) - 1) = q^(1/2) + 1.
        let q_minus_1 = poly(&[(24, 1), (0, -1)]);
        let half_minus_1 = poly(&[(12, 1), (0, -1)]);
        let v = QRat::new(q_minus_1, half_minus_1).unwrap();
        assert_eq!(v, QRat::from_poly(poly(&[(0, 1), (12, 1)])));
        assert_canonical(&v);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            QRat::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(QRatError::DivisionByZero)
        );
    }

    #[test]
    fn denominator_unit_normalization() {
        // 1 / (-2 q^(-1) [1]) has denominator anchored at 0, primitive,
        // positive leading coefficient.
        let den = bracket_poly(1).scaled(&int(-2)).shifted(-24);
        let v = QRat::new(LaurentPoly::one(), den).unwrap();
        assert_canonical(&v);
        assert_eq!(v.den(), &poly(&[(0, -1), (24, 1)]));
        assert_eq!(
            v.num(),
            &LaurentPoly::monomial(36, -BigRational::new(BigInt::from(1), BigInt::from(2)))
        );
    }

    #[test]
    fn field_algebra_holds() {
        let a = QRat::new(LaurentPoly::one(), bracket_poly(1)).unwrap();
        let b = QRat::new(bracket_poly(3), bracket_poly(2)).unwrap();
        let c = QRat::t_pow(-7);
        // (a + b) - b == a, (a * b) / b == a, distributivity sample.
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        for v in [&a + &b, &a * &b, &a / &b, &a - &b] {
            assert_canonical(&v);
        }
    }

    #[test]
    fn addition_over_shared_bracket_factors_cancels() {
        // 1/([2][1]) - 1/([2][1]) hits the shared-denominator path; and
        // 1/([1][2]) + 1/([1][3]) needs the denominator gcd [1].
        let x = QRat::new(LaurentPoly::one(), &bracket_poly(1) * &bracket_poly(2)).unwrap();
        let y = QRat::new(LaurentPoly::one(), &bracket_poly(1) * &bracket_poly(3)).unwrap();
        assert!((&x - &x).is_zero());
        let s = &x + &y;
        assert_canonical(&s);
        // Value check: s * [1][2][3] = [3] + [2] (the unreduced cross sum;
        // the canonical denominator itself is smaller because [3] + [2]
        // shares cyclotomic factors with [1][2][3]).
        let b123 = QRat::from_poly(&(&bracket_poly(1) * &bracket_poly(2)) * &bracket_poly(3));
        let cross = QRat::from_poly(&bracket_poly(3) + &bracket_poly(2));
        assert_eq!(&s * &b123, cross);
    }

    #[test]
    fn pow_and_inv() {
        let b = QRat::new(LaurentPoly::one(), bracket_poly(2)).unwrap();
        assert_eq!(b.pow(0), QRat::one());
        assert_eq!(b.pow(3), &(&b * &b) * &b);
        assert_eq!(b.pow(-2), b.inv().unwrap().pow(2));
        assert_eq!(&b.pow(-2) * &b.pow(2), QRat::one());
    }

    #[test]
    fn invert_q_is_an_automorphism() {
        let a = QRat::new(bracket_poly(3), bracket_poly(1)).unwrap();
        let b = QRat::new(LaurentPoly::one(), bracket_poly(2)).unwrap();
        let lhs = (&a * &b).invert_q();
        let rhs = &a.invert_q() * &b.invert_q();
        assert_eq!(lhs, rhs);
        assert_eq!(a.invert_q().invert_q(), a);
        // [n](q^(-1)) = -[n].
        let br = QRat::from_poly(bracket_poly(5));
        assert_eq!(br.invert_q(), -&br);
    }

    #[test]
    fn eval_at_detects_denominator_roots() {
        let v = QRat::new(LaurentPoly::one(), bracket_poly(1)).unwrap();
        // [1] vanishes at t = 1.
        assert_eq!(v.eval_at(&int(1)), Err(EvalError::DenominatorVanishes));
        assert_eq!(v.eval_at(&int(0)), Err(EvalError::ZeroPoint));
        let at2 = v.eval_at(&int(2)).unwrap();
        assert_eq!(
            at2,
            (int(4096) - BigRational::new(BigInt::from(1), BigInt::from(4096))).recip()
        );
    }

    #[test]
    #[should_panic(expected = "QRat division by zero")]
    fn division_by_zero_panics() {
        let _ = &QRat::one() / &QRat::zero();
    }

    #[test]
    fn serde_round_trip_preserves_canonical_values() {
        let v = QRat::new(bracket_poly(3), &bracket_poly(2) * &bracket_poly(2)).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        let back: QRat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        // Deserialization canonicalizes hand-written non-reduced input.
        let raw = r#"{"num":[[0,"2"],[24,"2"]],"den":[[0,"2"]]}"#;
        let w: QRat = serde_json::from_str(raw).unwrap();
        assert_eq!(w, QRat::from_poly(poly(&[(0, 1), (24, 1)])));
    }
}
