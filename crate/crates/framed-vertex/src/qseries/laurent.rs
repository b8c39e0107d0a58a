//! Sparse exact Laurent polynomials in `t = q^(1/24)`.
//!
//! Everything downstream (specializations, vertex sums, Bogoliubov
//! coefficients) lives in the fraction field `Q(q^(1/24))`; this module is
//! the polynomial half of that arithmetic:
//!
//! * [`LaurentPoly`] — sparse Laurent polynomial with [`BigRational`]
//!   coefficients and `i64` exponents counted in units of `q^(1/24)`.
//! * ring operations (`+`, `-`, `*` on values and references), exact
//!   division, evaluation at a nonzero rational point, and the substitution
//!   `q -> q^(-1)`.
//!
//! Exponent convention: the stored integer exponent `e` represents
//! `q^(e/24)`. So `q` itself is `t_pow(24)`, `q^(1/2)` is `t_pow(12)`, and
//! the quantum integer `[n] = q^(n/2) - q^(-n/2)` has exponents `±12n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Raise a nonzero rational to an integer power.
pub(crate) fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    assert!(!base.is_zero(), "rat_pow: zero base");
    if exp == 0 {
        return BigRational::one();
    }
    let mag = exp.unsigned_abs() as u32;
    let powed = BigRational::new(base.numer().pow(mag), base.denom().pow(mag));
    if exp < 0 {
        powed.recip()
    } else {
        powed
    }
}

/// A sparse Laurent polynomial in `t = q^(1/24)` with exact rational
/// coefficients.
///
/// Invariants: terms are sorted by strictly increasing exponent and no
/// coefficient is zero. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// `(exponent, coefficient)` pairs, ascending exponents, no zeros.
    terms: Vec<(i64, BigRational)>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigRational::one())
    }

    /// The monomial `coeff * t^exp`; collapses to zero if `coeff` is zero.
    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        if coeff.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, coeff)],
            }
        }
    }

    /// The constant polynomial with value `c`.
    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// The constant polynomial with integer value `n`.
    pub fn from_int(n: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// Build from arbitrary `(exponent, coefficient)` pairs: sorts, merges
    /// duplicate exponents and drops zero coefficients.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in pairs {
            if c.is_zero() {
                continue;
            }
            let slot = acc.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                acc.remove(&e);
            }
        }
        LaurentPoly {
            terms: acc.into_iter().collect(),
        }
    }

    /// The `(exponent, coefficient)` pairs, ascending exponents.
    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether this is the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Lowest exponent, if nonzero.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Highest exponent, if nonzero.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Coefficient of `t^exp` (zero if absent).
    pub fn coeff_at(&self, exp: i64) -> BigRational {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Leading (highest-exponent) coefficient, if nonzero.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `self * t^k` (exponent shift).
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `self * c` for a scalar `c`.
    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// The substitution `q -> q^(-1)`, i.e. negate every exponent.
    pub fn invert_q(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    /// Evaluate at a nonzero rational point `t0`.
    ///
    /// Panics if `t0` is zero (negative exponents would divide by zero);
    /// fraction-level evaluation guards for that before calling.
    pub fn eval(&self, t0: &BigRational) -> BigRational {
        assert!(!t0.is_zero(), "LaurentPoly::eval at t = 0");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(t0, *e);
        }
        acc
    }

    /// Exact division: returns `Some(self / div)` when `div` divides `self`
    /// in the Laurent ring, `None` otherwise. Panics on a zero divisor.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "LaurentPoly::exact_div by zero");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Quotient exponents live in [self.min - div.min, self.max - div.max].
        let low_bound = self.min_exp().unwrap() - div.min_exp().unwrap();
        let (dlead_e, dlead_c) = div.terms.last().unwrap().clone();
        let mut rem = self.clone();
        let mut quo: Vec<(i64, BigRational)> = Vec::new();
        while let Some((rlead_e, rlead_c)) = rem.terms.last().cloned() {
            let qe = rlead_e - dlead_e;
            if qe < low_bound {
                return None;
            }
            let qc = rlead_c / &dlead_c;
            quo.push((qe, qc.clone()));
            rem = &rem - &div.scaled(&qc).shifted(qe);
        }
        quo.reverse();
        Some(LaurentPoly { terms: quo })
    }

    /// Positive rational `c` with `self = ±c * (integer-primitive poly)`;
    /// zero for the zero polynomial. The sign is carried so that the
    /// primitive part in [`LaurentPoly::primitive_int`] has a positive
    /// leading coefficient.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Split into `(signed_content, primitive)` with
    /// `self = signed_content * primitive`, where `primitive` has coprime
    /// integer coefficients and positive leading coefficient.
    pub fn primitive_int(&self) -> (BigRational, LaurentPoly) {
        if self.is_zero() {
            return (BigRational::zero(), LaurentPoly::zero());
        }
        let mut content = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            content = -content;
        }
        let prim = LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c / &content)).collect(),
        };
        (content, prim)
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders as a sum of `q`-powers with ascending exponents, e.g.
    /// `-q^(-1/2) + q^(1/2)` or `1 - 2*q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = fmt_q_power(*e);
            match (&power, mag.is_one()) {
                (Some(p), true) => write!(f, "{p}")?,
                (Some(p), false) => write!(f, "{mag}*{p}")?,
                (None, _) => write!(f, "{mag}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Formats `q^(e/24)` with the exponent in lowest terms; `None` for `e = 0`.
fn fmt_q_power(e: i64) -> Option<String> {
    if e == 0 {
        return None;
    }
    let g = e.unsigned_abs().gcd(&24) as i64;
    let (num, den) = (e / g, 24 / g);
    Some(match (num, den) {
        (1, 1) => "q".to_string(),
        (n, 1) => format!("q^{n}"),
        (n, d) => format!("q^({n}/{d})"),
    })
}

// ---- Add / Sub / Neg / Mul ----

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: Vec<(i64, BigRational)> =
            Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &rhs.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(rhs.terms[j..].iter().cloned());
        LaurentPoly { terms: out }
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // Single-term factors are common (prefactors q^k): shift directly.
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scaled(c).shifted(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scaled(c).shifted(*e);
        }
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                let slot = acc.entry(e).or_insert_with(BigRational::zero);
                *slot += ca * cb;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($op:ident :: $method:ident),*) => {$(
        impl std::ops::$op for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                std::ops::$op::$method(&self, &rhs)
            }
        }
        impl std::ops::$op<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                std::ops::$op::$method(&self, rhs)
            }
        }
        impl std::ops::$op<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                std::ops::$op::$method(self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

// ---- Serialization ----
//
// A polynomial serializes as a list of `[exponent, "coefficient"]` pairs in
// ascending exponent order, the coefficient rendered as an exact `p/q`
// string (`"3"`, `"-5/2"`, ...).

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.to_string()))
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i64, String)>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, s) in pairs {
            let c: BigRational = s
                .parse()
                .map_err(|_| D::Error::custom(format!("bad rational coefficient {s:?}")))?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn construction_merges_and_drops_zeros() {
        let p = LaurentPoly::from_terms(vec![(3, int(2)), (-1, int(5)), (3, int(-2))]);
        assert_eq!(p.terms(), &[(-1, int(5))]);
        assert!(LaurentPoly::monomial(7, int(0)).is_zero());
    }

    #[test]
    fn add_and_sub_cancel() {
        let a = LaurentPoly::from_terms(vec![(-12, int(-1)), (12, int(1))]);
        let b = LaurentPoly::from_terms(vec![(-12, int(1)), (0, int(3))]);
        let sum = &a + &b;
        assert_eq!(sum.terms(), &[(0, int(3)), (12, int(1))]);
        assert!((&sum - &sum).is_zero());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (t^12 - t^-12)^2 = t^24 - 2 + t^-24
        let bracket1 = LaurentPoly::from_terms(vec![(12, int(1)), (-12, int(-1))]);
        let sq = &bracket1 * &bracket1;
        assert_eq!(sq.terms(), &[(-24, int(1)), (0, int(-2)), (24, int(1))]);
    }

    #[test]
    fn exact_div_succeeds_on_multiples() {
        // (q - 1) / (q^(1/2) - 1) = q^(1/2) + 1, in t-units: exps 24,0 / 12,0.
        let qm1 = LaurentPoly::from_terms(vec![(24, int(1)), (0, int(-1))]);
        let sm1 = LaurentPoly::from_terms(vec![(12, int(1)), (0, int(-1))]);
        let quo = qm1.exact_div(&sm1).expect("divisible");
        assert_eq!(quo.terms(), &[(0, int(1)), (12, int(1))]);
        // Non-multiples return None: q - 1 is not divisible by q^(1/2) - 2.
        let no = qm1.exact_div(&LaurentPoly::from_terms(vec![(12, int(1)), (0, int(-2))]));
        assert!(no.is_none());
    }

    #[test]
    fn exact_div_handles_laurent_shifts() {
        let a = LaurentPoly::from_terms(vec![(-13, int(2)), (11, int(-2))]);
        let b = LaurentPoly::from_terms(vec![(-1, int(1))]);
        let q = a.exact_div(&b).expect("monomial divisor");
        assert_eq!(q.terms(), &[(-12, int(2)), (12, int(-2))]);
    }

    #[test]
    fn eval_at_rational_point() {
        // p = q^(1/2) - q^(-1/2) at t = 2 (so q^(1/2) = 2^12).
        let p = LaurentPoly::from_terms(vec![(12, int(1)), (-12, int(-1))]);
        let v = p.eval(&int(2));
        assert_eq!(v, int(4096) - rat(1, 4096));
    }

    #[test]
    fn invert_q_is_involutive() {
        let p = LaurentPoly::from_terms(vec![(-5, rat(2, 3)), (0, int(1)), (7, int(-4))]);
        assert_eq!(p.invert_q().invert_q(), p);
        assert_eq!(p.invert_q().min_exp(), Some(-7));
    }

    #[test]
    fn primitive_int_normalizes_sign_and_content() {
        let p = LaurentPoly::from_terms(vec![(0, rat(-2, 3)), (5, rat(-4, 3))]);
        let (content, prim) = p.primitive_int();
        assert_eq!(content, rat(-2, 3));
        assert_eq!(prim.terms(), &[(0, int(1)), (5, int(2))]);
        assert_eq!(prim.scaled(&content), p);
    }

    #[test]
    fn display_is_readable() {
        let p = LaurentPoly::from_terms(vec![(-12, int(-1)), (12, int(1))]);
        assert_eq!(p.to_string(), "-q^(-1/2) + q^(1/2)");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(
            LaurentPoly::from_terms(vec![(0, int(1)), (24, int(-2))]).to_string(),
            "1 - 2*q"
        );
    }

    #[test]
    fn serde_round_trip() {
        let p = LaurentPoly::from_terms(vec![(-3, rat(5, 7)), (24, int(-2))]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[-3,"5/7"],[24,"-2"]]"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
