//! Polynomial gcd over `Z[t]` via small-prime modular images.
//!
//! Fraction canonicalization reduces by the gcd of numerator and denominator
//! polynomials; in the sweeps this is the single hottest operation, and the
//! common case by far is a *trivial* gcd. The strategy:
//!
//! 1. take primitive parts and strip `t`-shifts (units of the Laurent ring);
//! 2. compress by the joint exponent-step gcd — operands here live on coarse
//!    exponent lattices (quantum integers sit on the 12-step grid of
//!    `q^(1/2)`), so dense degrees shrink by an order of magnitude or two;
//! 3. probe with one 62-bit prime: a degree-0 gcd image proves the true gcd
//!    is constant (the prime never divides either leading coefficient, so
//!    the modular image can only *gain* degree);
//! 4. otherwise run the classical modular gcd: monic images scaled by the
//!    leading-coefficient gcd, balanced CRT lifting, and certification by
//!    exact trial division over `Z`.
//!
//! Compression in step 2 is sound: for polynomials in `t^g`, common complex
//! roots (with multiplicity) of the decompressed pair are exactly the g-th
//! roots of common roots of the compressed pair, so the gcd of the
//! decompressed pair is the decompressed gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::LaurentPoly;

/// Primitive gcd (positive leading coefficient, lowest exponent 0) of the
/// primitive parts of `a` and `b`. Contents and `t`-powers are units of the
/// coefficient field and are ignored. `gcd(0, b)` is the normalized
/// primitive part of `b`.
pub(crate) fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return LaurentPoly::zero(),
        (true, false) => return normalized_primitive(b),
        (false, true) => return normalized_primitive(a),
        _ => {}
    }
    let sa = normalized_primitive(a);
    let sb = normalized_primitive(b);
    // A constant (after shift-stripping, a single term is the constant term)
    // is a unit up to content.
    if sa.term_count() == 1 || sb.term_count() == 1 {
        return LaurentPoly::one();
    }
    // Joint exponent-lattice compression.
    let mut step: i64 = 0;
    for (e, _) in sa.terms().iter().chain(sb.terms()) {
        step = step.gcd(e);
    }
    debug_assert!(step >= 1);
    let da = dense_int(&sa, step);
    let db = dense_int(&sb, step);
    let g = gcd_dense(&da, &db);
    LaurentPoly::from_terms(
        g.into_iter()
            .enumerate()
            .map(|(i, c)| (i as i64 * step, BigRational::from_integer(c))),
    )
}

/// Primitive part of `p`, shifted so the lowest exponent is 0, with a
/// positive leading coefficient.
fn normalized_primitive(p: &LaurentPoly) -> LaurentPoly {
    let (_, prim) = p.primitive_int();
    let shift = prim.min_exp().unwrap_or(0);
    prim.shifted(-shift)
}

/// Dense integer coefficients of a shift-stripped primitive polynomial whose
/// exponents are multiples of `step`; index `i` holds the coefficient of
/// `t^(i*step)`.
fn dense_int(p: &LaurentPoly, step: i64) -> Vec<BigInt> {
    let len = (p.max_exp().unwrap() / step + 1) as usize;
    let mut out = vec![BigInt::zero(); len];
    for (e, c) in p.terms() {
        debug_assert!(e % step == 0 && c.denom().is_one());
        out[(e / step) as usize] = c.numer().clone();
    }
    out
}

/// Modular gcd of two dense integer polynomials (lowest-first coefficients,
/// nonzero leading coefficients). Returns the primitive gcd with positive
/// leading coefficient.
fn gcd_dense(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lc_a = a.last().unwrap();
    let lc_b = b.last().unwrap();
    let gamma: BigInt = lc_a.gcd(lc_b);

    // CRT state for images of matching (minimal) degree.
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut combined: Vec<BigInt> = Vec::new();
    let mut prev_candidate: Option<Vec<BigInt>> = None;

    let mut primes_used = 0usize;
    let mut candidate_prime = (1u64 << 62) - 1;
    while primes_used < 200 {
        let p = next_prime_below(&mut candidate_prime);
        if (lc_a % p).is_zero() || (lc_b % p).is_zero() {
            continue;
        }
        primes_used += 1;
        let ga = reduce_mod(a, p);
        let gb = reduce_mod(b, p);
        let image = gf_gcd_monic(ga, gb, p);
        let deg = image.len() - 1;
        if deg == 0 {
            // The modular image can only overstate the gcd degree, so a
            // constant image certifies coprimality.
            return vec![BigInt::one()];
        }
        if deg < best_deg {
            // Fresh (or luckier) image: restart the lift from scratch.
            best_deg = deg;
            let gamma_p = bigint_mod_u64(&gamma, p);
            combined = image
                .iter()
                .map(|&c| balance(BigInt::from(mulmod(c, gamma_p, p)), &BigInt::from(p)))
                .collect();
            modulus = BigInt::from(p);
            prev_candidate = None;
        } else if deg > best_deg {
            // Unlucky prime; ignore.
            continue;
        } else {
            let gamma_p = bigint_mod_u64(&gamma, p);
            let new_modulus = &modulus * BigInt::from(p);
            for (c, &im) in combined.iter_mut().zip(image.iter()) {
                let r = mulmod(im, gamma_p, p);
                *c = crt_step(c, &modulus, r, p, &new_modulus);
            }
            modulus = new_modulus;
        }
        let candidate = primitive_positive(&combined);
        let stable = prev_candidate.as_deref() == Some(candidate.as_slice());
        prev_candidate = Some(candidate.clone());
        // Certify by exact division (also catches the single-prime case).
        if (stable || primes_used == 1)
            && divides_exactly(a, &candidate)
            && divides_exactly(b, &candidate)
        {
            return candidate;
        }
    }
    unreachable!("modular gcd failed to stabilize within 200 primes");
}

/// Primitive part with positive leading coefficient.
fn primitive_positive(v: &[BigInt]) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in v {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return vec![BigInt::zero()];
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    v.iter().map(|c| c / &content).collect()
}

/// Whether the primitive polynomial `g` divides `a` exactly over `Z`
/// (dense long division with integrality checks at every step).
fn divides_exactly(a: &[BigInt], g: &[BigInt]) -> bool {
    if g.len() == 1 {
        return true; // primitive constant is ±1
    }
    if a.len() < g.len() {
        return false;
    }
    let lc = g.last().unwrap();
    let mut rem: Vec<BigInt> = a.to_vec();
    for top in (g.len() - 1..a.len()).rev() {
        let (q, r) = rem[top].div_rem(lc);
        if !r.is_zero() {
            return false;
        }
        if q.is_zero() {
            continue;
        }
        let base = top - (g.len() - 1);
        for (i, gc) in g.iter().enumerate() {
            let prod = gc * &q;
            rem[base + i] -= prod;
        }
        debug_assert!(rem[top].is_zero());
    }
    rem.iter().take(g.len() - 1).all(|c| c.is_zero())
}

// ---- balanced CRT ----

/// Balanced representative of `x` modulo `m` (in `(-m/2, m/2]`).
fn balance(x: BigInt, m: &BigInt) -> BigInt {
    let mut r = x.mod_floor(m);
    if &r + &r > *m {
        r -= m;
    }
    r
}

/// Combine `x ≡ c (mod m)` with `x ≡ r (mod p)`, returning the balanced
/// representative modulo `new_modulus = m * p`.
fn crt_step(c: &BigInt, m: &BigInt, r: u64, p: u64, new_modulus: &BigInt) -> BigInt {
    let c_mod_p = bigint_mod_u64(c, p);
    let m_mod_p = bigint_mod_u64(m, p);
    let delta = submod(r, c_mod_p, p);
    let lift = mulmod(delta, gf_inv(m_mod_p, p), p);
    balance(c + m * BigInt::from(lift), new_modulus)
}

/// `x mod p` as `u64` (result in `[0, p)`).
fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

// ---- GF(p) polynomial arithmetic (dense, lowest-first) ----

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|c| bigint_mod_u64(c, p)).collect();
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn gf_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

/// In-place remainder `u mod v` in GF(p)[x]; `v` is nonconstant or constant.
fn gf_rem(u: &mut Vec<u64>, v: &[u64], p: u64) {
    let dv = v.len() - 1;
    if dv == 0 {
        u.clear();
        u.push(0);
        return;
    }
    let inv_lead = gf_inv(v[dv], p);
    while u.len() > dv {
        let du = u.len() - 1;
        let factor = mulmod(u[du], inv_lead, p);
        if factor != 0 {
            let base = du - dv;
            for (i, &vc) in v.iter().enumerate() {
                let sub = mulmod(factor, vc, p);
                u[base + i] = submod(u[base + i], sub, p);
            }
        }
        debug_assert_eq!(*u.last().unwrap(), 0);
        u.pop();
        while u.len() > 1 && *u.last().unwrap() == 0 {
            u.pop();
        }
        if u.len() == 1 && u[0] == 0 {
            u.clear();
            return;
        }
    }
}

/// Monic gcd in GF(p)[x]; inputs nonzero after reduction (leading
/// coefficients of the global operands are units mod p).
fn gf_gcd_monic(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    loop {
        if b.is_empty() || (b.len() == 1 && b[0] == 0) {
            let inv = gf_inv(*a.last().unwrap(), p);
            return a.iter().map(|&c| mulmod(c, inv, p)).collect();
        }
        gf_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
        if b.is_empty() {
            b.push(0);
        }
    }
}

// ---- prime generation ----

/// Deterministic Miller–Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sp {
            return true;
        }
        if n.is_multiple_of(sp) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `*candidate`, updating the cursor so
/// successive calls walk downward through distinct primes.
fn next_prime_below(candidate: &mut u64) -> u64 {
    let mut c = *candidate;
    if c.is_multiple_of(2) {
        c -= 1;
    }
    while !is_prime_u64(c) {
        c -= 2;
    }
    *candidate = c - 2;
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    #[test]
    fn coprime_polys_probe_to_one() {
        // [1] and q^(1/2) + q^(-1/2) share no factor.
        let a = poly(&[(-12, -1), (12, 1)]);
        let b = poly(&[(-12, 1), (12, 1)]);
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn shared_bracket_factor_is_found() {
        // [2] = [1] * (q^(1/2) + q^(-1/2)), so [1]^2 divides [2][1] and
        // gcd([2][1], [1]^2) = [1]^2; anchored at exponent 0 that is
        // (q - 1)^2 = 1 - 2q + q^2.
        let b1 = poly(&[(-12, -1), (12, 1)]);
        let b2 = poly(&[(-24, -1), (24, 1)]);
        let prod = &b1 * &b2;
        let sq = &b1 * &b1;
        let g = poly_gcd(&prod, &sq);
        assert_eq!(g, poly(&[(0, 1), (24, -2), (48, 1)]));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let a = poly(&[(-13, -2), (11, 2)]);
        let g = poly_gcd(&a, &LaurentPoly::zero());
        assert_eq!(g, poly(&[(0, -1), (24, 1)]));
    }

    #[test]
    fn multiplicities_are_respected() {
        let b1 = poly(&[(-12, -1), (12, 1)]);
        let cube = &(&b1 * &b1) * &b1;
        let sq = &b1 * &b1;
        let g = poly_gcd(&cube, &sq);
        assert_eq!(g, poly(&[(0, 1), (24, -2), (48, 1)]));
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        // (huge*x + 1)(x - 1) and (huge*x + 1)(x + 1) share huge*x + 1 where
        // huge exceeds one 62-bit prime's balanced range.
        let huge: BigInt = BigInt::from(u128::MAX) * BigInt::from(u128::MAX);
        let shared = LaurentPoly::from_terms(vec![
            (24, BigRational::from_integer(huge)),
            (0, BigRational::one()),
        ]);
        let a = &shared * &poly(&[(24, 1), (0, -1)]);
        let b = &shared * &poly(&[(24, 1), (0, 1)]);
        assert_eq!(poly_gcd(&a, &b), shared);
    }

    #[test]
    fn primes_are_generated_downward() {
        let mut cursor = (1u64 << 62) - 1;
        let p1 = next_prime_below(&mut cursor);
        let p2 = next_prime_below(&mut cursor);
        assert!(p1 > p2 && is_prime_u64(p1) && is_prime_u64(p2));
    }
}
