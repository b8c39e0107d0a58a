//! Principal specializations of symmetric functions.
//!
//! A [`Spec`] assigns the variables `x_i = q^(lambda_i - i + 1/2)` for a
//! finite shift partition `lambda` (empty shift = the staircase
//! specialization), optionally composed with `q -> q^(-1)`. The module
//! evaluates symmetric functions there, exactly:
//!
//! * [`power_sum_at`] — `p_n` in closed form (finite corrections plus
//!   `1/[n]`).
//! * [`elementary_at`] / [`complete_at`] — `e_k`, `h_k` via the product
//!   formula for the generating series and the reciprocal relation
//!   `H(z) E(-z) = 1`.
//! * [`schur_at`] / [`skew_schur_at`] — Jacobi–Trudi determinants in the
//!   `h_k` values (valid under any evaluation homomorphism), memoized.
//! * [`schur_at_rho`] — closed hook-product form at the staircase point.
//! * [`hook_schur_at`], [`schur_hook_det`], [`skew_schur_hook_det`] — hook
//!   expansions and the bordered determinant in Frobenius coordinates.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::partitions::Partition;
use crate::qseries::{bracket, bracket_factorial, determinant, QRat};

/// A principal specialization point: `x_i = q^(shift_i - i + 1/2)`,
/// optionally followed by the substitution `q -> q^(-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Spec {
    /// Finite shift partition (`lambda` in `q^(lambda + rho)`).
    pub shift: Partition,
    /// Whether to substitute `q -> q^(-1)` in every value.
    pub inverted: bool,
}

impl Spec {
    /// The staircase point `q^rho`: `x_i = q^(-i + 1/2)`.
    pub fn rho() -> Self {
        Spec {
            shift: Partition::empty(),
            inverted: false,
        }
    }

    /// The inverse staircase point `q^(-rho)`: `x_i = q^(i - 1/2)`.
    pub fn neg_rho() -> Self {
        Spec {
            shift: Partition::empty(),
            inverted: true,
        }
    }

    /// The shifted point `q^(lambda + rho)`.
    pub fn shifted(lambda: Partition) -> Self {
        Spec {
            shift: lambda,
            inverted: false,
        }
    }

    /// The inverted shifted point `q^(-lambda - rho)`.
    pub fn shifted_inverted(lambda: Partition) -> Self {
        Spec {
            shift: lambda,
            inverted: true,
        }
    }
}

impl std::fmt::Display for Spec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.shift.is_empty(), self.inverted) {
            (true, false) => write!(f, "q^rho"),
            (true, true) => write!(f, "q^-rho"),
            (false, false) => write!(f, "q^({}+rho)", self.shift),
            (false, true) => write!(f, "q^-({}+rho)", self.shift),
        }
    }
}

/// `p_n` at the specialization, `n >= 1`: the tail contributes `1/[n]` and
/// each shifted row a finite correction.
pub fn power_sum_at(spec: &Spec, n: u64) -> QRat {
    assert!(n >= 1, "power sums are indexed from 1");
    let n_i = n as i64;
    let mut acc = bracket(n).inv().expect("[n] is nonzero");
    for (i, &lam) in spec.shift.parts().iter().enumerate() {
        let row = i as i64 + 1;
        // q^(n(lambda_i - i + 1/2)) - q^(n(-i + 1/2)).
        acc = &acc
            + &(QRat::q_half_pow(n_i * (2 * lam as i64 - 2 * row + 1))
                - QRat::q_half_pow(n_i * (1 - 2 * row)));
    }
    if spec.inverted {
        acc.invert_q()
    } else {
        acc
    }
}

/// `e_k` at the specialization (`0` for `k < 0`, `1` for `k = 0`).
pub fn elementary_at(spec: &Spec, k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    if k == 0 {
        return QRat::one();
    }
    tables(spec, k as usize).0[k as usize].clone()
}

/// `h_k` at the specialization (`0` for `k < 0`, `1` for `k = 0`).
pub fn complete_at(spec: &Spec, k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    if k == 0 {
        return QRat::one();
    }
    tables(spec, k as usize).1[k as usize].clone()
}

/// Closed form at the staircase point: `s_mu(q^rho) = q^(kappa(mu)/4) /
/// prod_cells [hook]`.
pub fn schur_at_rho(mu: &Partition) -> QRat {
    let mut den = QRat::one();
    for h in mu.hooks() {
        den = &den * &bracket(h);
    }
    &QRat::q_quarter_pow(mu.kappa()) / &den
}

/// `s_mu` at the specialization, by the Jacobi–Trudi determinant
/// `det(h_(mu_i - i + j))`. Memoized process-wide.
pub fn schur_at(spec: &Spec, mu: &Partition) -> QRat {
    skew_schur_at(spec, mu, &Partition::empty())
}

/// `s_(outer/inner)` at the specialization, by the skew Jacobi–Trudi
/// determinant `det(h_(outer_i - inner_j - i + j))`; zero when the shapes do
/// not nest. Memoized process-wide.
pub fn skew_schur_at(spec: &Spec, outer: &Partition, inner: &Partition) -> QRat {
    if !outer.contains(inner) {
        return QRat::zero();
    }
    if outer == inner {
        return QRat::one();
    }
    static CACHE: OnceLock<DashMap<(Spec, Partition, Partition), QRat>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    let key = (spec.clone(), outer.clone(), inner.clone());
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let ell = outer.len();
    let mat: Vec<Vec<QRat>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| {
                    let idx = outer.part(i) as i64 - inner.part(j) as i64 - i as i64 + j as i64;
                    complete_at(spec, idx)
                })
                .collect()
        })
        .collect();
    let value = determinant(&mat);
    cache.insert(key, value.clone());
    value
}

/// The hook Schur value `s_(m|n)` at the specialization via the alternating
/// `h`/`e` expansion `sum_j (-1)^j h_(m+1+j) e_(n-j)`; zero for negative
/// coordinates.
pub fn hook_schur_at(spec: &Spec, m: i64, n: i64) -> QRat {
    if m < 0 || n < 0 {
        return QRat::zero();
    }
    let mut acc = QRat::zero();
    for j in 0..=n {
        let term = &complete_at(spec, m + 1 + j) * &elementary_at(spec, n - j);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// `s_mu` at the specialization by the Frobenius-coordinate hook
/// determinant `det(s_(m_i|n_j))`.
pub fn schur_hook_det(spec: &Spec, mu: &Partition) -> QRat {
    let fr = mu.frobenius();
    let k = fr.len();
    let mat: Vec<Vec<QRat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| hook_schur_at(spec, fr.m[i], fr.n[j]))
                .collect()
        })
        .collect();
    determinant(&mat)
}

/// `s_(outer/inner)` at the specialization by the bordered hook determinant
/// in Frobenius coordinates: with `outer = (m | n)` of diagonal length `k`
/// and `inner = (s | t)` of diagonal length `r`,
///
/// ```text
/// s_(outer/inner) = (-1)^r det [ s_(m_i|n_j)   h_(m_i - s_j) ]
///                              [ e_(n_j - t_i)      0        ]
/// ```
///
/// (top-left `k x k`, top-right `k x r`, bottom-left `r x k`).
// The block structure is clearest with explicit row/column offsets.
#[allow(clippy::needless_range_loop)]
pub fn skew_schur_hook_det(spec: &Spec, outer: &Partition, inner: &Partition) -> QRat {
    let fo = outer.frobenius();
    let fi = inner.frobenius();
    let (k, r) = (fo.len(), fi.len());
    if r > k {
        // More diagonal cells in the inner shape: the shapes cannot nest.
        return QRat::zero();
    }
    let dim = k + r;
    let mut mat = vec![vec![QRat::zero(); dim]; dim];
    for i in 0..k {
        for j in 0..k {
            mat[i][j] = hook_schur_at(spec, fo.m[i], fo.n[j]);
        }
        for j in 0..r {
            mat[i][k + j] = complete_at(spec, fo.m[i] - fi.m[j]);
        }
    }
    for i in 0..r {
        for j in 0..k {
            mat[k + i][j] = elementary_at(spec, fo.n[j] - fi.n[i]);
        }
    }
    let det = determinant(&mat);
    if r % 2 == 0 {
        det
    } else {
        -det
    }
}

// ---- e/h tables ----

type Tables = Arc<(Vec<QRat>, Vec<QRat>)>;

/// Memoized `(e, h)` value tables for a specialization, long enough to index
/// `need`.
fn tables(spec: &Spec, need: usize) -> Tables {
    static CACHE: OnceLock<DashMap<Spec, Tables>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    if let Some(t) = cache.get(spec) {
        if t.0.len() > need {
            return t.clone();
        }
    }
    let order = need.max(23) + 1;
    let built: Tables = Arc::new(build_tables(spec, order));
    cache.insert(spec.clone(), built.clone());
    built
}

/// Compute `e_0..e_order` and `h_0..h_order` at the specialization.
///
/// The generating series factors as a finite correction times the staircase
/// base: `E(z) = prod_(i<=l) (1 + z q^(shift_i-i+1/2)) / (1 + z q^(-i+1/2))
/// * E_rho(z)` with the closed form `e_n(q^rho) = q^(-n(n-1)/4) / [n]!`;
/// `h` then follows from `H(z) E(-z) = 1`.
fn build_tables(spec: &Spec, order: usize) -> (Vec<QRat>, Vec<QRat>) {
    let mut e: Vec<QRat> = Vec::with_capacity(order + 1);
    e.push(QRat::one());
    for n in 1..=order {
        let n = n as i64;
        let base = &QRat::t_pow(-6 * n * (n - 1))
            * &bracket_factorial(n as u64)
                .inv()
                .expect("factorial nonzero");
        e.push(base);
    }
    for (i, &lam) in spec.shift.parts().iter().enumerate() {
        let row = i as i64 + 1;
        let a = QRat::q_half_pow(2 * lam as i64 - 2 * row + 1);
        let b = QRat::q_half_pow(1 - 2 * row);
        // e <- e * (1 + a z).
        for kk in (1..=order).rev() {
            let add = &a * &e[kk - 1];
            e[kk] = &e[kk] + &add;
        }
        // e <- e / (1 + b z) (forward recursion).
        for kk in 1..=order {
            let sub = &b * &e[kk - 1];
            e[kk] = &e[kk] - &sub;
        }
    }
    if spec.inverted {
        for v in e.iter_mut() {
            *v = v.invert_q();
        }
    }
    // h_n = sum_(k=1..n) (-1)^(k+1) e_k h_(n-k).
    let mut h: Vec<QRat> = Vec::with_capacity(order + 1);
    h.push(QRat::one());
    for n in 1..=order {
        let mut acc = QRat::zero();
        for k in 1..=n {
            let term = &e[k] * &h[n - k];
            acc = if k % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        h.push(acc);
    }
    (e, h)
}
