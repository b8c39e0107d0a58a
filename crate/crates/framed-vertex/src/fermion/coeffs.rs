//! The Bogoliubov coefficients `A^{ij}_{mn}(q; a)`.
//!
//! Three channel shapes cover every leg count:
//!
//! * diagonal `(i, i)`:
//!   `(−1)^n q^{(2a_i+1)(m(m+1)−n(n+1))/4} / ([m+n+1][m]![n]!)`;
//! * plus `(i, i+1)` (cyclically):
//!   `(−1)^n q^{[(2a_i+1)m(m+1)−(2a_{i+1}+1)n(n+1)]/4 + 1/6}
//!    Σ_{l=0}^{min(m,n)} q^{(l+1)(m+n−l)/2} / ([m−l]![n−l]!)`;
//! * minus `(i, i−1)` (cyclically):
//!   `−(−1)^n q^{[(2a_i+1)m(m+1)−(2a_{i−1}+1)n(n+1)]/4 − 1/6}
//!    Σ_{l=0}^{min(m,n)} q^{−(l+1)(m+n−l)/2} / ([m−l]![n−l]!)`.
//!
//! With one leg only the diagonal channel exists and reduces to
//! `(−1)^n q^{a κ_{(m|n)}/2} s_{(m|n)}(q^ρ)`. With two legs the channels
//! are `(1,1)`, `(2,2)` diagonal, `(1,2)` plus, and `(2,1)` minus. With
//! three legs the column index wraps cyclically (`A^{34} = A^{31}`,
//! `A^{10} = A^{13}`).

use dashmap::DashMap;

use crate::qseries::{bracket, bracket_factorial, QRat};
use crate::vertex::Framing;

/// A cached table of Bogoliubov coefficients for a fixed framing and
/// leg count.
pub struct BogoliubovCoeffs {
    framing: Framing,
    legs: u8,
    cache: DashMap<(u8, u8, u32, u32), QRat>,
}

/// Builds the coefficient table for the given framing and leg count.
pub fn bogoliubov(f: Framing, legs: u8) -> BogoliubovCoeffs {
    assert!((1..=3).contains(&legs), "legs must be 1, 2, or 3");
    BogoliubovCoeffs {
        framing: f,
        legs,
        cache: DashMap::new(),
    }
}

impl BogoliubovCoeffs {
    /// Number of legs the table covers.
    pub fn legs(&self) -> u8 {
        self.legs
    }

    /// The framing the table was built with.
    pub fn framing(&self) -> Framing {
        self.framing
    }

    /// The coefficient `A^{ij}_{mn}`. Legs are 1-based; with three legs
    /// the column index wraps cyclically, so `get(3, 4, …) = A^{31}` and
    /// `get(1, 0, …) = A^{13}`.
    pub fn get(&self, i: u8, j: u8, m: u32, n: u32) -> QRat {
        let j = if self.legs == 3 { (j + 2) % 3 + 1 } else { j };
        assert!(
            (1..=self.legs).contains(&i) && (1..=self.legs).contains(&j),
            "channel ({i},{j}) out of range for {} legs",
            self.legs
        );
        if let Some(v) = self.cache.get(&(i, j, m, n)) {
            return v.clone();
        }
        let a = |leg: u8| match leg {
            1 => self.framing.a1,
            2 => self.framing.a2,
            _ => self.framing.a3,
        };
        let value = if i == j {
            diagonal(a(i), m, n)
        } else if self.legs == 2 {
            // Two legs: (1,2) is the plus channel, (2,1) the minus.
            if (i, j) == (1, 2) {
                plus(a(1), a(2), m, n)
            } else {
                minus(a(2), a(1), m, n)
            }
        } else if j == i % 3 + 1 {
            plus(a(i), a(j), m, n)
        } else {
            minus(a(i), a(j), m, n)
        };
        self.cache.insert((i, j, m, n), value.clone());
        value
    }
}

fn sign_of(n: u32) -> QRat {
    QRat::from_int(if n.is_multiple_of(2) { 1 } else { -1 })
}

/// `A^{ii}_{mn}`.
fn diagonal(a: i64, m: u32, n: u32) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    let quarter = (2 * a + 1) * (mi * (mi + 1) - ni * (ni + 1));
    let den = bracket(m as u64 + n as u64 + 1)
        * bracket_factorial(m as u64)
        * bracket_factorial(n as u64);
    sign_of(n) * QRat::q_quarter_pow(quarter) * den.inv().expect("brackets are nonzero")
}

/// `A^{i,i+1}_{mn}` with `ai` the framing of the row leg and `aj` of the
/// (cyclically next) column leg.
fn plus(ai: i64, aj: i64, m: u32, n: u32) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    let quarter = (2 * ai + 1) * mi * (mi + 1) - (2 * aj + 1) * ni * (ni + 1);
    sign_of(n) * QRat::q_quarter_pow(quarter) * QRat::t_pow(4) * ladder_sum(m, n, 1)
}

/// `A^{i,i−1}_{mn}` with `ai` the framing of the row leg and `aj` of the
/// (cyclically previous) column leg.
fn minus(ai: i64, aj: i64, m: u32, n: u32) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    let quarter = (2 * ai + 1) * mi * (mi + 1) - (2 * aj + 1) * ni * (ni + 1);
    QRat::from_int(-1)
        * sign_of(n)
        * QRat::q_quarter_pow(quarter)
        * QRat::t_pow(-4)
        * ladder_sum(m, n, -1)
}

/// `Σ_{l=0}^{min(m,n)} q^{±(l+1)(m+n−l)/2} / ([m−l]![n−l]!)`.
fn ladder_sum(m: u32, n: u32, dir: i64) -> QRat {
    let mut sum = QRat::zero();
    for l in 0..=m.min(n) {
        let (li, mi, ni) = (l as i64, m as i64, n as i64);
        let half = dir * (li + 1) * (mi + ni - li);
        let den = bracket_factorial((m - l) as u64) * bracket_factorial((n - l) as u64);
        sum = sum + QRat::q_half_pow(half) * den.inv().expect("brackets are nonzero");
    }
    sum
}

/// `ē_k = q^{−k(k−1)/4}/[k]!` (zero for `k < 0`): the elementary
/// symmetric value `e_k(q^ρ)`.
pub(crate) fn ebar(k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    QRat::q_quarter_pow(-k * (k - 1)) * bracket_factorial(k as u64).inv().unwrap()
}

/// `h̄_k = q^{k(k−1)/4}/[k]!` (zero for `k < 0`): the complete
/// homogeneous value `h_k(q^ρ)`.
pub(crate) fn hbar(k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    QRat::q_quarter_pow(k * (k - 1)) * bracket_factorial(k as u64).inv().unwrap()
}

/// `s̄_{(m|n)} = s_{(m|n)}(q^ρ) = q^{κ_{(m|n)}/4}/([m+n+1][m]![n]!)`.
pub(crate) fn sbar_hook(m: i64, n: i64) -> QRat {
    let kappa = (m - n) * (m + n + 1);
    let den =
        bracket((m + n + 1) as u64) * bracket_factorial(m as u64) * bracket_factorial(n as u64);
    QRat::q_quarter_pow(kappa) * den.inv().expect("brackets are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialize::{hook_schur_at, Spec};

    #[test]
    fn one_leg_base_coefficient() {
        // A_{00} = 1/[1] for every framing.
        for a in [-2i64, 0, 3] {
            let c = bogoliubov(Framing::new(a, 0, 0), 1);
            assert_eq!(c.get(1, 1, 0, 0), bracket(1).inv().unwrap());
        }
    }

    /// The one-leg coefficient is `(−1)^n q^{aκ_{(m|n)}/2} s_{(m|n)}(q^ρ)`,
    /// checked against the symmetric-function side.
    #[test]
    fn one_leg_matches_hook_schur() {
        let rho = Spec::rho();
        for a in [-1i64, 0, 2] {
            let c = bogoliubov(Framing::new(a, 0, 0), 1);
            for m in 0..=3i64 {
                for n in 0..=3i64 {
                    let kappa = (m - n) * (m + n + 1);
                    let sign = QRat::from_int(if n % 2 == 0 { 1 } else { -1 });
                    let expected = sign * QRat::q_half_pow(a * kappa) * hook_schur_at(&rho, m, n);
                    assert_eq!(
                        c.get(1, 1, m as u32, n as u32),
                        expected,
                        "({m}|{n}), a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn hook_closed_form_matches_specialization() {
        let rho = Spec::rho();
        for m in 0..=4 {
            for n in 0..=4 {
                assert_eq!(sbar_hook(m, n), hook_schur_at(&rho, m, n));
            }
        }
    }

    #[test]
    fn two_leg_base_cross_coefficients() {
        let c = bogoliubov(Framing::new(1, -1, 0), 2);
        assert_eq!(c.get(1, 2, 0, 0), QRat::t_pow(4));
        assert_eq!(c.get(2, 1, 0, 0), QRat::from_int(-1) * QRat::t_pow(-4));
    }

    /// The two-leg table is the three-leg table restricted to legs 1, 2.
    #[test]
    fn two_leg_table_embeds_in_three_leg_table() {
        let f = Framing::new(2, -1, 5);
        let c2 = bogoliubov(f, 2);
        let c3 = bogoliubov(f, 3);
        for i in 1..=2 {
            for j in 1..=2 {
                for m in 0..=3 {
                    for n in 0..=3 {
                        assert_eq!(c2.get(i, j, m, n), c3.get(i, j, m, n));
                    }
                }
            }
        }
    }

    /// Cyclic wrap of the column index: `A^{34} = A^{31}`, `A^{10} = A^{13}`.
    #[test]
    fn three_leg_index_wrap() {
        let c = bogoliubov(Framing::new(1, 0, -1), 3);
        assert_eq!(c.get(3, 4, 2, 1), c.get(3, 1, 2, 1));
        assert_eq!(c.get(1, 0, 1, 2), c.get(1, 3, 1, 2));
    }

    /// With zero framing the diagonal and plus channels reduce to the
    /// unframed coefficients.
    #[test]
    fn unframed_reduction_diagonal_and_plus() {
        let c = bogoliubov(Framing::zero(), 3);
        for m in 0..=3u32 {
            for n in 0..=3u32 {
                let (mi, ni) = (m as i64, n as i64);
                let sign = QRat::from_int(if n % 2 == 0 { 1 } else { -1 });
                let diag = sign.clone()
                    * QRat::q_quarter_pow(mi * (mi + 1) - ni * (ni + 1))
                    * (bracket(mi as u64 + ni as u64 + 1)
                        * bracket_factorial(m as u64)
                        * bracket_factorial(n as u64))
                    .inv()
                    .unwrap();
                assert_eq!(c.get(1, 1, m, n), diag);
                let plus_unframed = sign
                    * QRat::q_quarter_pow(mi * (mi + 1) - ni * (ni + 1))
                    * QRat::t_pow(4)
                    * ladder_sum(m, n, 1);
                assert_eq!(c.get(2, 3, m, n), plus_unframed);
            }
        }
    }

    /// Independent re-derivation of the cross channels as bilinear sums
    /// in `ē`/`h̄`: the plus channel weights particles by `a_i + 1` and
    /// holes by `a_j`, the minus channel particles by `a_i` and holes by
    /// `a_j + 1`.
    #[test]
    fn cross_channels_match_bilinear_forms() {
        let f = Framing::new(2, -1, 1);
        let c = bogoliubov(f, 3);
        let a = [f.a1, f.a2, f.a3];
        for i in 1..=3u8 {
            let jp = i % 3 + 1;
            let jm = (i + 1) % 3 + 1;
            for m in 0..=4i64 {
                for n in 0..=4i64 {
                    let sign = QRat::from_int(if n % 2 == 0 { 1 } else { -1 });
                    let (ai, ap, am) = (a[i as usize - 1], a[jp as usize - 1], a[jm as usize - 1]);
                    let mut esum = QRat::zero();
                    let mut hsum = QRat::zero();
                    for l in 0..=m.min(n) {
                        esum = esum + ebar(m - l) * ebar(n - l);
                        hsum = hsum + hbar(m - l) * hbar(n - l);
                    }
                    let plus_expected = sign.clone()
                        * QRat::t_pow(4)
                        * QRat::q_half_pow((ai + 1) * m * (m + 1) - ap * n * (n + 1))
                        * esum;
                    assert_eq!(
                        c.get(i, jp, m as u32, n as u32),
                        plus_expected,
                        "plus ({i},{jp}) at ({m},{n})"
                    );
                    let minus_expected = QRat::from_int(-1)
                        * sign
                        * QRat::t_pow(-4)
                        * QRat::q_half_pow(ai * m * (m + 1) - (am + 1) * n * (n + 1))
                        * hsum;
                    assert_eq!(
                        c.get(i, jm, m as u32, n as u32),
                        minus_expected,
                        "minus ({i},{jm}) at ({m},{n})"
                    );
                }
            }
        }
    }
}
