//! The topological vertex `W_{mu1,mu2,mu3}(q)` and its framed variant,
//! computed on the symmetric-function side by two independent routes.
//!
//! * [`w_vertex_skew`] — the closed skew-Schur form: a sign, a power of
//!   `q`, a Schur value at the inverted staircase, and a finite sum of
//!   products of skew Schur functions at shifted staircase points.
//! * [`w_vertex_tv`] — the original convolution form: a double sum over
//!   subpartitions weighted by Littlewood–Richardson coefficients and
//!   ratios of two-legged values.
//! * [`w_two`] — the two-legged vertex `W_{mu,nu}(q)`, a sign times
//!   `q^((kappa_mu+kappa_nu)/2)` times a skew-Schur convolution at the
//!   inverted staircase.
//! * [`w_framed`] — the framing prefactor `q^(sum_i a_i kappa_i / 2)`
//!   applied to the vertex, tagged with the formula that produced it.
//! * [`two_leg_coefficient`] — the framed two-legged generating
//!   coefficient in its skew-Schur form at the (non-inverted) staircase.
//! * [`check_wtt`] — the `q -> q^(-1)` transposition symmetry of the
//!   two-legged vertex.
//!
//! Every sum over auxiliary partitions is bounded by diagram containment
//! (skew Schur functions and Littlewood–Richardson coefficients vanish
//! outside it), never by a numerical cutoff, so all values are exact
//! elements of the fraction field. Transposes are always taken with
//! [`Partition::conjugate`] and `q`-inversions with [`QRat::invert_q`].

use std::sync::OnceLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::partitions::{lr_coefficient, Partition};
use crate::qseries::QRat;
use crate::specialize::{schur_at, skew_schur_at, Spec};

/// Framing integers attached to the three legs of the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Framing {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl Framing {
    /// Convenience constructor.
    pub fn new(a1: i64, a2: i64, a3: i64) -> Self {
        Framing { a1, a2, a3 }
    }

    /// The zero framing.
    pub fn zero() -> Self {
        Framing::new(0, 0, 0)
    }
}

impl std::fmt::Display for Framing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a1, self.a2, self.a3)
    }
}

/// Which of the implemented routes produced a vertex value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexPath {
    /// The convolution form with Littlewood–Richardson coefficients.
    TvFormula,
    /// The closed skew-Schur form (the default route).
    SkewSchurFormula,
    /// A fermionic determinant (one, two, or three legs).
    FermionDet,
    /// Direct truncated expansion of the fermionic exponential operator.
    FermionExpansion,
}

/// A vertex value labeled with the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexValue {
    pub value: QRat,
    pub path: VertexPath,
}

/// Intersection of two Young diagrams: the partition of pointwise minima.
fn intersect(mu: &Partition, nu: &Partition) -> Partition {
    let parts = mu
        .parts()
        .iter()
        .zip(nu.parts())
        .map(|(&a, &b)| a.min(b))
        .take_while(|&p| p > 0)
        .collect();
    Partition::new(parts)
}

/// `(-1)^n` as an exact value.
fn parity_sign(n: u64) -> QRat {
    if n.is_multiple_of(2) {
        QRat::one()
    } else {
        QRat::from_int(-1)
    }
}

/// The two-legged vertex
/// `W_{mu,nu}(q) = (-1)^(|mu|+|nu|) q^((kappa_mu+kappa_nu)/2)
///  sum_eta s_{mu/eta}(q^-rho) s_{nu/eta}(q^-rho)`.
///
/// The sum runs over subdiagrams of the intersection of the two shapes;
/// values are memoized per ordered pair.
pub fn w_two(mu: &Partition, nu: &Partition) -> QRat {
    static CACHE: OnceLock<DashMap<(Partition, Partition), QRat>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    let key = (mu.clone(), nu.clone());
    if let Some(v) = cache.get(&key) {
        return v.clone();
    }
    let spec = Spec::neg_rho();
    let mut sum = QRat::zero();
    for eta in intersect(mu, nu).subdiagrams() {
        sum = sum + skew_schur_at(&spec, mu, &eta) * skew_schur_at(&spec, nu, &eta);
    }
    let value =
        parity_sign(mu.size() + nu.size()) * QRat::q_half_pow(mu.kappa() + nu.kappa()) * sum;
    cache.insert(key, value.clone());
    value
}

/// The topological vertex in its closed skew-Schur form:
/// `W_{mu1,mu2,mu3} = (-1)^|mu2| q^(kappa_mu3/2) s_{mu2^t}(q^-rho)
///  sum_eta s_{mu1/eta}(q^(mu2^t+rho)) s_{mu3^t/eta}(q^(mu2+rho))`.
pub fn w_vertex_skew(mu1: &Partition, mu2: &Partition, mu3: &Partition) -> QRat {
    let mu2t = mu2.conjugate();
    let mu3t = mu3.conjugate();
    let spec1 = Spec::shifted(mu2t.clone());
    let spec3 = Spec::shifted(mu2.clone());
    let mut sum = QRat::zero();
    for eta in intersect(mu1, &mu3t).subdiagrams() {
        sum = sum + skew_schur_at(&spec1, mu1, &eta) * skew_schur_at(&spec3, &mu3t, &eta);
    }
    parity_sign(mu2.size())
        * QRat::q_half_pow(mu3.kappa())
        * schur_at(&Spec::neg_rho(), &mu2t)
        * sum
}

/// The topological vertex in its original convolution form:
/// `W_{mu1,mu2,mu3} = sum_{rho1,rho3} c^{mu1 mu3^t}_{rho1 rho3^t}
///  q^((kappa_mu2+kappa_mu3)/2) W_{mu2^t,rho1} W_{mu2,rho3^t} / W_{mu2,0}`,
/// where the coefficient is the Littlewood–Richardson convolution
/// `sum_eta c^{mu1}_{eta,rho1} c^{mu3^t}_{eta,rho3^t}`.
pub fn w_vertex_tv(mu1: &Partition, mu2: &Partition, mu3: &Partition) -> QRat {
    let mu2t = mu2.conjugate();
    let mu3t = mu3.conjugate();
    let empty = Partition::empty();
    let denom = w_two(mu2, &empty);
    let etas = intersect(mu1, &mu3t).subdiagrams();
    let mut total = QRat::zero();
    for rho1 in mu1.subdiagrams() {
        // The convolution coefficient forces |eta| + |rho1| = |mu1| and
        // |eta| + |rho3^t| = |mu3|, so only matching deficits survive.
        let deficit = mu1.size() - rho1.size();
        for rho3 in mu3.subdiagrams() {
            if mu3.size() - rho3.size() != deficit {
                continue;
            }
            let rho3t = rho3.conjugate();
            let mut coeff = 0u64;
            for eta in etas.iter().filter(|eta| eta.size() == deficit) {
                coeff += lr_coefficient(mu1, eta, &rho1) * lr_coefficient(&mu3t, eta, &rho3t);
            }
            if coeff == 0 {
                continue;
            }
            let term = w_two(&mu2t, &rho1) * w_two(mu2, &rho3t);
            total = total + QRat::from_int(coeff as i64) * term;
        }
    }
    QRat::q_half_pow(mu2.kappa() + mu3.kappa()) * total.try_div(&denom).expect("W_{mu2,0} != 0")
}

/// The framed vertex `q^((a1 kappa_1 + a2 kappa_2 + a3 kappa_3)/2) W`,
/// computed through the skew-Schur route.
pub fn w_framed(mu1: &Partition, mu2: &Partition, mu3: &Partition, f: &Framing) -> VertexValue {
    let exponent = f.a1 * mu1.kappa() + f.a2 * mu2.kappa() + f.a3 * mu3.kappa();
    VertexValue {
        value: QRat::q_half_pow(exponent) * w_vertex_skew(mu1, mu2, mu3),
        path: VertexPath::SkewSchurFormula,
    }
}

/// The framed two-legged generating coefficient in its skew-Schur form:
/// `q^(((a1+1) kappa_mu + a2 kappa_nu)/2)
///  sum_eta s_{mu^t/eta}(q^rho) s_{nu/eta}(q^rho)`.
///
/// This is the value the two-legged fermionic determinant must reproduce;
/// it equals `w_framed(mu, nu, 0, (a1, a2, 0))` by the transposition
/// symmetry of the two-legged vertex.
pub fn two_leg_coefficient(mu: &Partition, nu: &Partition, a1: i64, a2: i64) -> QRat {
    let mut_ = mu.conjugate();
    let spec = Spec::rho();
    let mut sum = QRat::zero();
    for eta in intersect(&mut_, nu).subdiagrams() {
        sum = sum + skew_schur_at(&spec, &mut_, &eta) * skew_schur_at(&spec, nu, &eta);
    }
    QRat::q_half_pow((a1 + 1) * mu.kappa() + a2 * nu.kappa()) * sum
}

/// Checks the transposition symmetry
/// `W_{mu^t,nu^t}(q^-1) == (-1)^(|mu|+|nu|) W_{mu,nu}(q)`.
pub fn check_wtt(mu: &Partition, nu: &Partition) -> bool {
    let lhs = w_two(&mu.conjugate(), &nu.conjugate()).invert_q();
    let rhs = parity_sign(mu.size() + nu.size()) * w_two(mu, nu);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_up_to;
    use crate::qseries::bracket;
    use crate::specialize::schur_at_rho;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// All pairs of partitions with total size at most `n`.
    fn pairs_up_to(n: u64) -> Vec<(Partition, Partition)> {
        let all = enumerate_up_to(n);
        let mut out = Vec::new();
        for a in &all {
            for b in &all {
                if a.size() + b.size() <= n {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn w_two_base_values() {
        let empty = Partition::empty();
        assert_eq!(w_two(&empty, &empty), QRat::one());
        let inv_bracket = bracket(1).inv().unwrap();
        assert_eq!(w_two(&p(&[1]), &empty), inv_bracket);
        assert_eq!(w_two(&empty, &p(&[1])), inv_bracket);
    }

    #[test]
    fn w_two_is_symmetric() {
        for (a, b) in pairs_up_to(6) {
            assert_eq!(w_two(&a, &b), w_two(&b, &a), "W_{{{a},{b}}}");
        }
    }

    #[test]
    fn skew_form_one_box_values() {
        let empty = Partition::empty();
        let inv_bracket = bracket(1).inv().unwrap();
        assert_eq!(w_vertex_skew(&p(&[1]), &empty, &empty), inv_bracket);
        assert_eq!(w_vertex_skew(&empty, &p(&[1]), &empty), inv_bracket);
        assert_eq!(w_vertex_skew(&empty, &empty, &p(&[1])), inv_bracket);
    }

    #[test]
    fn skew_form_two_one_leg_frozen_value() {
        // W_{(1),(1),0} = 1 + 1/[1]^2.
        let got = w_vertex_skew(&p(&[1]), &p(&[1]), &Partition::empty());
        let expected = QRat::one() + bracket(1).pow(-2);
        assert_eq!(got, expected);
    }

    #[test]
    fn skew_form_reduces_to_two_legs() {
        let empty = Partition::empty();
        for (a, b) in pairs_up_to(5) {
            let lhs = w_vertex_skew(&a, &b, &empty);
            let rhs = QRat::q_half_pow(b.kappa()) * w_two(&a, &b.conjugate());
            assert_eq!(lhs, rhs, "reduction at ({a}, {b})");
        }
    }

    #[test]
    fn tv_form_matches_skew_form_small() {
        let all = enumerate_up_to(5);
        for m1 in &all {
            for m2 in &all {
                for m3 in &all {
                    if m1.size() + m2.size() + m3.size() > 5 {
                        continue;
                    }
                    assert_eq!(
                        w_vertex_tv(m1, m2, m3),
                        w_vertex_skew(m1, m2, m3),
                        "dual paths at ({m1}, {m2}, {m3})"
                    );
                }
            }
        }
    }

    #[test]
    fn wtt_symmetry_small() {
        for (a, b) in pairs_up_to(5) {
            assert!(check_wtt(&a, &b), "Wtt at ({a}, {b})");
        }
    }

    #[test]
    fn framed_one_leg_is_weighted_hook_product() {
        // The single-box example: framing (1,0,0) multiplies by q^(kappa/2).
        let f = Framing::new(1, 0, 0);
        let empty = Partition::empty();
        let got = w_framed(&p(&[2]), &empty, &empty, &f);
        assert_eq!(got.path, VertexPath::SkewSchurFormula);
        assert_eq!(got.value, QRat::q_pow(1) * schur_at_rho(&p(&[2])));

        for mu in enumerate_up_to(5) {
            for a in [-2i64, 0, 2] {
                let f = Framing::new(a, 0, 0);
                let got = w_framed(&mu, &empty, &empty, &f).value;
                let expected = QRat::q_half_pow(a * mu.kappa()) * schur_at_rho(&mu);
                assert_eq!(got, expected, "one-leg framed at {mu}, a = {a}");
            }
        }
    }

    #[test]
    fn two_leg_coefficient_matches_framed_vertex() {
        let empty = Partition::empty();
        for (a, b) in pairs_up_to(5) {
            for (a1, a2) in [(0i64, 0i64), (1, -1), (-1, 1)] {
                let lhs = two_leg_coefficient(&a, &b, a1, a2);
                let rhs = w_framed(&a, &b, &empty, &Framing::new(a1, a2, 0)).value;
                assert_eq!(lhs, rhs, "two-leg coefficient at ({a}, {b}, {a1}, {a2})");
            }
        }
    }

    #[test]
    fn vertex_value_serde_round_trip() {
        let v = VertexValue {
            value: bracket(2),
            path: VertexPath::TvFormula,
        };
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("TvFormula"));
        let back: VertexValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
