//! Fock basis states and the mode operators `ψ_r`, `ψ*_r`.
//!
//! A one-leg basis state is a semi-infinite wedge, described relative to
//! the Dirac sea by the positive modes it adds and the negative modes it
//! vacates. Operators act by wedge insertion/deletion: placing or
//! removing a vector at (0-indexed) position `k` in the wedge carries
//! the sign `(−1)^k`. Multi-leg states use the Koszul convention:
//! operators on different legs anticommute, realized by counting the
//! (finite) operator symbols of all earlier legs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::partitions::{Frobenius, Partition};
use crate::qseries::QRat;

/// A basis state of one fermionic leg.
///
/// `added` holds the codes of modes `r > 0` occupied above the sea and
/// `removed` the codes of modes `r < 0` vacated from it, each strictly
/// decreasing (codes are `r − 1/2`, so `added` entries are `≥ 0` and
/// `removed` entries `≤ −1`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockBasisState {
    added: Vec<i64>,
    removed: Vec<i64>,
}

impl FockBasisState {
    /// The Dirac sea (the vacuum of charge 0).
    pub fn vacuum() -> Self {
        FockBasisState {
            added: Vec::new(),
            removed: Vec::new(),
        }
    }

    /// Builds a state from raw mode codes, validating the invariants.
    pub fn new(added: Vec<i64>, removed: Vec<i64>) -> Self {
        assert!(
            added.windows(2).all(|w| w[0] > w[1]) && added.iter().all(|&c| c >= 0),
            "added codes must be strictly decreasing and nonnegative"
        );
        assert!(
            removed.windows(2).all(|w| w[0] > w[1]) && removed.iter().all(|&c| c <= -1),
            "removed codes must be strictly decreasing and at most -1"
        );
        FockBasisState { added, removed }
    }

    /// Codes of the occupied modes above the sea, strictly decreasing.
    pub fn added(&self) -> &[i64] {
        &self.added
    }

    /// Codes of the vacated modes below the sea, strictly decreasing.
    pub fn removed(&self) -> &[i64] {
        &self.removed
    }

    /// The fermionic charge: added count minus removed count.
    pub fn charge(&self) -> i64 {
        self.added.len() as i64 - self.removed.len() as i64
    }

    /// Twice the energy `Σ r` over added modes plus `Σ (−r)` over
    /// removed ones; for a charge-0 state this is `2 |μ|`.
    pub fn energy_x2(&self) -> u64 {
        let a: i64 = self.added.iter().map(|&c| 2 * c + 1).sum();
        let r: i64 = self.removed.iter().map(|&c| -2 * c - 1).sum();
        (a + r) as u64
    }

    /// Number of operator symbols (`ψ`'s plus `ψ*`'s) that present this
    /// state as an operator product on the vacuum; used for Koszul signs.
    pub fn symbol_count(&self) -> usize {
        self.added.len() + self.removed.len()
    }

    /// The charge-0 state of a partition via its Frobenius coordinates:
    /// added codes `m_i`, removed codes `−n_i − 1`.
    pub fn from_partition(mu: &Partition) -> Self {
        let fr = mu.frobenius();
        let added = fr.m.clone();
        let removed: Vec<i64> = fr.n.iter().rev().map(|&n| -n - 1).collect();
        FockBasisState { added, removed }
    }

    /// Recovers the partition of a charge-0 state.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.charge() != 0 {
            return None;
        }
        let m = self.added.clone();
        let n: Vec<i64> = self.removed.iter().rev().map(|&c| -c - 1).collect();
        Some(Frobenius { m, n }.to_partition())
    }

    /// Wedge position of mode code `c`: the number of occupied modes
    /// above it. For `c < 0` this counts all added modes plus the sea
    /// modes between `c` and `0` that are still occupied.
    fn position(&self, c: i64) -> usize {
        if c >= 0 {
            self.added.iter().filter(|&&a| a > c).count()
        } else {
            let sea_above = (-c - 1) as usize;
            let removed_above = self.removed.iter().filter(|&&r| r > c).count();
            self.added.len() + sea_above - removed_above
        }
    }

    /// Applies `ψ_r` (`r = c + 1/2`): inserts mode `c`. Returns the new
    /// state and the sign, or `None` if the mode is already occupied.
    pub(super) fn psi(&self, c: i64) -> Option<(FockBasisState, i64)> {
        let mut next = self.clone();
        if c >= 0 {
            if self.added.contains(&c) {
                return None;
            }
            let idx = self
                .added
                .iter()
                .position(|&a| a < c)
                .unwrap_or(self.added.len());
            next.added.insert(idx, c);
        } else {
            // Inserting below the sea level fills a hole.
            let idx = self.removed.iter().position(|&r| r == c)?;
            next.removed.remove(idx);
        }
        Some((next, parity(self.position(c))))
    }

    /// Applies `ψ*_r`: deletes mode `c`. Returns the new state and the
    /// sign, or `None` if the mode is not occupied.
    pub(super) fn psi_star(&self, c: i64) -> Option<(FockBasisState, i64)> {
        let mut next = self.clone();
        if c >= 0 {
            let idx = self.added.iter().position(|&a| a == c)?;
            next.added.remove(idx);
        } else {
            // Deleting from the sea digs a hole.
            if self.removed.contains(&c) {
                return None;
            }
            let idx = self
                .removed
                .iter()
                .position(|&r| r < c)
                .unwrap_or(self.removed.len());
            next.removed.insert(idx, c);
        }
        Some((next, parity(self.position(c))))
    }
}

pub(super) fn parity(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The charge-0 basis state `|μ⟩`. The operator-product reconstruction
/// `ψ_{m_1+1/2} ψ*_{−n_1−1/2} ··· |0⟩` reproduces it with the sign
/// `(−1)^{n_1+···+n_k}` (covered by tests).
pub fn state_from_partition(mu: &Partition) -> FockBasisState {
    FockBasisState::from_partition(mu)
}

/// A finite linear combination of basis-state tuples over `legs` legs.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    legs: usize,
    terms: BTreeMap<Vec<FockBasisState>, QRat>,
}

impl FockState {
    /// The zero state.
    pub fn zero(legs: usize) -> Self {
        assert!((1..=3).contains(&legs), "legs must be 1, 2, or 3");
        FockState {
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum `|0⟩^{⊗legs}` with coefficient 1.
    pub fn vacuum(legs: usize) -> Self {
        let mut s = FockState::zero(legs);
        s.add_term(vec![FockBasisState::vacuum(); legs], QRat::one());
        s
    }

    /// Number of legs.
    pub fn legs(&self) -> usize {
        self.legs
    }

    /// Adds `coeff · |basis⟩`, dropping the entry if it cancels.
    pub fn add_term(&mut self, basis: Vec<FockBasisState>, coeff: QRat) {
        assert_eq!(basis.len(), self.legs);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The coefficient of a basis tuple (zero if absent).
    pub fn coefficient(&self, basis: &[FockBasisState]) -> QRat {
        self.terms.get(basis).cloned().unwrap_or_else(QRat::zero)
    }

    /// Iterates terms in the deterministic basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<FockBasisState>, &QRat)> {
        self.terms.iter()
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Whether the state is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Applies `ψ_r` (`r = code + 1/2`) on the given leg, with the Koszul
/// sign from crossing the operator symbols of all earlier legs.
pub fn apply_psi(code: i64, state: &FockState, leg: usize) -> FockState {
    apply_mode(code, state, leg, false)
}

/// Applies `ψ*_r` (`r = code + 1/2`) on the given leg, with the Koszul
/// sign from crossing the operator symbols of all earlier legs.
pub fn apply_psi_star(code: i64, state: &FockState, leg: usize) -> FockState {
    apply_mode(code, state, leg, true)
}

fn apply_mode(code: i64, state: &FockState, leg: usize, star: bool) -> FockState {
    assert!(leg < state.legs, "leg {leg} out of range");
    let mut out = FockState::zero(state.legs);
    for (basis, coeff) in &state.terms {
        let crossings: usize = basis[..leg].iter().map(|b| b.symbol_count()).sum();
        let applied = if star {
            basis[leg].psi_star(code)
        } else {
            basis[leg].psi(code)
        };
        if let Some((next, sign)) = applied {
            let mut key = basis.clone();
            key[leg] = next;
            let total_sign = sign * parity(crossings);
            out.add_term(key, QRat::from_int(total_sign) * coeff.clone());
        }
    }
    out
}

/// Serialized form of one basis state: charge-0 states round-trip as a
/// partition, charged states as raw mode codes.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BasisRepr {
    Partition { partition: Vec<u32> },
    Charged { added: Vec<i64>, removed: Vec<i64> },
}

impl Serialize for FockBasisState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self.to_partition() {
            Some(p) => BasisRepr::Partition {
                partition: p.parts().to_vec(),
            },
            None => BasisRepr::Charged {
                added: self.added.clone(),
                removed: self.removed.clone(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FockBasisState {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match BasisRepr::deserialize(deserializer)? {
            BasisRepr::Partition { partition } => {
                Ok(FockBasisState::from_partition(&Partition::new(partition)))
            }
            BasisRepr::Charged { added, removed } => Ok(FockBasisState::new(added, removed)),
        }
    }
}

/// Serialized form of one term of a [`FockState`].
#[derive(Serialize, Deserialize)]
struct TermRepr {
    legs: usize,
    basis: Vec<FockBasisState>,
    coeff: QRat,
}

impl Serialize for FockState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (basis, coeff) in &self.terms {
            seq.serialize_element(&TermRepr {
                legs: self.legs,
                basis: basis.clone(),
                coeff: coeff.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FockState {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(deserializer)?;
        // An empty list carries no leg count; default to one leg.
        let legs = reprs.first().map_or(1, |t| t.legs);
        let mut state = FockState::zero(legs);
        for t in reprs {
            if t.legs != legs {
                return Err(serde::de::Error::custom("inconsistent leg counts"));
            }
            state.add_term(t.basis, t.coeff);
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_up_to;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// `ψ` applied below the sea on the vacuum annihilates it.
    #[test]
    fn psi_annihilates_vacuum_below_sea() {
        let v = FockState::vacuum(1);
        assert!(apply_psi(-1, &v, 0).is_zero());
        assert!(apply_psi_star(1, &v, 0).is_zero());
    }

    /// `ψ*_{−1/2}|0⟩` digs the first hole with sign `+1`.
    #[test]
    fn psi_star_digs_first_hole() {
        let v = FockState::vacuum(1);
        let dug = apply_psi_star(-1, &v, 0);
        let expected = FockBasisState::new(vec![], vec![-1]);
        assert_eq!(dug.coefficient(&[expected]), QRat::one());
        assert_eq!(dug.num_terms(), 1);
    }

    /// A deterministic collection of small test states: charge-0 states
    /// of all partitions of size ≤ 4 plus charged neighbors.
    fn sample_states() -> Vec<FockBasisState> {
        let mut out = Vec::new();
        for mu in enumerate_up_to(4) {
            let s = FockBasisState::from_partition(&mu);
            for c in [-3, -1, 0, 2] {
                if let Some((t, _)) = s.psi(c) {
                    out.push(t);
                }
                if let Some((t, _)) = s.psi_star(c) {
                    out.push(t);
                }
            }
            out.push(s);
        }
        out.sort();
        out.dedup();
        out
    }

    /// `ψ_r ψ*_s + ψ*_s ψ_r = δ_{rs}` on one leg for all `|r|,|s| ≤ 9/2`.
    #[test]
    fn anticommutator_single_leg() {
        for basis in sample_states() {
            let mut v = FockState::zero(1);
            v.add_term(vec![basis.clone()], QRat::one());
            for c1 in -5i64..=4 {
                for c2 in -5i64..=4 {
                    let lhs1 = apply_psi(c1, &apply_psi_star(c2, &v, 0), 0);
                    let lhs2 = apply_psi_star(c2, &apply_psi(c1, &v, 0), 0);
                    let expect = if c1 == c2 { QRat::one() } else { QRat::zero() };
                    let key = [basis.clone()];
                    assert_eq!(
                        lhs1.coefficient(&key) + lhs2.coefficient(&key),
                        expect,
                        "anticommutator at c1={c1}, c2={c2}"
                    );
                    // All other basis vectors cancel exactly.
                    for (other, x) in lhs1.terms() {
                        if other.as_slice() != key {
                            assert_eq!(lhs2.coefficient(other), QRat::from_int(-1) * x.clone());
                        }
                    }
                }
            }
        }
    }

    /// Cross-leg operators anticommute: `ψ^1_r ψ^{2*}_s = −ψ^{2*}_s ψ^1_r`.
    #[test]
    fn anticommutator_cross_leg() {
        let pairs = [
            (FockBasisState::vacuum(), FockBasisState::vacuum()),
            (
                FockBasisState::from_partition(&p(&[2, 1])),
                FockBasisState::from_partition(&p(&[1])),
            ),
            (
                FockBasisState::new(vec![3], vec![]),
                FockBasisState::from_partition(&p(&[3])),
            ),
        ];
        for (b1, b2) in pairs {
            let mut v = FockState::zero(2);
            v.add_term(vec![b1, b2], QRat::one());
            for c1 in -3i64..=2 {
                for c2 in -3i64..=2 {
                    let ab = apply_psi(c1, &apply_psi_star(c2, &v, 1), 0);
                    let ba = apply_psi_star(c2, &apply_psi(c1, &v, 0), 1);
                    for (key, x) in ab.terms() {
                        assert_eq!(ba.coefficient(key), QRat::from_int(-1) * x.clone());
                    }
                    assert_eq!(ab.num_terms(), ba.num_terms());
                }
            }
        }
    }

    /// Frobenius round-trip through the state encoding, all `|μ| ≤ 10`.
    #[test]
    fn partition_round_trip() {
        for mu in enumerate_up_to(10) {
            let s = FockBasisState::from_partition(&mu);
            assert_eq!(s.charge(), 0);
            assert_eq!(s.energy_x2(), 2 * mu.size());
            assert_eq!(s.to_partition().as_ref(), Some(&mu), "round trip at {mu}");
        }
    }

    /// `ψ_{m_1+1/2}ψ*_{−n_1−1/2}···|0⟩ = (−1)^{n_1+···+n_k}|μ⟩`.
    #[test]
    fn operator_product_reconstruction() {
        for mu in enumerate_up_to(6) {
            let fr = mu.frobenius();
            let mut state = FockState::vacuum(1);
            // The product is applied right to left.
            for t in (0..fr.len()).rev() {
                state = apply_psi_star(-fr.n[t] - 1, &state, 0);
                state = apply_psi(fr.m[t], &state, 0);
            }
            let n_sum: i64 = fr.n.iter().sum();
            let expected = QRat::from_int(if n_sum % 2 == 0 { 1 } else { -1 });
            let key = [FockBasisState::from_partition(&mu)];
            assert_eq!(state.coefficient(&key), expected, "sign at {mu}");
            assert_eq!(state.num_terms(), 1);
        }
    }

    /// JSON round-trip for charge-0 and charged states.
    #[test]
    fn serde_round_trip() {
        let mut v = FockState::zero(2);
        v.add_term(
            vec![
                FockBasisState::from_partition(&p(&[2, 1])),
                FockBasisState::vacuum(),
            ],
            QRat::q_half_pow(3),
        );
        v.add_term(
            vec![
                FockBasisState::new(vec![2], vec![]),
                FockBasisState::new(vec![], vec![-2]),
            ],
            QRat::from_int(-7),
        );
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"partition\":[2,1]"));
        assert!(json.contains("\"added\":[2]"));
        let back: FockState = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
