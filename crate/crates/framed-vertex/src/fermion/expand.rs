//! Direct expansion of the Bogoliubov exponential on the vacuum.
//!
//! Every operator `ψ^{ij}_{mn} = ψ^i_{m+1/2} ψ^{j*}_{−n−1/2}` is built
//! from creation-type symbols only (particles above the sea, holes below
//! it), so distinct symbols strictly anticommute, each `ψ^{ij}_{mn}`
//! squares to zero, and any two of them commute exactly. The exponential
//! therefore equals the finite product `Π (1 + A^{ij}_{mn} ψ^{ij}_{mn})`,
//! and expanding it is a sum over subsets of the operator index set.
//!
//! [`fock_expand`] enumerates those subsets by depth-first search. Each
//! operator raises the total energy by exactly `m + n + 1`, so subtrees
//! whose accumulated weight exceeds the size budget are pruned without
//! loss: every coefficient on a basis tuple of total size within the
//! budget is exact.

use crate::qseries::QRat;

use super::coeffs::BogoliubovCoeffs;
use super::state::{parity, FockBasisState, FockState};

/// One operator index `(i, j, m, n)` together with its coefficient.
struct Op {
    leg_i: usize,
    leg_j: usize,
    particle: i64,
    hole: i64,
    weight: u64,
    coeff: QRat,
}

/// Expands `exp(Σ A^{ij}_{mn} ψ^{ij}_{mn}) |0⟩^{⊗legs}` over all mode
/// indices `m, n ≤ cutoff`, keeping every basis tuple whose total size
/// (energy) is at most `size_budget`. Coefficients on tuples within the
/// budget are exact; larger tuples are dropped.
pub fn fock_expand(coeffs: &BogoliubovCoeffs, cutoff: u32, size_budget: u64) -> FockState {
    let legs = coeffs.legs() as usize;
    let mut ops = Vec::new();
    for i in 1..=legs as u8 {
        for j in 1..=legs as u8 {
            for m in 0..=cutoff {
                for n in 0..=cutoff {
                    let weight = (m + n + 1) as u64;
                    if weight > size_budget {
                        continue;
                    }
                    ops.push(Op {
                        leg_i: i as usize - 1,
                        leg_j: j as usize - 1,
                        particle: m as i64,
                        hole: -(n as i64) - 1,
                        weight,
                        coeff: coeffs.get(i, j, m, n),
                    });
                }
            }
        }
    }
    let mut result = FockState::zero(legs);
    let vacuum = vec![FockBasisState::vacuum(); legs];
    dfs(&ops, 0, &vacuum, QRat::one(), 0, size_budget, &mut result);
    result
}

fn dfs(
    ops: &[Op],
    start: usize,
    basis: &[FockBasisState],
    coeff: QRat,
    weight: u64,
    budget: u64,
    result: &mut FockState,
) {
    result.add_term(basis.to_vec(), coeff.clone());
    for (k, op) in ops.iter().enumerate().skip(start) {
        if weight + op.weight > budget {
            continue;
        }
        if let Some((next, sign)) = apply_op(op, basis) {
            dfs(
                ops,
                k + 1,
                &next,
                coeff.clone() * op.coeff.clone() * QRat::from_int(sign),
                weight + op.weight,
                budget,
                result,
            );
        }
    }
}

/// Applies one `ψ^{ij}_{mn}` to a basis tuple: the annihilator-side
/// symbol `ψ^{j*}` acts first, then `ψ^i`, each with the Koszul sign of
/// crossing the operator symbols of all earlier legs.
fn apply_op(op: &Op, basis: &[FockBasisState]) -> Option<(Vec<FockBasisState>, i64)> {
    let mut out = basis.to_vec();
    let crossings_j: usize = out[..op.leg_j].iter().map(|b| b.symbol_count()).sum();
    let (next_j, sign_j) = out[op.leg_j].psi_star(op.hole)?;
    out[op.leg_j] = next_j;
    let crossings_i: usize = out[..op.leg_i].iter().map(|b| b.symbol_count()).sum();
    let (next_i, sign_i) = out[op.leg_i].psi(op.particle)?;
    out[op.leg_i] = next_i;
    Some((out, sign_j * sign_i * parity(crossings_j + crossings_i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::coeffs::bogoliubov;
    use crate::fermion::dets::{det_leg1, det_leg2};
    use crate::fermion::state::{apply_psi, apply_psi_star};
    use crate::partitions::{enumerate_up_to, Partition};
    use crate::qseries::bracket;
    use crate::vertex::Framing;

    /// `apply_op` agrees with composing the public single-symbol
    /// operators on full states.
    #[test]
    fn apply_op_matches_operator_composition() {
        let b1 = FockBasisState::from_partition(&Partition::new(vec![2, 1]));
        let b2 = FockBasisState::new(vec![3], vec![]);
        let basis = vec![b1, b2];
        for i in 0..2usize {
            for j in 0..2usize {
                for m in 0..=2i64 {
                    for n in 0..=2i64 {
                        let op = Op {
                            leg_i: i,
                            leg_j: j,
                            particle: m,
                            hole: -n - 1,
                            weight: (m + n + 1) as u64,
                            coeff: QRat::one(),
                        };
                        let mut v = FockState::zero(2);
                        v.add_term(basis.clone(), QRat::one());
                        let expected = apply_psi(m, &apply_psi_star(-n - 1, &v, j), i);
                        match apply_op(&op, &basis) {
                            Some((next, sign)) => {
                                assert_eq!(
                                    expected.coefficient(&next),
                                    QRat::from_int(sign),
                                    "op ({i},{j},{m},{n})"
                                );
                                assert_eq!(expected.num_terms(), 1);
                            }
                            None => assert!(expected.is_zero(), "op ({i},{j},{m},{n})"),
                        }
                    }
                }
            }
        }
    }

    /// Smallest one-leg expansion: `|0⟩ + A_{00} |(1)⟩`.
    #[test]
    fn one_leg_cutoff_zero() {
        let coeffs = bogoliubov(Framing::new(2, 0, 0), 1);
        let state = fock_expand(&coeffs, 0, 1);
        assert_eq!(state.num_terms(), 2);
        assert_eq!(state.coefficient(&[FockBasisState::vacuum()]), QRat::one());
        let one = FockBasisState::from_partition(&Partition::new(vec![1]));
        assert_eq!(state.coefficient(&[one]), bracket(1).inv().unwrap());
    }

    /// One-leg expansion coefficients match the determinant closed form.
    #[test]
    fn one_leg_matches_det() {
        for a in [0i64, 1] {
            let coeffs = bogoliubov(Framing::new(a, 0, 0), 1);
            let state = fock_expand(&coeffs, 4, 5);
            for mu in enumerate_up_to(5) {
                let key = [FockBasisState::from_partition(&mu)];
                assert_eq!(
                    state.coefficient(&key),
                    det_leg1(&mu, a),
                    "μ = {mu}, a = {a}"
                );
            }
        }
    }

    /// Two-leg expansion coefficients match the two-leg determinant form.
    #[test]
    fn two_leg_matches_det() {
        let (a1, a2) = (1i64, -1i64);
        let coeffs = bogoliubov(Framing::new(a1, a2, 0), 2);
        let state = fock_expand(&coeffs, 3, 4);
        let all = enumerate_up_to(4);
        for mu in &all {
            for nu in &all {
                if mu.size() + nu.size() > 4 {
                    continue;
                }
                let key = [
                    FockBasisState::from_partition(mu),
                    FockBasisState::from_partition(nu),
                ];
                assert_eq!(
                    state.coefficient(&key),
                    det_leg2(mu, nu, a1, a2),
                    "({mu}, {nu})"
                );
            }
        }
    }

    /// Three-leg expansion coefficients match the span-form determinant
    /// sum (the shipped `det_leg3` default).
    #[test]
    fn three_leg_matches_span_det() {
        use crate::fermion::dets::det_leg3;
        for f in [Framing::zero(), Framing::new(1, -1, 0)] {
            let coeffs = bogoliubov(f, 3);
            let state = fock_expand(&coeffs, 3, 4);
            let all = enumerate_up_to(4);
            for m1 in &all {
                for m2 in &all {
                    for m3 in &all {
                        if m1.size() + m2.size() + m3.size() > 4 {
                            continue;
                        }
                        let key = [
                            FockBasisState::from_partition(m1),
                            FockBasisState::from_partition(m2),
                            FockBasisState::from_partition(m3),
                        ];
                        assert_eq!(
                            state.coefficient(&key),
                            det_leg3(m1, m2, m3, &f),
                            "({m1}, {m2}, {m3}) at {f}"
                        );
                    }
                }
            }
        }
    }

    /// Cross-channel operators populate charged tuples: the single
    /// operator `A^{12}_{00} ψ^1_{1/2} ψ^{2*}_{−1/2}` contributes
    /// `q^{1/6}` on the charge `(+1, −1)` tuple.
    #[test]
    fn charged_components_present() {
        let coeffs = bogoliubov(Framing::zero(), 2);
        let state = fock_expand(&coeffs, 1, 1);
        let key = [
            FockBasisState::new(vec![0], vec![]),
            FockBasisState::new(vec![], vec![-1]),
        ];
        assert_eq!(state.coefficient(&key), QRat::t_pow(4));
    }

    /// The budget prunes exactly: enlarging it never changes
    /// coefficients on tuples inside the smaller budget.
    #[test]
    fn budget_pruning_is_exact() {
        let coeffs = bogoliubov(Framing::new(0, 1, 0), 2);
        let small = fock_expand(&coeffs, 3, 3);
        let large = fock_expand(&coeffs, 3, 6);
        for (key, coeff) in small.terms() {
            let total: u64 = key.iter().map(|b| b.energy_x2()).sum();
            if total <= 6 {
                assert_eq!(&large.coefficient(key), coeff);
            }
        }
    }
}
