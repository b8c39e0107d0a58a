//! Built-in property suites: fast, self-contained invariant checks that
//! exercise every layer of the engine (partition combinatorics, Schur
//! specializations, vertex symmetries, fermionic operator algebra).
//!
//! Each suite reports its name, how many cases it covered, and the
//! first counterexample if one exists. The bundle is exposed on the CLI
//! as `selfcheck` and returns a nonzero exit through the usual report
//! summary when any suite fails.

use std::time::Instant;

use framed_vertex::fermion::{apply_psi, apply_psi_star, epsilon_sign, FockBasisState, FockState};
use framed_vertex::partitions::{enumerate_up_to, lr_coefficient, Frobenius, Partition};
use framed_vertex::qseries::QRat;
use framed_vertex::specialize::{
    complete_at, elementary_at, power_sum_at, schur_at, schur_at_rho, schur_hook_det,
    skew_schur_at, Spec,
};
use framed_vertex::vertex::check_wtt;

use crate::report::{PathValue, TupleRecord, VerifyReport};

struct SuiteResult {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

/// Runs every property suite and bundles the outcomes into a report.
pub fn run_selfcheck() -> VerifyReport {
    let start = Instant::now();
    let suites = [
        kappa_identities(),
        schur_dual_paths(),
        two_leg_exchange(),
        canonical_anticommutation(),
        operator_split_sign(),
        newton_identities(),
        skew_hook_factorization(),
        lr_symmetry(),
    ];
    let records = suites
        .into_iter()
        .map(|s| {
            let mut fermionic = vec![PathValue {
                path: "cases".into(),
                value: s.cases.to_string(),
            }];
            if let Some(fail) = &s.failure {
                fermionic.push(PathValue {
                    path: "counterexample".into(),
                    value: fail.clone(),
                });
            }
            TupleRecord {
                partitions: Vec::new(),
                framing: Vec::new(),
                bosonic: PathValue {
                    path: "property-suite".into(),
                    value: s.name.into(),
                },
                fermionic,
                matched: s.failure.is_none(),
            }
        })
        .collect();
    VerifyReport::assemble(None, records, start.elapsed().as_secs_f64())
}

/// `κ_μ = Σ μ_i(μ_i − 2i + 1) = 2 Σ_e c(e) = Σ m_i(m_i+1) − n_i(n_i+1)`
/// over the Frobenius coordinates, and `κ_{μ^t} = −κ_μ`.
fn kappa_identities() -> SuiteResult {
    let mut cases = 0;
    let mut failure = None;
    for mu in enumerate_up_to(8) {
        cases += 1;
        let kappa = mu.kappa();
        let contents: i64 = mu
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 1) / 2 - (i as i64) * p
            })
            .sum();
        let fr = mu.frobenius();
        let hooks: i64 = (0..fr.len())
            .map(|t| fr.m[t] * (fr.m[t] + 1) - fr.n[t] * (fr.n[t] + 1))
            .sum();
        if kappa != 2 * contents || kappa != hooks || mu.conjugate().kappa() != -kappa {
            failure.get_or_insert(format!("μ = {mu}"));
        }
    }
    SuiteResult {
        name: "kappa-identities",
        cases,
        failure,
    }
}

/// The principal specialization agrees along the hook-content product,
/// the Jacobi–Trudi determinant, and the hook (Giambelli) determinant.
fn schur_dual_paths() -> SuiteResult {
    let rho = Spec::rho();
    let mut cases = 0;
    let mut failure = None;
    for mu in enumerate_up_to(8) {
        cases += 1;
        let direct = schur_at_rho(&mu);
        if schur_at(&rho, &mu) != direct || schur_hook_det(&rho, &mu) != direct {
            failure.get_or_insert(format!("μ = {mu}"));
        }
    }
    SuiteResult {
        name: "schur-specialization-dual-paths",
        cases,
        failure,
    }
}

/// The two-leg exchange symmetry under `q → q^{−1}` and conjugation.
fn two_leg_exchange() -> SuiteResult {
    let all = enumerate_up_to(5);
    let mut cases = 0;
    let mut failure = None;
    for mu in &all {
        for nu in &all {
            if mu.size() + nu.size() > 5 {
                continue;
            }
            cases += 1;
            if !check_wtt(mu, nu) {
                failure.get_or_insert(format!("(μ, ν) = ({mu}, {nu})"));
            }
        }
    }
    SuiteResult {
        name: "two-leg-exchange",
        cases,
        failure,
    }
}

/// Canonical anticommutation `{ψ_r, ψ*_s} = δ_{rs}` on a spread of
/// basis states, verified term by term.
fn canonical_anticommutation() -> SuiteResult {
    let mut cases = 0;
    let mut failure = None;
    for mu in enumerate_up_to(3) {
        let mut v = FockState::zero(1);
        v.add_term(vec![FockBasisState::from_partition(&mu)], QRat::one());
        for c1 in -3i64..=2 {
            for c2 in -3i64..=2 {
                cases += 1;
                let ab = apply_psi(c1, &apply_psi_star(c2, &v, 0), 0);
                let ba = apply_psi_star(c2, &apply_psi(c1, &v, 0), 0);
                let mut sum = FockState::zero(1);
                for (key, coeff) in ab.terms().chain(ba.terms()) {
                    sum.add_term(key.clone(), coeff.clone());
                }
                let expected = if c1 == c2 {
                    v.clone()
                } else {
                    FockState::zero(1)
                };
                if sum != expected {
                    failure.get_or_insert(format!("μ = {mu}, r = {c1}+1/2, s = {c2}+1/2"));
                }
            }
        }
    }
    SuiteResult {
        name: "canonical-anticommutation",
        cases,
        failure,
    }
}

/// Splitting an interleaved Frobenius operator product over a sub-hook
/// set costs exactly the two subset-shuffle signs.
fn operator_split_sign() -> SuiteResult {
    let vac = FockState::vacuum(1);
    let apply_hooks = |m: &[i64], n: &[i64], state: &FockState| {
        let mut out = state.clone();
        for t in (0..m.len()).rev() {
            out = apply_psi_star(-n[t] - 1, &out, 0);
            out = apply_psi(m[t], &out, 0);
        }
        out
    };
    let mut cases = 0;
    let mut failure = None;
    for mu in enumerate_up_to(5) {
        let fr = mu.frobenius();
        let whole = apply_hooks(&fr.m, &fr.n, &vac);
        for mask in 0u32..(1 << fr.len()) {
            let pick = |set: &[i64]| -> Vec<i64> {
                set.iter()
                    .enumerate()
                    .filter(|(t, _)| mask & (1 << t) != 0)
                    .map(|(_, &v)| v)
                    .collect()
            };
            let a = pick(&fr.m);
            let b = pick(&fr.n);
            cases += 1;
            let rest_m: Vec<i64> = fr.m.iter().copied().filter(|x| !a.contains(x)).collect();
            let rest_n: Vec<i64> = fr.n.iter().copied().filter(|x| !b.contains(x)).collect();
            let split = apply_hooks(&a, &b, &apply_hooks(&rest_m, &rest_n, &vac));
            let eps = epsilon_sign(&fr.m, &a).unwrap() * epsilon_sign(&fr.n, &b).unwrap();
            let mut expected = FockState::zero(1);
            for (key, coeff) in whole.terms() {
                expected.add_term(key.clone(), QRat::from_int(eps) * coeff.clone());
            }
            if split != expected {
                failure.get_or_insert(format!("μ = {mu}, subset mask {mask:b}"));
            }
        }
    }
    SuiteResult {
        name: "operator-split-sign",
        cases,
        failure,
    }
}

/// Newton's identities between power sums and the elementary/complete
/// values at the principal and a shifted specialization.
fn newton_identities() -> SuiteResult {
    let specs = [Spec::rho(), Spec::shifted(Partition::new(vec![2, 1]))];
    let mut cases = 0;
    let mut failure = None;
    for spec in &specs {
        for k in 1i64..=8 {
            cases += 1;
            let mut e_side = QRat::zero();
            let mut h_side = QRat::zero();
            for i in 1..=k {
                let p = power_sum_at(spec, i as u64);
                let e_term = p.clone() * elementary_at(spec, k - i);
                e_side = if i % 2 == 1 {
                    e_side + e_term
                } else {
                    e_side + QRat::from_int(-1) * e_term
                };
                h_side = h_side + p * complete_at(spec, k - i);
            }
            let k_q = QRat::from_int(k);
            if k_q.clone() * elementary_at(spec, k) != e_side
                || k_q * complete_at(spec, k) != h_side
            {
                failure.get_or_insert(format!("k = {k}"));
            }
        }
    }
    SuiteResult {
        name: "newton-identities",
        cases,
        failure,
    }
}

/// Skew hook Schur values at the principal specialization factor as
/// `h_{m−s}(q^ρ) e_{n−t}(q^ρ)` (zero factors covering non-containment).
fn skew_hook_factorization() -> SuiteResult {
    let rho = Spec::rho();
    let hook = |m: i64, n: i64| {
        Frobenius {
            m: vec![m],
            n: vec![n],
        }
        .to_partition()
    };
    let mut cases = 0;
    let mut failure = None;
    for m in 0..=4i64 {
        for n in 0..=4i64 {
            let outer = hook(m, n);
            for s in 0..=4i64 {
                for t in 0..=4i64 {
                    cases += 1;
                    let lhs = skew_schur_at(&rho, &outer, &hook(s, t));
                    let rhs = complete_at(&rho, m - s) * elementary_at(&rho, n - t);
                    if lhs != rhs {
                        failure.get_or_insert(format!("(m|n) = ({m}|{n}), (s|t) = ({s}|{t})"));
                    }
                }
            }
        }
    }
    SuiteResult {
        name: "skew-hook-factorization",
        cases,
        failure,
    }
}

/// Littlewood–Richardson symmetry `c^λ_{μν} = c^λ_{νμ}`.
fn lr_symmetry() -> SuiteResult {
    let all = enumerate_up_to(6);
    let mut cases = 0;
    let mut failure = None;
    for lambda in &all {
        for mu in &all {
            if mu.size() > lambda.size() {
                continue;
            }
            for nu in &all {
                if mu.size() + nu.size() != lambda.size() {
                    continue;
                }
                cases += 1;
                if lr_coefficient(lambda, mu, nu) != lr_coefficient(lambda, nu, mu) {
                    failure.get_or_insert(format!("λ = {lambda}, μ = {mu}, ν = {nu}"));
                }
            }
        }
    }
    SuiteResult {
        name: "lr-symmetry",
        cases,
        failure,
    }
}
