//! Determinantal closed forms for the fermionic vertex coefficients.
//!
//! * [`det_leg1`] — one leg: `(−1)^{n_1+···+n_k} det(A_{m_i n_j})`.
//! * [`det_leg2`] — two legs: the sum over Frobenius sub-hooks
//!   `γ = (A|B) < μ`, `γ' = (A'|B') < ν` with equal rank, signed by
//!   subset-shuffle signs, of
//!   `det(A^{11}) det(A^{22}) det(A^{12}) det(A^{21})`.
//! * [`det_leg3`] / [`det_leg3_variant`] — three legs. The printed
//!   closed form carries sign ambiguities (see [`SignVariant`]), so
//!   every candidate is implemented and tested against the direct
//!   expansion oracle; the default is the surviving variant.
//! * [`epsilon_sign`] — the sign `ε(M/A)` of the permutation sorting
//!   `(A, M∖A)` back into decreasing order.
//!
//! The span-form engine ([`SignVariant::SpanForm`]) expands the
//! exponential into per-channel determinants times a product of
//! operator symbols, then computes the sign of rearranging that symbol
//! sequence into the target leg-major Frobenius order by exact inversion
//! counting. No sign in it is guessed: creators carry positive modes and
//! annihilators negative ones, so all symbols strictly anticommute.

use std::collections::HashMap;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::partitions::{Frobenius, Partition};
use crate::qseries::{determinant, QRat};
use crate::vertex::Framing;

use super::coeffs::{bogoliubov, ebar, hbar, sbar_hook, BogoliubovCoeffs};
use super::FermionError;

/// `(−1)^k` as an exact value.
fn parity_qrat(k: i64) -> QRat {
    QRat::from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Sign of the permutation sorting `(subset, set ∖ subset)` back into
/// decreasing order, computed by inversion counting.
pub fn epsilon_sign(set: &[i64], subset: &[i64]) -> Result<i64, FermionError> {
    let mut rest: Vec<i64> = set.to_vec();
    for s in subset {
        match rest.iter().position(|x| x == s) {
            Some(i) => {
                rest.remove(i);
            }
            None => {
                return Err(FermionError::NotASubset {
                    set: set.to_vec(),
                    subset: subset.to_vec(),
                })
            }
        }
    }
    let mut seq: Vec<i64> = subset.to_vec();
    seq.extend(rest);
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] < seq[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Determinant of the channel block `A^{ij}` with the given particle
/// rows and hole columns (both decreasing). Empty blocks give 1.
fn channel_det(coeffs: &BogoliubovCoeffs, i: u8, j: u8, rows: &[i64], cols: &[i64]) -> QRat {
    debug_assert_eq!(rows.len(), cols.len());
    let mat: Vec<Vec<QRat>> = rows
        .iter()
        .map(|&m| {
            cols.iter()
                .map(|&n| coeffs.get(i, j, m as u32, n as u32))
                .collect()
        })
        .collect();
    determinant(&mat)
}

/// One-leg coefficient `(−1)^{n_1+···+n_k} det(A_{m_i n_j})`; equals
/// `q^{aκ_μ/2} s_μ(q^ρ)`.
pub fn det_leg1(mu: &Partition, a: i64) -> QRat {
    let fr = mu.frobenius();
    let coeffs = bogoliubov(Framing::new(a, 0, 0), 1);
    let nsum: i64 = fr.n.iter().sum();
    parity_qrat(nsum) * channel_det(&coeffs, 1, 1, &fr.m, &fr.n)
}

/// Two-leg coefficient
/// `C^{(a1,a2)}_{μν} = (−1)^{||N||+||N'||} Σ (−1)^{r} ε(M/A) ε(N/B)
///  ε(M'/A') ε(N'/B') det(A^{11}_{(M∖A|N∖B)}) det(A^{22}_{(M'∖A'|N'∖B')})
///  det(A^{12}_{(A|B')}) det(A^{21}_{(A'|B)})`,
/// summed over `γ = (A|B) < μ`, `γ' = (A'|B') < ν` of equal rank `r`.
pub fn det_leg2(mu: &Partition, nu: &Partition, a1: i64, a2: i64) -> QRat {
    let coeffs = bogoliubov(Framing::new(a1, a2, 0), 2);
    let frm = mu.frobenius();
    let frn = nu.frobenius();
    let mut total = QRat::zero();
    for r in 0..=frm.len().min(frn.len()) {
        for a_sub in frm.m.iter().copied().combinations(r) {
            let m_rest = complement(&frm.m, &a_sub);
            let eps_a = epsilon_sign(&frm.m, &a_sub).unwrap();
            for b_sub in frm.n.iter().copied().combinations(r) {
                let n_rest = complement(&frm.n, &b_sub);
                let eps_b = epsilon_sign(&frm.n, &b_sub).unwrap();
                let d11 = channel_det(&coeffs, 1, 1, &m_rest, &n_rest);
                for ap_sub in frn.m.iter().copied().combinations(r) {
                    let mp_rest = complement(&frn.m, &ap_sub);
                    let eps_ap = epsilon_sign(&frn.m, &ap_sub).unwrap();
                    let d21 = channel_det(&coeffs, 2, 1, &ap_sub, &b_sub);
                    for bp_sub in frn.n.iter().copied().combinations(r) {
                        let np_rest = complement(&frn.n, &bp_sub);
                        let eps_bp = epsilon_sign(&frn.n, &bp_sub).unwrap();
                        let d22 = channel_det(&coeffs, 2, 2, &mp_rest, &np_rest);
                        let d12 = channel_det(&coeffs, 1, 2, &a_sub, &bp_sub);
                        let sign =
                            parity_qrat(r as i64) * QRat::from_int(eps_a * eps_b * eps_ap * eps_bp);
                        total = total + sign * d11.clone() * d22 * d12 * d21.clone();
                    }
                }
            }
        }
    }
    let nsum: i64 = frm.n.iter().sum::<i64>() + frn.n.iter().sum::<i64>();
    parity_qrat(nsum) * total
}

/// Elements of `set` not in `subset`, order preserved.
fn complement(set: &[i64], subset: &[i64]) -> Vec<i64> {
    set.iter()
        .copied()
        .filter(|x| !subset.contains(x))
        .collect()
}

/// Candidate resolutions of the printed three-leg closed form's sign
/// ambiguities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignVariant {
    /// The bordered closed form exactly as printed, sign exponent
    /// `r²¹r²³ + r³¹r³² + r²¹r²¹ + r³²r¹³ + r¹³ + r²¹ + r³²`
    /// (including the suspicious squared term).
    AsPrinted,
    /// The bordered closed form with the quadratic part taken from the
    /// span lemma instead: `r³²r¹² + r³¹r³² + r²¹r²¹ + r³²r¹³`, linear
    /// part unchanged.
    SpanExponentPrinted,
    /// The bordered closed form with the squared term read as the cross
    /// term `r²¹r³¹`.
    SquareAsCross,
    /// The span form: sum over set decompositions of per-channel
    /// determinants with the rearrangement sign computed exactly by
    /// inversion counting (no closed-form sign exponent at all).
    SpanForm,
}

impl SignVariant {
    /// All candidates, in a fixed reporting order.
    pub fn all() -> [SignVariant; 4] {
        [
            SignVariant::AsPrinted,
            SignVariant::SpanExponentPrinted,
            SignVariant::SquareAsCross,
            SignVariant::SpanForm,
        ]
    }
}

impl std::fmt::Display for SignVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SignVariant::AsPrinted => "as-printed",
            SignVariant::SpanExponentPrinted => "span-exponent-printed",
            SignVariant::SquareAsCross => "square-as-cross",
            SignVariant::SpanForm => "span-form",
        };
        f.write_str(s)
    }
}

impl FromStr for SignVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "as-printed" => Ok(SignVariant::AsPrinted),
            "span-exponent-printed" => Ok(SignVariant::SpanExponentPrinted),
            "square-as-cross" => Ok(SignVariant::SquareAsCross),
            "span-form" => Ok(SignVariant::SpanForm),
            other => Err(format!(
                "unknown sign variant '{other}' (expected one of: as-printed, \
                 span-exponent-printed, square-as-cross, span-form)"
            )),
        }
    }
}

/// Three-leg coefficient in the default variant ([`SignVariant::SpanForm`],
/// the one that agrees with the direct expansion oracle; the printed
/// bordered variants fail already on one-leg inputs).
pub fn det_leg3(mu1: &Partition, mu2: &Partition, mu3: &Partition, f: &Framing) -> QRat {
    det_leg3_variant(mu1, mu2, mu3, f, SignVariant::SpanForm)
}

/// Three-leg coefficient in a chosen sign variant.
pub fn det_leg3_variant(
    mu1: &Partition,
    mu2: &Partition,
    mu3: &Partition,
    f: &Framing,
    variant: SignVariant,
) -> QRat {
    let mus = [mu1.clone(), mu2.clone(), mu3.clone()];
    match variant {
        SignVariant::SpanForm => span_form(&bogoliubov(*f, 3), &mus),
        _ => bordered(&mus, f, variant, 0),
    }
}

/// An operator symbol: a creator `ψ` on `(leg, particle coordinate m)`
/// or an annihilator `ψ*` on `(leg, hole coordinate n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Symbol {
    Particle(usize, i64),
    Hole(usize, i64),
}

/// Parity sign of the permutation sending the symbol sequence `from`
/// to `to` (all symbols anticommute, so each inversion flips the sign).
fn rearrangement_sign(from: &[Symbol], to: &[Symbol]) -> i64 {
    debug_assert_eq!(from.len(), to.len());
    let pos: HashMap<Symbol, usize> = to.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let perm: Vec<usize> = from.iter().map(|s| pos[s]).collect();
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The span form of the expectation
/// `⟨μ^1, …, μ^L| Π (1 + A^{ij}_{mn} ψ^{ij}_{mn}) |0⟩^{⊗L}`:
/// decompose each leg's particles over the channels that create them and
/// each leg's holes over the channels that annihilate them, take the
/// per-channel determinants, and fix the sign by rearranging the
/// channel-ordered symbol sequence into the leg-major Frobenius order.
/// The global `(−1)^{Σ||N^i||}` comes from the bra normalization.
fn span_form(coeffs: &BogoliubovCoeffs, mus: &[Partition]) -> QRat {
    let legs = coeffs.legs() as usize;
    assert_eq!(mus.len(), legs);
    let frs: Vec<Frobenius> = mus.iter().map(|m| m.frobenius()).collect();
    let ranks: Vec<usize> = frs.iter().map(|f| f.len()).collect();

    // The target symbol sequence: leg-major interleaved Frobenius pairs.
    let mut target: Vec<Symbol> = Vec::new();
    for (leg, fr) in frs.iter().enumerate() {
        for t in 0..fr.len() {
            target.push(Symbol::Particle(leg, fr.m[t]));
            target.push(Symbol::Hole(leg, fr.n[t]));
        }
    }

    // One channel label per particle and per hole: particle t of leg i
    // is created by channel (i, label), hole t of leg i is annihilated
    // by channel (label, i). Enumerate all labelings mixed-radix.
    let digits: usize = ranks.iter().map(|k| 2 * k).sum();
    let mut labels = vec![0usize; digits];
    let mut total = QRat::zero();
    loop {
        total = total + span_term(coeffs, &frs, &labels, &target, legs);
        // Advance the mixed-radix counter.
        let mut pos = 0;
        while pos < digits {
            labels[pos] += 1;
            if labels[pos] < legs {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
        if pos == digits {
            break;
        }
    }

    let nsum: i64 = frs.iter().map(|f| f.n.iter().sum::<i64>()).sum();
    parity_qrat(nsum) * total
}

/// One labeled decomposition's contribution to the span form (zero when
/// the channel particle/hole counts do not match).
fn span_term(
    coeffs: &BogoliubovCoeffs,
    frs: &[Frobenius],
    labels: &[usize],
    target: &[Symbol],
    legs: usize,
) -> QRat {
    // Split the flat label vector back into per-leg particle/hole labels.
    let mut m_blocks = vec![vec![Vec::new(); legs]; legs];
    let mut n_blocks = vec![vec![Vec::new(); legs]; legs];
    let mut idx = 0;
    for (leg, fr) in frs.iter().enumerate() {
        for t in 0..fr.len() {
            m_blocks[leg][labels[idx]].push(fr.m[t]);
            idx += 1;
        }
        for t in 0..fr.len() {
            n_blocks[labels[idx]][leg].push(fr.n[t]);
            idx += 1;
        }
    }
    for i in 0..legs {
        for j in 0..legs {
            if m_blocks[i][j].len() != n_blocks[i][j].len() {
                return QRat::zero();
            }
        }
    }

    // Channel-ordered identity-paired symbol sequence, and the product
    // of channel determinants.
    let mut source: Vec<Symbol> = Vec::new();
    let mut dets = QRat::one();
    for i in 0..legs {
        for j in 0..legs {
            for t in 0..m_blocks[i][j].len() {
                source.push(Symbol::Particle(i, m_blocks[i][j][t]));
                source.push(Symbol::Hole(j, n_blocks[i][j][t]));
            }
            if !m_blocks[i][j].is_empty() {
                dets = dets
                    * channel_det(
                        coeffs,
                        i as u8 + 1,
                        j as u8 + 1,
                        &m_blocks[i][j],
                        &n_blocks[i][j],
                    );
                if dets.is_zero() {
                    return QRat::zero();
                }
            }
        }
    }
    QRat::from_int(rearrangement_sign(&source, target)) * dets
}

/// The bordered three-determinant closed form, parameterized by the
/// sign-exponent variant. `extra_bound` widens the derived sequence
/// bounds (used by tests to assert the bounds are exact).
fn bordered(mus: &[Partition; 3], f: &Framing, variant: SignVariant, extra_bound: i64) -> QRat {
    let frs: Vec<Frobenius> = mus.iter().map(|m| m.frobenius()).collect();
    let k: Vec<usize> = frs.iter().map(|f| f.len()).collect();
    let max_m: Vec<Option<i64>> = frs.iter().map(|f| f.m.first().copied()).collect();
    let max_n: Vec<Option<i64>> = frs.iter().map(|f| f.n.first().copied()).collect();
    let a = [f.a1, f.a2, f.a3];

    // A sequence paired with particles of one leg and holes of another
    // is bounded by both maxima: beyond them an entire bordered
    // row/column vanishes (ē_k = h̄_k = 0 for k < 0) and the term drops.
    let seq_bound = |pm: Option<i64>, hn: Option<i64>| -> Option<i64> {
        match (pm, hn) {
            (Some(x), Some(y)) => Some(x.min(y) + extra_bound),
            _ => None,
        }
    };
    // Strictly decreasing nonnegative sequences of the given length.
    let seqs = |len: usize, bound: Option<i64>| -> Vec<Vec<i64>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        match bound {
            None => Vec::new(),
            Some(b) if b < 0 => Vec::new(),
            Some(b) => (0..=b).rev().combinations(len).collect(),
        }
    };

    let prefactor = QRat::q_half_pow((0..3).fold(0, |acc, i| acc + (a[i] + 1) * mus[i].kappa()));
    let mut total = QRat::zero();
    for r12 in 0..=k[0] {
        for r13 in 0..=k[0] - r12 {
            for r21 in 0..=k[1] {
                for r23 in 0..=k[1] - r21 {
                    for r31 in 0..=k[2] {
                        for r32 in 0..=k[2] - r31 {
                            if r12 + r13 != r21 + r31
                                || r21 + r23 != r12 + r32
                                || r31 + r32 != r13 + r23
                            {
                                continue;
                            }
                            let quad = match variant {
                                SignVariant::AsPrinted => {
                                    r21 * r23 + r31 * r32 + r21 * r21 + r32 * r13
                                }
                                SignVariant::SpanExponentPrinted => {
                                    r32 * r12 + r31 * r32 + r21 * r21 + r32 * r13
                                }
                                SignVariant::SquareAsCross => {
                                    r21 * r23 + r31 * r32 + r21 * r31 + r32 * r13
                                }
                                SignVariant::SpanForm => unreachable!(),
                            };
                            let sign = parity_qrat((quad + r13 + r21 + r32) as i64);
                            let sixth = QRat::t_pow(
                                4 * (r12 as i64 + r23 as i64 + r31 as i64
                                    - r21 as i64
                                    - r32 as i64
                                    - r13 as i64),
                            );
                            for t in seqs(r12, seq_bound(max_m[0], max_n[1])) {
                                for tpp in seqs(r23, seq_bound(max_m[1], max_n[2])) {
                                    for tp in seqs(r31, seq_bound(max_m[2], max_n[0])) {
                                        for s in seqs(r21, seq_bound(max_m[1], max_n[0])) {
                                            for spp in seqs(r32, seq_bound(max_m[2], max_n[1])) {
                                                for sp in seqs(r13, seq_bound(max_m[0], max_n[2])) {
                                                    let d1 =
                                                        bordered_det(&frs[0], &sp, &t, &s, &tp);
                                                    let d2 =
                                                        bordered_det(&frs[1], &s, &tpp, &spp, &t);
                                                    let d3 =
                                                        bordered_det(&frs[2], &spp, &tp, &sp, &tpp);
                                                    total = total
                                                        + sign.clone()
                                                            * sixth.clone()
                                                            * d1
                                                            * d2
                                                            * d3;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    prefactor * total
}

/// One bordered determinant: hook values in the top-left `k×k` block,
/// `h̄_{m−h_col}` and `ē_{m−e_col}` border columns, `h̄_{n−h_row}` and
/// `ē_{n−e_row}` border rows, zeros in the corner.
fn bordered_det(
    fr: &Frobenius,
    h_cols: &[i64],
    e_cols: &[i64],
    h_rows: &[i64],
    e_rows: &[i64],
) -> QRat {
    let k = fr.len();
    let size = k + h_rows.len() + e_rows.len();
    debug_assert_eq!(size, k + h_cols.len() + e_cols.len());
    let mut mat = vec![vec![QRat::zero(); size]; size];
    for (y, row) in mat.iter_mut().enumerate() {
        for (x, cell) in row.iter_mut().enumerate() {
            *cell = if y < k && x < k {
                sbar_hook(fr.m[y], fr.n[x])
            } else if y < k && x < k + h_cols.len() {
                hbar(fr.m[y] - h_cols[x - k])
            } else if y < k {
                ebar(fr.m[y] - e_cols[x - k - h_cols.len()])
            } else if x < k && y < k + h_rows.len() {
                hbar(fr.n[x] - h_rows[y - k])
            } else if x < k {
                ebar(fr.n[x] - e_rows[y - k - h_rows.len()])
            } else {
                QRat::zero()
            };
        }
    }
    determinant(&mat)
}
