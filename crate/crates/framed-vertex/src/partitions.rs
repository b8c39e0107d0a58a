//! Integer partitions and the combinatorics the vertex formulas consume.
//!
//! * [`Partition`] — weakly decreasing positive parts; conjugation, hooks,
//!   containment, subdiagram enumeration, and the framing weight
//!   `kappa(mu) = sum_i mu_i (mu_i - 2i + 1)`.
//! * [`Frobenius`] — diagonal (arm | leg) coordinates, both directions.
//! * [`enumerate`] / [`enumerate_up_to`] — reverse-lexicographic generation
//!   (the sweep order used by the verification harness).
//! * [`lr_coefficient`] — Littlewood–Richardson coefficients by counting
//!   lattice skew tableaux, memoized process-wide.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer partition: weakly decreasing positive parts.
///
/// The canonical order (`Ord`) is the sweep order of the verification
/// harness: total size ascending, then reverse-lexicographic within a size
/// (so `(n)` comes first and `(1,...,1)` last).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from parts. Panics unless the parts are positive and weakly
    /// decreasing.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(
            parts.last().is_none_or(|&p| p > 0),
            "partition parts must be positive: {parts:?}"
        );
        Partition { parts }
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The parts, weakly decreasing.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `i`-th part, 0-based, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether this is the empty partition.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total size `|mu|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// The conjugate (transposed diagram) partition.
    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = Vec::with_capacity(cols);
        for j in 0..cols {
            t.push(self.parts.iter().take_while(|&&p| p as usize > j).count() as u32);
        }
        Partition { parts: t }
    }

    /// Whether `self` contains `inner` as a diagram (skew shapes).
    pub fn contains(&self, inner: &Partition) -> bool {
        inner
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i) >= p)
    }

    /// The framing weight `kappa(mu) = sum_i mu_i (mu_i - 2i + 1)`
    /// (1-based `i`); antisymmetric under conjugation.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                let row = i as i64 + 1;
                p * (p - 2 * row + 1)
            })
            .sum()
    }

    /// Multiset of hook lengths, one per cell, in row-major order.
    pub fn hooks(&self) -> Vec<u64> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p as usize {
                let arm = p as u64 - (j as u64 + 1);
                let leg = conj.parts[j] as u64 - (i as u64 + 1);
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Diagonal (arm | leg) coordinates.
    pub fn frobenius(&self) -> Frobenius {
        let conj = self.conjugate();
        let d = self
            .parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p as usize > i)
            .count();
        let m = (0..d)
            .map(|i| self.parts[i] as i64 - i as i64 - 1)
            .collect();
        let n = (0..d)
            .map(|i| conj.parts[i] as i64 - i as i64 - 1)
            .collect();
        Frobenius { m, n }
    }

    /// All partitions contained in `self`, in a deterministic order.
    pub fn subdiagrams(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut rows: Vec<u32> = Vec::new();
        fn rec(mu: &Partition, row: usize, rows: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if row == mu.len() {
                out.push(Partition {
                    parts: rows.iter().copied().take_while(|&p| p > 0).collect(),
                });
                return;
            }
            let cap = if row == 0 {
                mu.parts[0]
            } else {
                rows[row - 1].min(mu.parts[row])
            };
            for p in (0..=cap).rev() {
                rows.push(p);
                rec(mu, row + 1, rows, out);
                rows.pop();
                if p == 0 {
                    break; // rows below a zero row are zero too
                }
            }
        }
        rec(self, 0, &mut rows, &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            // Within a size: reverse-lexicographic, so larger leading parts
            // come first in ascending order.
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) || parts.last().is_some_and(|&p| p == 0) {
            return Err(D::Error::custom(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }
}

/// Frobenius coordinates of a partition: strictly decreasing arm lengths
/// `m_i = mu_i - i` and leg lengths `n_i = mu'_i - i` along the diagonal
/// (0-based `i` would shift both; these use the 1-based convention so each
/// diagonal hook contributes `m_i + n_i + 1` cells).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frobenius {
    /// Arm lengths, strictly decreasing, nonnegative.
    pub m: Vec<i64>,
    /// Leg lengths, strictly decreasing, nonnegative.
    pub n: Vec<i64>,
}

impl Frobenius {
    /// Diagonal length.
    pub fn len(&self) -> usize {
        self.m.len()
    }

    /// Whether the coordinates describe the empty partition.
    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// Total size of the underlying partition.
    pub fn size(&self) -> u64 {
        self.m
            .iter()
            .zip(&self.n)
            .map(|(&m, &n)| (m + n + 1) as u64)
            .sum()
    }

    /// Reconstruct the partition. Panics if the coordinates are not
    /// strictly decreasing, nonnegative, and of equal length.
    pub fn to_partition(&self) -> Partition {
        assert_eq!(self.m.len(), self.n.len(), "arm/leg length mismatch");
        for v in [&self.m, &self.n] {
            assert!(
                v.windows(2).all(|w| w[0] > w[1]) && v.last().is_none_or(|&x| x >= 0),
                "Frobenius coordinates must be strictly decreasing and nonnegative"
            );
        }
        let d = self.m.len();
        let mut parts: Vec<u32> = (0..d).map(|i| (self.m[i] + i as i64 + 1) as u32).collect();
        // Rows below the diagonal, read off the leg lengths.
        let mut row = d as i64 + 1;
        loop {
            let len = (0..d).filter(|&j| self.n[j] + j as i64 + 1 >= row).count() as u32;
            if len == 0 {
                break;
            }
            parts.push(len);
            row += 1;
        }
        Partition::new(parts)
    }
}

/// All partitions of `n`, reverse-lexicographic: `(n)` first, `(1^n)` last.
pub fn enumerate(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix: Vec<u32> = Vec::new();
    fn rec(remaining: u64, max: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let cap = remaining.min(max);
        for p in (1..=cap).rev() {
            prefix.push(p as u32);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    rec(n, n, &mut prefix, &mut out);
    out
}

/// All partitions of total size `0..=n` in sweep order (size ascending,
/// reverse-lexicographic within a size).
pub fn enumerate_up_to(n: u64) -> Vec<Partition> {
    (0..=n).flat_map(enumerate).collect()
}

/// Littlewood–Richardson coefficient `c^{outer}_{inner, other}`: the
/// multiplicity of `s_outer` in `s_inner * s_other`, computed by counting
/// semistandard skew tableaux of shape `outer/inner` and content `other`
/// whose reverse reading word is a lattice word. Memoized process-wide.
pub fn lr_coefficient(outer: &Partition, inner: &Partition, other: &Partition) -> u64 {
    if !outer.contains(inner)
        || outer.size() != inner.size() + other.size()
        || !outer.contains(other)
    {
        // |outer/inner| must match |other|; and other ⊆ outer is necessary
        // (each value k appears only in rows ≥ k of the skew tableau).
        return 0;
    }
    if other.is_empty() {
        return (outer == inner) as u64;
    }
    static CACHE: OnceLock<DashMap<(Partition, Partition, Partition), u64>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    let key = (outer.clone(), inner.clone(), other.clone());
    if let Some(hit) = cache.get(&key) {
        return *hit;
    }
    let count = count_lattice_tableaux(outer, inner, other);
    cache.insert(key, count);
    count
}

/// Count lattice skew tableaux by filling cells in reading order (top row to
/// bottom, right to left within a row).
fn count_lattice_tableaux(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    // Cells of outer/inner in reading order as (row, col), 0-based.
    let mut cells = Vec::new();
    for r in 0..outer.len() {
        let lo = inner.part(r);
        let hi = outer.part(r);
        for c in (lo..hi).rev() {
            cells.push((r, c as usize));
        }
    }
    let max_val = content.len();
    // grid[r][c] = value placed (1-based); 0 = unfilled or absent.
    let mut grid: Vec<Vec<u32>> = (0..outer.len())
        .map(|r| vec![0; outer.part(r) as usize])
        .collect();
    let mut counts = vec![0u32; max_val + 1];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        content: &Partition,
        inner: &Partition,
        max_val: usize,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=max_val as u32 {
            // Content bound.
            if counts[v as usize] >= content.part(v as usize - 1) {
                continue;
            }
            // Lattice: after placing v, #v's must not exceed #(v-1)'s.
            if v > 1 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            // Row weakly increasing: right neighbor (already filled) ≥ v.
            if c + 1 < grid[r].len() && grid[r][c + 1] != 0 && grid[r][c + 1] < v {
                continue;
            }
            // Column strictly increasing: cell above (if in the skew shape,
            // it is already filled) < v.
            if r > 0 && c >= inner.part(r - 1) as usize && c < grid[r - 1].len() {
                let above = grid[r - 1][c];
                if above != 0 && above >= v {
                    continue;
                }
            }
            grid[r][c] = v;
            counts[v as usize] += 1;
            total += rec(idx + 1, cells, grid, counts, content, inner, max_val);
            counts[v as usize] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    rec(0, &cells, &mut grid, &mut counts, content, inner, max_val)
}
