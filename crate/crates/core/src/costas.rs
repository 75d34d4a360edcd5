//! Costas-type predicates and searches.
//!
//! A permutation is `k`-Costas when rows `0..=k` of its difference triangle are
//! repeat-free, and Costas when every row is. The variants at the end of the
//! module apply the same row test to centrosymmetric permutations (with the
//! forced repeats removed), signed permutations, and shorter sequences drawn
//! from `{1..n}`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::triangle::{DifferenceTriangle, IntSequence};

/// Largest order handled by the bitmask searches in this module.
pub const MAX_MASK_ORDER: usize = 64;

pub fn is_k_costas(p: &Permutation, k: usize) -> Result<bool> {
    let n = p.order();
    if k >= n {
        return Err(Error::DifferenceOrderOutOfRange { k, n });
    }
    DifferenceTriangle::of_permutation(p).distinct_through(k)
}

pub fn is_costas(p: &Permutation) -> bool {
    DifferenceTriangle::of_permutation(p).is_repeat_free()
}

/// A 1-Costas prefix `π_1..π_i` together with the columns and consecutive
/// differences it has used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuilderState {
    n: usize,
    prefix: Vec<usize>,
    used_columns: u64,
    used_diffs: u128,
}

impl BuilderState {
    /// Places the first 1 in column `first`.
    pub fn new(n: usize, first: usize) -> Result<Self> {
        if n == 0 || n > MAX_MASK_ORDER {
            return Err(Error::InvalidBuilderState(format!(
                "order {n} outside 1..={MAX_MASK_ORDER}"
            )));
        }
        if first == 0 || first > n {
            return Err(Error::InvalidBuilderState(format!(
                "column {first} outside 1..={n}"
            )));
        }
        Ok(Self {
            n,
            prefix: vec![first],
            used_columns: 1 << (first - 1),
            used_diffs: 0,
        })
    }

    /// Replays `prefix`, failing if it is not a 1-Costas prefix.
    pub fn from_prefix(n: usize, prefix: &[usize]) -> Result<Self> {
        let (&first, rest) = prefix
            .split_first()
            .ok_or_else(|| Error::InvalidBuilderState("empty prefix".into()))?;
        rest.iter()
            .try_fold(Self::new(n, first)?, |st, &col| st.extend(col))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn used_columns(&self) -> BTreeSet<usize> {
        (1..=self.n)
            .filter(|c| self.used_columns & (1 << (c - 1)) != 0)
            .collect()
    }

    pub fn used_diffs(&self) -> BTreeSet<i64> {
        let offset = self.n as i64 - 1;
        (0..2 * self.n - 1)
            .filter(|b| self.used_diffs & (1 << b) != 0)
            .map(|b| b as i64 - offset)
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.prefix.len() == self.n
    }

    pub fn permits(&self, col: usize) -> bool {
        self.diff_bit(col).is_some()
    }

    /// Columns whose placement in the next row keeps the prefix 1-Costas.
    pub fn permitted_positions(&self) -> Vec<usize> {
        if self.is_complete() {
            return Vec::new();
        }
        (1..=self.n).filter(|&c| self.permits(c)).collect()
    }

    pub fn extend(&self, col: usize) -> Result<Self> {
        let bit = self
            .diff_bit(col)
            .filter(|_| !self.is_complete())
            .ok_or(Error::ColumnNotPermitted { col })?;
        let mut prefix = self.prefix.clone();
        prefix.push(col);
        Ok(Self {
            n: self.n,
            prefix,
            used_columns: self.used_columns | 1 << (col - 1),
            used_diffs: self.used_diffs | bit,
        })
    }

    /// The finished permutation, once every row holds a 1.
    pub fn to_permutation(&self) -> Option<Permutation> {
        self.is_complete()
            .then(|| Permutation::from_entries_unchecked(self.prefix.clone()))
    }

    fn diff_bit(&self, col: usize) -> Option<u128> {
        if col == 0 || col > self.n || self.used_columns & (1 << (col - 1)) != 0 {
            return None;
        }
        let last = *self.prefix.last().expect("prefix is nonempty");
        fresh_diff_bit(self.n, self.used_diffs, last, col)
    }
}

/// Bit recording the consecutive difference `col - last`, or `None` if it is
/// already in `used`.
pub(crate) fn fresh_diff_bit(n: usize, used: u128, last: usize, col: usize) -> Option<u128> {
    let bit = 1u128 << (col + n - 1 - last);
    (used & bit == 0).then_some(bit)
}

/// Two segments between 1's of a permutation matrix with the same row
/// displacement and opposite column displacement. Points are `(row, column)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct JedwabWitness {
    pub first: ((usize, usize), (usize, usize)),
    pub second: ((usize, usize), (usize, usize)),
}

impl JedwabWitness {
    /// True when the two segments have an endpoint in common.
    pub fn shares_point(&self) -> bool {
        let (a, b) = self.first;
        let (c, d) = self.second;
        a == c || a == d || b == c || b == d
    }

    pub fn is_valid_for(&self, p: &Permutation) -> bool {
        let ((r, s), (u, v)) = self.first;
        let ((a, b), (c, d)) = self.second;
        let on = |(i, j): (usize, usize)| i >= 1 && i <= p.order() && p.at(i) == j;
        let signed = |x: usize| x as i64;
        on((r, s))
            && on((u, v))
            && on((a, b))
            && on((c, d))
            && (r, s) != (u, v)
            && self.first != self.second
            && signed(b) - signed(d) == signed(s) - signed(v)
            && signed(a) - signed(c) == -(signed(r) - signed(u))
    }
}

/// Lexicographically first witness `((r,s),(u,v)), ((a,b),(c,d))`, ordered by
/// the rows `(r, u, a)`.
pub fn jedwab_witness(p: &Permutation) -> Option<JedwabWitness> {
    let n = p.order();
    let col = |i: usize| p.at(i) as i64;
    for r in 1..=n {
        for u in (1..=n).filter(|&u| u != r) {
            let dr = u as i64 - r as i64;
            let ds = col(r) - col(u);
            for a in 1..=n {
                let c = a as i64 - dr;
                if c < 1 || c > n as i64 {
                    continue;
                }
                let c = c as usize;
                if col(a) - col(c) == ds {
                    let w = JedwabWitness {
                        first: ((r, p.at(r)), (u, p.at(u))),
                        second: ((a, p.at(a)), (c, p.at(c))),
                    };
                    if w.first != w.second {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// `π_k + π_{n+1-k} = n + 1` for every `k`: the matrix is invariant under a
/// half-turn.
pub fn is_centrosymmetric(p: &Permutation) -> bool {
    let n = p.order();
    (1..=n).all(|k| p.at(k) + p.at(n + 1 - k) == n + 1)
}

/// Centrosymmetric, and for each `k >= 1` the differences `π_{i+k} - π_i` with
/// `i + k <= n + 1 - i` are pairwise distinct.
pub fn is_costas_centrosymmetric(p: &Permutation) -> bool {
    if !is_centrosymmetric(p) {
        return false;
    }
    let n = p.order();
    (1..n).all(|k| {
        let mut seen = BTreeSet::new();
        (1..)
            .take_while(|&i| i + k <= n + 1 - i)
            .all(|i| seen.insert(p.at(i + k) as i64 - p.at(i) as i64))
    })
}

/// Keeps the first half and reverses the second half in place.
pub fn reverse_second_half(p: &Permutation) -> Result<Permutation> {
    let n = p.order();
    if !n.is_multiple_of(2) {
        return Err(Error::OddOrder(n));
    }
    let mut entries = p.entries().to_vec();
    entries[n / 2..].reverse();
    Ok(Permutation::from_entries_unchecked(entries))
}

/// Nonzero integers whose absolute values form a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SignedPermutation {
    entries: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let abs = entries
            .iter()
            .map(|v| usize::try_from(v.unsigned_abs()).unwrap_or(usize::MAX))
            .collect();
        Permutation::new(abs).map_err(|_| Error::InvalidSignedPermutation(entries.clone()))?;
        Ok(Self { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn magnitudes(&self) -> Permutation {
        Permutation::from_entries_unchecked(
            self.entries
                .iter()
                .map(|v| v.unsigned_abs() as usize)
                .collect(),
        )
    }
}

impl std::str::FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(crate::perm::parse_int_list(s)?)
    }
}

/// Every row of the triangle of the signed entries is repeat-free.
pub fn is_costas_signed(s: &SignedPermutation) -> bool {
    DifferenceTriangle::from_values(s.entries())
        .expect("entries with distinct magnitudes are distinct")
        .is_repeat_free()
}

/// Distinct values from `{1..n}` whose triangle has no repeat in any row.
pub fn is_costas_subpermutation(s: &[i64], n: usize) -> bool {
    if s.iter().any(|&v| v < 1 || v > n as i64) {
        return false;
    }
    DifferenceTriangle::from_values(s).is_ok_and(|t| t.is_repeat_free())
}

/// Exactly one value from each pair `{i, 2m+1-i}`, `i = 1..m`, forming a
/// Costas `m`-subpermutation of order `2m`.
pub fn is_costas_half(s: &[i64], m: usize) -> bool {
    if s.len() != m || m == 0 {
        return false;
    }
    let top = 2 * m as i64 + 1;
    let mut pairs = BTreeSet::new();
    let covers = s
        .iter()
        .all(|&v| v >= 1 && v < top && pairs.insert(v.min(top - v)));
    covers && is_costas_subpermutation(s, 2 * m)
}

/// Incremental row-by-row repeat tracking for sequences over `{1..n}`.
///
/// Bit `d + n - 1` of `rows[k]` is set when the difference `d` already occurs
/// in row `k`.
#[derive(Clone, Debug)]
pub struct RowMasks {
    n: usize,
    used_values: u64,
    rows: Vec<u128>,
}

impl RowMasks {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_MASK_ORDER, "order {n} exceeds {MAX_MASK_ORDER}");
        Self {
            n,
            used_values: 0,
            rows: vec![0; n],
        }
    }

    /// Appends `v` to `seq` if no row gains a repeat; `seq` is the sequence
    /// before the push.
    pub fn try_push(&mut self, seq: &[usize], v: usize) -> bool {
        if self.used_values & (1 << (v - 1)) != 0 {
            return false;
        }
        let bit = |k: usize| 1u128 << (v + self.n - 1 - seq[seq.len() - k]);
        if (1..=seq.len()).any(|k| self.rows[k] & bit(k) != 0) {
            return false;
        }
        self.used_values |= 1 << (v - 1);
        for k in 1..=seq.len() {
            self.rows[k] |= bit(k);
        }
        true
    }

    /// Undoes the `try_push` of `v` onto `seq`.
    pub fn pop(&mut self, seq: &[usize], v: usize) {
        let len = seq.len();
        self.used_values &= !(1 << (v - 1));
        for k in 1..=len {
            self.rows[k] &= !(1u128 << (v + self.n - 1 - seq[len - k]));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma {
    pub n: usize,
    pub m: usize,
    pub witness: IntSequence,
}

/// Largest `m` admitting a Costas `m`-subpermutation of order `n`, with the
/// first witness of that length in lexicographic order.
pub fn gamma(n: usize) -> Result<Gamma> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n, min: 1 });
    }
    if n > MAX_MASK_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_MASK_ORDER,
        });
    }

    fn dfs(n: usize, seq: &mut Vec<usize>, masks: &mut RowMasks, best: &mut Vec<usize>) -> bool {
        if seq.len() > best.len() {
            best.clone_from(seq);
            if seq.len() == n {
                return true;
            }
        }
        for v in 1..=n {
            if masks.try_push(seq, v) {
                seq.push(v);
                if dfs(n, seq, masks, best) {
                    return true;
                }
                seq.pop();
                masks.pop(seq, v);
            }
        }
        false
    }

    let mut best = Vec::new();
    dfs(
        n,
        &mut Vec::with_capacity(n),
        &mut RowMasks::new(n),
        &mut best,
    );
    let witness = IntSequence::new(best.iter().map(|&v| v as i64).collect())
        .expect("search only emits distinct values");
    Ok(Gamma {
        n,
        m: best.len(),
        witness,
    })
}
