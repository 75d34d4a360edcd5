//! Convex permutations, whose derivative is non-decreasing.
//!
//! In matrix form `π` has its 1 in row `i` at column `π_i`. The column-fill algorithm fills
//! the columns left to right; after `k` columns the occupied rows must form an
//! interval on which the partial permutation is already convex.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{check_order, Permutation};

pub fn is_convex(p: &Permutation) -> bool {
    p.derivative().diffs().windows(2).all(|w| w[0] <= w[1])
}

/// The first `k` columns of an `n x n` matrix, one 1 per column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialColumnFill {
    n: usize,
    /// `rows[c]` is the row of the 1 in column `c + 1`.
    rows: Vec<usize>,
}

impl PartialColumnFill {
    pub fn new(n: usize, rows: Vec<usize>) -> Result<Self> {
        check_order(n, 1)?;
        if rows.len() > n {
            return Err(Error::InvalidColumnFill(format!(
                "{} columns filled in order {n}",
                rows.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &row in &rows {
            if row == 0 || row > n {
                return Err(Error::RowIndexOutOfRange { row, n });
            }
            if !seen.insert(row) {
                return Err(Error::InvalidColumnFill(format!("row {row} used twice")));
            }
        }
        Ok(Self { n, rows })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// The first `k` columns of the matrix of `p`.
    pub fn from_permutation_prefix(p: &Permutation, k: usize) -> Result<Self> {
        let n = p.order();
        if k > n {
            return Err(Error::InvalidColumnFill(format!(
                "{k} columns in order {n}"
            )));
        }
        let inv = p.inverse();
        Ok(Self {
            n,
            rows: inv.entries()[..k].to_vec(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of filled columns.
    pub fn filled(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_complete(&self) -> bool {
        self.rows.len() == self.n
    }

    /// `I_k`, the rows holding a 1 in the filled columns.
    pub fn interval_rows(&self) -> BTreeSet<usize> {
        self.rows.iter().copied().collect()
    }

    /// `(r, s)` when `I_k = {r, ..., s}`.
    pub fn interval(&self) -> Option<(usize, usize)> {
        let r = *self.rows.iter().min()?;
        let s = *self.rows.iter().max()?;
        (s - r + 1 == self.rows.len()).then_some((r, s))
    }

    /// `I_k` is an interval and the columns read down rows `r..=s` have
    /// non-decreasing consecutive differences.
    pub fn is_k_convex(&self) -> bool {
        let Some((r, s)) = self.interval() else {
            return false;
        };
        let mut cols = vec![0i64; s - r + 1];
        for (c, &row) in self.rows.iter().enumerate() {
            cols[row - r] = c as i64 + 1;
        }
        let diffs: Vec<i64> = cols.windows(2).map(|w| w[1] - w[0]).collect();
        diffs.windows(2).all(|w| w[0] <= w[1])
    }

    /// `I*_k`: the rows among `r - 1` and `s + 1` where a 1 in the next
    /// column keeps the state convex.
    pub fn extension_rows(&self) -> Result<BTreeSet<usize>> {
        let (r, s) = self
            .interval()
            .filter(|_| self.is_k_convex())
            .ok_or(Error::StateNotKConvex)?;
        if self.is_complete() {
            return Ok(BTreeSet::new());
        }
        let candidates = [
            r.checked_sub(1).filter(|&x| x >= 1),
            Some(s + 1).filter(|&x| x <= self.n),
        ];
        Ok(candidates
            .into_iter()
            .flatten()
            .filter(|&row| self.with_next(row).is_k_convex())
            .collect())
    }

    /// Places a 1 in the next column at `row`, which must be in `I*_k`.
    pub fn extend(&self, row: usize) -> Result<Self> {
        if !self.extension_rows()?.contains(&row) {
            return Err(Error::InvalidColumnFill(format!(
                "row {row} not an admissible extension"
            )));
        }
        Ok(self.with_next(row))
    }

    fn with_next(&self, row: usize) -> Self {
        let mut rows = self.rows.clone();
        rows.push(row);
        Self { n: self.n, rows }
    }

    /// The permutation with `π_row = column`, once every column is filled.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_complete() {
            return None;
        }
        let mut entries = vec![0; self.n];
        for (c, &row) in self.rows.iter().enumerate() {
            entries[row - 1] = c + 1;
        }
        Some(Permutation::from_entries_unchecked(entries))
    }
}

/// Picks one row from a nonempty candidate set of the column-fill algorithm.
pub trait Chooser {
    fn choose(&mut self, state: &PartialColumnFill, candidates: &BTreeSet<usize>) -> usize;
}

impl<F> Chooser for F
where
    F: FnMut(&PartialColumnFill, &BTreeSet<usize>) -> usize,
{
    fn choose(&mut self, state: &PartialColumnFill, candidates: &BTreeSet<usize>) -> usize {
        self(state, candidates)
    }
}

/// Always the smaller row.
#[derive(Clone, Copy, Debug, Default)]
pub struct First;

impl Chooser for First {
    fn choose(&mut self, _: &PartialColumnFill, candidates: &BTreeSet<usize>) -> usize {
        *candidates.first().expect("candidates are nonempty")
    }
}

/// Always the larger row.
#[derive(Clone, Copy, Debug, Default)]
pub struct Last;

impl Chooser for Last {
    fn choose(&mut self, _: &PartialColumnFill, candidates: &BTreeSet<usize>) -> usize {
        *candidates.last().expect("candidates are nonempty")
    }
}

/// Replays a fixed list of rows for columns `2, 3, ...`; once the list runs
/// out it falls back to the smaller row.
#[derive(Clone, Debug, Default)]
pub struct Replay {
    rows: Vec<usize>,
    next: usize,
}

impl Replay {
    pub fn new(rows: Vec<usize>) -> Self {
        Self { rows, next: 0 }
    }
}

impl Chooser for Replay {
    fn choose(&mut self, _: &PartialColumnFill, candidates: &BTreeSet<usize>) -> usize {
        let pick = self.rows.get(self.next).copied();
        self.next += 1;
        pick.unwrap_or_else(|| *candidates.first().expect("candidates are nonempty"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AlgorithmOutcome {
    Completed {
        permutation: Permutation,
    },
    /// `I*_k` was empty after `k` columns.
    Failed {
        state: PartialColumnFill,
    },
}

/// The column-fill algorithm: a 1 in row `start_row` of column 1, then one more column at a
/// time from `I*_k`.
pub fn algorithm1<C: Chooser>(
    n: usize,
    start_row: usize,
    mut chooser: C,
) -> Result<AlgorithmOutcome> {
    let mut state = PartialColumnFill::new(n, vec![start_row])?;
    while !state.is_complete() {
        let candidates = state.extension_rows()?;
        if candidates.is_empty() {
            return Ok(AlgorithmOutcome::Failed { state });
        }
        let row = chooser.choose(&state, &candidates);
        if !candidates.contains(&row) {
            return Err(Error::InvalidChoice {
                row,
                candidates: candidates.into_iter().collect(),
            });
        }
        state = state.with_next(row);
    }
    let permutation = state.to_permutation().expect("state is complete");
    Ok(AlgorithmOutcome::Completed { permutation })
}

/// Every convex permutation of order `n`, found by walking the full choice
/// tree of the column-fill algorithm from each start row.
pub fn enumerate_convex(n: usize) -> Result<BTreeSet<Permutation>> {
    check_order(n, 1)?;
    fn walk(state: PartialColumnFill, out: &mut BTreeSet<Permutation>) {
        if let Some(p) = state.to_permutation() {
            out.insert(p);
            return;
        }
        let candidates = state
            .extension_rows()
            .expect("walk only visits convex states");
        for row in candidates {
            walk(state.with_next(row), out);
        }
    }
    let mut out = BTreeSet::new();
    for start in 1..=n {
        walk(PartialColumnFill::new(n, vec![start])?, &mut out);
    }
    Ok(out)
}

/// The identity, `(n, 1, ..., n-1)`, `(n-1, 1, ..., n-2, n)`, `Π*_n`, and their
/// reversals.
pub fn classify_convex(n: usize) -> Result<BTreeSet<Permutation>> {
    check_order(n, 1)?;
    let mut base = vec![Permutation::identity(n)?, crate::variation::pi_star(n)?];
    if n >= 2 {
        let cycle = std::iter::once(n).chain(1..n).collect();
        let shifted = std::iter::once(n - 1)
            .chain(1..n - 1)
            .chain(std::iter::once(n))
            .collect();
        base.push(Permutation::new(cycle)?);
        base.push(Permutation::new(shifted)?);
    }
    Ok(base.iter().flat_map(|p| [p.clone(), p.reverse()]).collect())
}
