//! Difference triangles of sequences of distinct integers.
//!
//! Row `k` of the triangle of `(a_1, ..., a_m)` holds the `k`th order
//! differences `a_{i+k} - a_i`. This is not the classical difference table,
//! whose row 2 would be the differences of row 1.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{parse_int_list, write_joined, Permutation};

/// A nonempty sequence of pairwise distinct integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IntSequence {
    values: Vec<i64>,
}

impl IntSequence {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut seen = BTreeSet::new();
        if !values.iter().all(|v| seen.insert(*v)) {
            return Err(Error::DuplicateValues);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl From<&Permutation> for IntSequence {
    fn from(p: &Permutation) -> Self {
        Self {
            values: p.entries().iter().map(|&v| v as i64).collect(),
        }
    }
}

impl std::str::FromStr for IntSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_int_list(s)?)
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderMode {
    /// One row per line, single-space separated.
    Plain,
    /// Right-aligned fixed-width fields; row `k` entry `i` sits in field `k + 2i`.
    Staggered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceTriangle {
    base: Vec<i64>,
    rows: Vec<Vec<i64>>,
}

impl DifferenceTriangle {
    pub fn build(s: &IntSequence) -> Self {
        let base = s.values().to_vec();
        let m = base.len();
        let rows = std::iter::once(base.clone())
            .chain((1..m).map(|k| (0..m - k).map(|i| base[i + k] - base[i]).collect()))
            .collect();
        Self { base, rows }
    }

    /// Builds from raw values, rejecting repeats.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        Ok(Self::build(&IntSequence::new(values.to_vec())?))
    }

    pub fn of_permutation(p: &Permutation) -> Self {
        Self::build(&IntSequence::from(p))
    }

    /// Base length `m`, also the number of rows.
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn base(&self) -> &[i64] {
        &self.base
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, k: usize) -> Result<&[i64]> {
        self.rows
            .get(k)
            .map(Vec::as_slice)
            .ok_or(Error::RowOutOfRange { k, m: self.len() })
    }

    pub fn row_has_repeat(&self, k: usize) -> Result<bool> {
        let mut seen = BTreeSet::new();
        Ok(!self.row(k)?.iter().all(|v| seen.insert(*v)))
    }

    /// True iff rows `0..=k` are each repeat-free.
    pub fn distinct_through(&self, k: usize) -> Result<bool> {
        self.row(k)?;
        for j in 0..=k {
            if self.row_has_repeat(j)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff no row has a repeat.
    pub fn is_repeat_free(&self) -> bool {
        self.distinct_through(self.len() - 1)
            .expect("last row is always in range")
    }

    pub fn render(&self, mode: RenderMode) -> String {
        match mode {
            RenderMode::Plain => self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n"),
            RenderMode::Staggered => {
                let width = self
                    .rows
                    .iter()
                    .flatten()
                    .map(|v| v.to_string().len())
                    .max()
                    .unwrap_or(1)
                    + 1;
                let fields = 2 * self.len() - 1;
                self.rows
                    .iter()
                    .enumerate()
                    .map(|(k, row)| {
                        let mut cells = vec![String::new(); fields];
                        for (i, v) in row.iter().enumerate() {
                            cells[k + 2 * i] = v.to_string();
                        }
                        cells
                            .iter()
                            .map(|c| format!("{c:>width$}"))
                            .collect::<String>()
                            .trim_end()
                            .to_string()
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(xs: &[i64]) -> DifferenceTriangle {
        DifferenceTriangle::from_values(xs).unwrap()
    }

    #[test]
    fn builds_the_six_row_example() {
        let t = tri(&[3, 5, 1, 6, 2, 4]);
        let expected: Vec<Vec<i64>> = vec![
            vec![3, 5, 1, 6, 2, 4],
            vec![2, -4, 5, -4, 2],
            vec![-2, 1, 1, -2],
            vec![3, -3, 3],
            vec![-1, -1],
            vec![1],
        ];
        assert_eq!(t.rows(), expected.as_slice());
        assert_eq!(t.row(3).unwrap(), &[3, -3, 3]);
        assert_eq!(t.row(5).unwrap(), &[1]);
        assert_eq!(t.row(0).unwrap(), t.base());
        assert!(t.row_has_repeat(1).unwrap());
        assert!(!t.distinct_through(1).unwrap());
        assert!(t.distinct_through(0).unwrap());
        assert!(matches!(t.row(6), Err(Error::RowOutOfRange { k: 6, m: 6 })));
    }

    #[test]
    fn builds_the_order_four_costas_example() {
        let t = tri(&[4, 3, 1, 2]);
        let expected: Vec<Vec<i64>> =
            vec![vec![4, 3, 1, 2], vec![-1, -2, 1], vec![-3, -1], vec![-2]];
        assert_eq!(t.rows(), expected.as_slice());
        for k in 0..4 {
            assert!(!t.row_has_repeat(k).unwrap());
        }
        assert!(t.is_repeat_free());
    }

    #[test]
    fn single_entry() {
        let t = tri(&[7]);
        assert_eq!(t.rows(), &[vec![7]]);
        assert!(!t.row_has_repeat(0).unwrap());
        assert_eq!(t.render(RenderMode::Plain), "7");
        assert_eq!(t.render(RenderMode::Staggered), " 7");
    }

    #[test]
    fn rejects_repeats_and_empty() {
        assert!(matches!(
            IntSequence::new(vec![1, 2, 1]),
            Err(Error::DuplicateValues)
        ));
        assert!(matches!(
            IntSequence::new(vec![]),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn differs_from_the_classical_difference_table() {
        let t = tri(&[3, 5, 1, 6, 2, 4]);
        let row1 = t.row(1).unwrap();
        let classical_row2: Vec<i64> = row1.windows(2).map(|w| w[1] - w[0]).collect();
        assert_eq!(classical_row2, vec![-6, 9, -9, 6]);
        assert_eq!(t.row(2).unwrap(), &[-2, 1, 1, -2]);
    }

    #[test]
    fn plain_rendering() {
        assert_eq!(
            tri(&[4, 3, 1, 2]).render(RenderMode::Plain),
            "4 3 1 2\n-1 -2 1\n-3 -1\n-2"
        );
    }

    #[test]
    fn staggered_rendering() {
        let got = tri(&[4, 3, 1, 2]).render(RenderMode::Staggered);
        let expected = [
            "  4     3     1     2",
            "    -1    -2     1",
            "       -3    -1",
            "          -2",
        ]
        .join("\n");
        assert_eq!(got, expected);
        // Same token layout as the typeset display.
        let tokens: Vec<Vec<&str>> = got
            .lines()
            .map(|l| l.split_whitespace().collect())
            .collect();
        assert_eq!(tokens[1], ["-1", "-2", "1"]);
    }

    #[test]
    fn signed_bases_work() {
        let t = tri(&[2, 4, -1, -3]);
        assert_eq!(t.row(1).unwrap(), &[2, -5, -2]);
        assert_eq!(t.row(2).unwrap(), &[-3, -7]);
        assert_eq!(t.row(3).unwrap(), &[-5]);
    }

    proptest! {
        #[test]
        fn higher_rows_are_sums_of_row_one(
            values in prop::collection::btree_set(-50i64..50, 1..14)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>())
                .prop_shuffle()
        ) {
            let t = DifferenceTriangle::from_values(&values).unwrap();
            let row1 = if values.len() > 1 { t.row(1).unwrap().to_vec() } else { vec![] };
            for k in 1..t.len() {
                let row = t.row(k).unwrap();
                prop_assert_eq!(row.len(), t.len() - k);
                for (i, &v) in row.iter().enumerate() {
                    prop_assert_eq!(v, row1[i..i + k].iter().sum::<i64>());
                }
            }
        }
    }
}
