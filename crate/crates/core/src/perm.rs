//! Permutations, their discrete derivatives, and the ways a permutation can be
//! recovered from partial difference data.
//!
//! A permutation of order `n` is stored as its one-line form `(π_1, ..., π_n)`
//! with 1-based values. The matrix view `P_π` has a 1 at `(i, π_i)`; it is never
//! stored, only rendered or reasoned about through the transforms below.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by constructions.
pub const MAX_ORDER: usize = 1_000_000;

/// Largest order for which the matrix view is rendered.
pub const MAX_RENDER_ORDER: usize = 64;

/// A bijection of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { n, max: MAX_ORDER });
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("value {v} is outside 1..={n}"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("value {v} appears more than once"),
                });
            }
        }
        Ok(Self { entries })
    }

    /// Builds from entries already known to be a bijection of `{1..n}`.
    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok(), "{entries:?}");
        Self { entries }
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_order(n, 1)?;
        Ok(Self::from_entries_unchecked((1..=n).collect()))
    }

    /// `(n, n-1, ..., 1)`, the backward identity `L_n`.
    pub fn anti_identity(n: usize) -> Result<Self> {
        check_order(n, 1)?;
        Ok(Self::from_entries_unchecked((1..=n).rev().collect()))
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// `π_i` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn derivative(&self) -> Derivative {
        derivative(self)
    }

    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }

    /// `π_i -> n + 1 - π_i`: reverses the column order of the matrix.
    pub fn complement(&self) -> Self {
        let n = self.order();
        Self {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut entries = vec![0; self.order()];
        for (i, &v) in self.entries.iter().enumerate() {
            entries[v - 1] = i + 1;
        }
        Self { entries }
    }

    /// Rotates the matrix view 90 degrees counter-clockwise: the new matrix
    /// has `new(i, j) = old(j, n + 1 - i)`.
    pub fn rotate90(&self) -> Self {
        let n = self.order();
        let inv = self.inverse();
        Self {
            entries: (1..=n).map(|i| inv.at(n + 1 - i)).collect(),
        }
    }

    /// The eight images of `self` under the dihedral group of the square.
    pub fn dihedral_images(&self) -> [Self; 8] {
        let r1 = self.rotate90();
        let r2 = r1.rotate90();
        let r3 = r2.rotate90();
        let f0 = self.reverse();
        let f1 = r1.reverse();
        let f2 = r2.reverse();
        let f3 = r3.reverse();
        [self.clone(), r1, r2, r3, f0, f1, f2, f3]
    }

    pub fn descent_count(&self) -> usize {
        self.entries.windows(2).filter(|w| w[1] < w[0]).count()
    }

    /// Exactly one descent, equivalently exactly one negative derivative entry.
    pub fn is_grassmannian(&self) -> bool {
        self.descent_count() == 1
    }

    /// Renders the matrix view, one row per line, `1` and `.` separated by spaces.
    pub fn render_matrix(&self) -> Result<String> {
        let n = self.order();
        if n > MAX_RENDER_ORDER {
            return Err(Error::OrderTooLarge {
                n,
                max: MAX_RENDER_ORDER,
            });
        }
        let mut out = String::new();
        for &col in &self.entries {
            let row: Vec<&str> = (1..=n).map(|j| if j == col { "1" } else { "." }).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        Ok(out)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.entries)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_int_list(s)?;
        let entries = values
            .into_iter()
            .map(|v| usize::try_from(v).map_err(|_| Error::Parse(format!("negative entry {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// First-order differences `π_{i+1} - π_i` of a permutation of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Derivative {
    diffs: Vec<i64>,
}

impl Derivative {
    pub fn order(&self) -> usize {
        self.diffs.len() + 1
    }

    pub fn diffs(&self) -> &[i64] {
        &self.diffs
    }

    pub fn into_diffs(self) -> Vec<i64> {
        self.diffs
    }

    pub fn integrate(&self) -> Permutation {
        integrate(&self.diffs).expect("a derivative of a permutation is always realizable")
    }

    /// `||D||_1`.
    pub fn l1_norm(&self) -> i64 {
        self.diffs.iter().map(|d| d.abs()).sum()
    }

    /// `max |D_i|`, 0 for the empty derivative.
    pub fn max_abs(&self) -> i64 {
        self.diffs.iter().map(|d| d.abs()).max().unwrap_or(0)
    }

    /// `min |D_i|`, `None` for the empty derivative.
    pub fn min_abs(&self) -> Option<i64> {
        self.diffs.iter().map(|d| d.abs()).min()
    }

    /// True when all entries are pairwise distinct (the 1-Costas condition).
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.diffs.iter().all(|d| seen.insert(*d))
    }

    /// The set of values taken by the derivative.
    pub fn value_set(&self) -> BTreeSet<i64> {
        self.diffs.iter().copied().collect()
    }
}

impl fmt::Display for Derivative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.diffs)
    }
}

pub fn derivative(p: &Permutation) -> Derivative {
    Derivative {
        diffs: p
            .entries
            .windows(2)
            .map(|w| w[1] as i64 - w[0] as i64)
            .collect(),
    }
}

/// Recovers the unique permutation whose derivative is `z`.
///
/// The prefix sums are anchored so that the smallest running value becomes 1.
pub fn integrate(z: &[i64]) -> Result<Permutation> {
    let n = z.len() + 1;
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_ORDER });
    }
    let not_realizable = || Error::NotRealizable(z.to_vec());
    let mut sums = Vec::with_capacity(n);
    let mut acc = 0i64;
    sums.push(acc);
    for &d in z {
        acc = acc.checked_add(d).ok_or_else(not_realizable)?;
        sums.push(acc);
    }
    let min = *sums.iter().min().expect("nonempty");
    let mut seen = vec![false; n];
    let mut entries = Vec::with_capacity(n);
    for s in sums {
        let offset = s.checked_sub(min).ok_or_else(not_realizable)?;
        let idx = usize::try_from(offset).map_err(|_| not_realizable())?;
        if idx >= n || std::mem::replace(&mut seen[idx], true) {
            return Err(not_realizable());
        }
        entries.push(idx + 1);
    }
    Ok(Permutation::from_entries_unchecked(entries))
}

/// `{0} ∪ {z_1 + ... + z_i : 1 <= i <= len(z)}`. Running sums saturate at the
/// `i64` bounds.
pub fn sum_characteristic(z: &[i64]) -> BTreeSet<i64> {
    let mut out = BTreeSet::from([0]);
    let mut acc = 0i64;
    for &d in z {
        acc = acc.saturating_add(d);
        out.insert(acc);
    }
    out
}

/// True iff `z` is the derivative of some permutation of order `len(z) + 1`,
/// i.e. its sum-characteristic is `len(z) + 1` consecutive integers.
pub fn is_realizable(z: &[i64]) -> bool {
    SumCharacteristic::from_set(&sum_characteristic(z)).is_some_and(|sc| sc.len() == z.len() + 1)
}

/// A set of `n` consecutive integers containing 0, stored as its lower end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SumCharacteristic {
    low: i64,
    len: usize,
}

impl SumCharacteristic {
    /// The sum-characteristic `{1 - π_1, ..., n - π_1}` of a permutation.
    pub fn of(p: &Permutation) -> Self {
        Self {
            low: 1 - p.at(1) as i64,
            len: p.order(),
        }
    }

    /// Accepts `set` only if it is a nonempty run of consecutive integers containing 0.
    pub fn from_set(set: &BTreeSet<i64>) -> Option<Self> {
        let (&low, &high) = (set.first()?, set.last()?);
        let consecutive = u64::try_from(high.checked_sub(low)?).ok()? + 1 == set.len() as u64;
        (consecutive && low <= 0 && high >= 0).then_some(Self {
            low,
            len: set.len(),
        })
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.len as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.low..=self.high()
    }

    /// `-low`, the shift `s` with `S = {-s, ..., n - s - 1}`.
    pub fn shift(&self) -> usize {
        (-self.low) as usize
    }
}

/// `(s+1, 1, 2, ..., s, s+2, ..., n)`, whose sum-characteristic is `{-s, ..., n-s-1}`.
pub fn realize_shift(n: usize, s: usize) -> Result<Permutation> {
    check_order(n, 1)?;
    if s >= n {
        return Err(Error::ShiftOutOfRange { n, s });
    }
    let entries = std::iter::once(s + 1)
        .chain(1..=s)
        .chain(s + 2..=n)
        .collect();
    Ok(Permutation::from_entries_unchecked(entries))
}

/// Edge `{i, j}` with `i < j` carrying the weight `π_j - π_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub i: usize,
    pub j: usize,
    pub w: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedTree {
    pub n: usize,
    pub edges: Vec<TreeEdge>,
}

impl WeightedTree {
    pub fn new(n: usize, edges: Vec<TreeEdge>) -> Self {
        Self { n, edges }
    }

    /// The tree `T^π` on the given (unweighted) edges.
    pub fn of_permutation(p: &Permutation, edges: &[(usize, usize)]) -> Result<Self> {
        let n = p.order();
        let edges = edges
            .iter()
            .map(|&(a, b)| {
                let (i, j) = (a.min(b), a.max(b));
                if i == 0 || j > n {
                    return Err(Error::InvalidTree(format!("edge {{{a},{b}}} out of range")));
                }
                Ok(TreeEdge {
                    i,
                    j,
                    w: p.at(j) as i64 - p.at(i) as i64,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { n, edges })
    }

    /// The path `{1,2}, {2,3}, ...` weighted by a derivative.
    pub fn path(d: &[i64]) -> Self {
        Self {
            n: d.len() + 1,
            edges: d
                .iter()
                .enumerate()
                .map(|(i, &w)| TreeEdge {
                    i: i + 1,
                    j: i + 2,
                    w,
                })
                .collect(),
        }
    }
}

/// Reconstructs the permutation determined by a weighted spanning tree.
///
/// Weights are propagated from vertex 1, then shifted so the smallest value is 1.
pub fn from_tree(t: &WeightedTree) -> Result<Permutation> {
    let n = t.n;
    check_order(n, 1)?;
    if t.edges.len() != n - 1 {
        return Err(Error::InvalidTree(format!(
            "expected {} edges for {n} vertices, got {}",
            n - 1,
            t.edges.len()
        )));
    }
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n + 1];
    for e in &t.edges {
        if e.i == 0 || e.i >= e.j || e.j > n {
            return Err(Error::InvalidTree(format!(
                "edge ({}, {}) must satisfy 1 <= i < j <= {n}",
                e.i, e.j
            )));
        }
        adj[e.i].push((e.j, e.w));
        adj[e.j].push((e.i, -e.w));
    }
    let mut value: Vec<Option<i64>> = vec![None; n + 1];
    value[1] = Some(0);
    let mut queue = VecDeque::from([1]);
    while let Some(u) = queue.pop_front() {
        let base = value[u].expect("queued vertices are labelled");
        for &(v, w) in &adj[u] {
            if value[v].is_none() {
                value[v] = Some(base.checked_add(w).ok_or(Error::Inconsistent)?);
                queue.push_back(v);
            }
        }
    }
    let values = value[1..]
        .iter()
        .copied()
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::InvalidTree("edges do not connect all vertices".into()))?;
    let min = *values.iter().min().expect("n >= 1");
    let entries = values
        .iter()
        .map(|&v| usize::try_from(v - min).map(|x| x + 1))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Inconsistent)?;
    Permutation::new(entries).map_err(|_| Error::Inconsistent)
}

/// Parses `"5,2,-7"` style comma-separated integers; whitespace is ignored.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(s);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
        })
        .collect()
}

pub(crate) fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OrderTooSmall { n, min });
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { n, max: MAX_ORDER });
    }
    Ok(())
}

pub(crate) fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Formats integers as `a,b,c`.
pub fn join_comma<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::BTreeMap;

    fn perm(xs: &[usize]) -> Permutation {
        Permutation::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(matches!(
            Permutation::new(vec![]),
            Err(Error::EmptyPermutation)
        ));
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!("2,-1".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn derivative_examples() {
        let p = perm(&[5, 2, 7, 4, 1, 6, 3]);
        assert_eq!(p.derivative().diffs(), &[-3, 5, -3, -3, 5, -3]);
        assert_eq!(perm(&[1, 2, 3, 4]).derivative().diffs(), &[1, 1, 1]);
        assert_eq!(
            perm(&[3, 5, 1, 6, 2, 4]).derivative().diffs(),
            &[2, -4, 5, -4, 2]
        );
        assert!(perm(&[1]).derivative().diffs().is_empty());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(
            integrate(&[-3, 5, -3, -3, 5, -3]).unwrap(),
            perm(&[5, 2, 7, 4, 1, 6, 3])
        );
        assert_eq!(integrate(&[1, 1, 1]).unwrap(), perm(&[1, 2, 3, 4]));
        assert_eq!(integrate(&[]).unwrap(), perm(&[1]));
        assert!(matches!(integrate(&[1, -1]), Err(Error::NotRealizable(_))));
        assert!(integrate(&[i64::MAX, 1]).is_err());
        assert!(integrate(&[0]).is_err());
    }

    #[test]
    fn one_minus_one_is_not_a_derivative_in_s3() {
        // oracle: scan S_3
        let found = (1..=3usize)
            .permutations(3)
            .any(|v| perm(&v).derivative().diffs() == [1, -1]);
        assert!(!found);
        assert!(!is_realizable(&[1, -1]));
    }

    #[test]
    fn sum_characteristic_examples() {
        let sc = sum_characteristic(&[-3, 5, -3, -3, 5, -3]);
        assert_eq!(sc, (-4..=2).collect());
        assert_eq!(sum_characteristic(&[1; 5]), (0..=5).collect());
        assert_eq!(sum_characteristic(&[-4, 1, 1, 1, 2, 1]), (-4..=2).collect());
        assert_eq!(sum_characteristic(&[]), BTreeSet::from([0]));
    }

    #[test]
    fn realizability_examples() {
        assert!(is_realizable(&[-3, 5, -3, -3, 5, -3]));
        assert!(!is_realizable(&[1, -1]));
        assert!(is_realizable(&[]));
        assert!(!is_realizable(&[2]));
        assert!(!is_realizable(&[0]));
    }

    #[test]
    fn realize_shift_examples() {
        assert_eq!(realize_shift(7, 4).unwrap(), perm(&[5, 1, 2, 3, 4, 6, 7]));
        assert_eq!(realize_shift(5, 0).unwrap(), perm(&[1, 2, 3, 4, 5]));
        let p = realize_shift(5, 2).unwrap();
        assert_eq!(p, perm(&[3, 1, 2, 4, 5]));
        assert_eq!(
            sum_characteristic(p.derivative().diffs()),
            (-2..=2).collect()
        );
        assert!(matches!(
            realize_shift(5, 5),
            Err(Error::ShiftOutOfRange { .. })
        ));
    }

    #[test]
    fn realize_shift_covers_every_characteristic() {
        for n in 1..=9 {
            for s in 0..n {
                let p = realize_shift(n, s).unwrap();
                let sc = SumCharacteristic::of(&p);
                assert_eq!(sc.shift(), s);
                assert_eq!(sc.high(), (n - s - 1) as i64);
            }
        }
    }

    #[test]
    fn from_tree_examples() {
        let edges = [(1, 2, 3), (2, 3, -5), (4, 6, -1), (1, 4, 2), (2, 5, -4)]
            .map(|(i, j, w)| TreeEdge { i, j, w });
        let t = WeightedTree::new(6, edges.to_vec());
        assert_eq!(from_tree(&t).unwrap(), perm(&[3, 6, 1, 5, 2, 4]));

        let d = [-3, 5, -3, -3, 5, -3];
        assert_eq!(
            from_tree(&WeightedTree::path(&d)).unwrap(),
            integrate(&d).unwrap()
        );

        let target = perm(&[2, 1, 3]);
        let star = WeightedTree::of_permutation(&target, &[(1, 2), (1, 3)]).unwrap();
        assert_eq!(star.edges[0].w, -1);
        assert_eq!(from_tree(&star).unwrap(), target);
    }

    #[test]
    fn from_tree_errors() {
        let e = |i, j, w| TreeEdge { i, j, w };
        // too few edges
        assert!(matches!(
            from_tree(&WeightedTree::new(3, vec![e(1, 2, 1)])),
            Err(Error::InvalidTree(_))
        ));
        // cycle plus isolated vertex
        assert!(matches!(
            from_tree(&WeightedTree::new(
                4,
                vec![e(1, 2, 1), e(2, 3, 1), e(1, 3, 2)]
            )),
            Err(Error::InvalidTree(_))
        ));
        // i >= j
        assert!(matches!(
            from_tree(&WeightedTree::new(2, vec![e(2, 1, 1)])),
            Err(Error::InvalidTree(_))
        ));
        // consistent shape, impossible weights
        assert!(matches!(
            from_tree(&WeightedTree::new(3, vec![e(1, 2, 1), e(1, 3, 1)])),
            Err(Error::Inconsistent)
        ));
        assert!(matches!(
            from_tree(&WeightedTree::new(2, vec![e(1, 2, 5)])),
            Err(Error::Inconsistent)
        ));
    }

    #[test]
    fn from_tree_on_every_spanning_star_and_path_of_s5() {
        for v in (1..=5usize).permutations(5) {
            let p = perm(&v);
            for root in 1..=5 {
                let edges: Vec<_> = (1..=5).filter(|&j| j != root).map(|j| (root, j)).collect();
                let t = WeightedTree::of_permutation(&p, &edges).unwrap();
                assert_eq!(from_tree(&t).unwrap(), p);
            }
        }
    }

    #[test]
    fn transforms() {
        assert_eq!(perm(&[1, 2, 3]).reverse(), perm(&[3, 2, 1]));
        assert_eq!(perm(&[1, 3, 2]).complement(), perm(&[3, 1, 2]));
        let p = perm(&[
            1, 6, 11, 16, 3, 8, 13, 18, 5, 10, 15, 2, 7, 12, 17, 4, 9, 14,
        ]);
        assert_eq!(
            p.inverse(),
            perm(&[1, 12, 5, 16, 9, 2, 13, 6, 17, 10, 3, 14, 7, 18, 11, 4, 15, 8])
        );
        assert_eq!(perm(&[2, 3, 1, 4]).rotate90(), perm(&[4, 2, 1, 3]));
    }

    #[test]
    fn rotate90_matches_matrix_rule() {
        // oracle: rotate the dense matrix with new(i,j) = old(j, n+1-i)
        for v in (1..=5usize).permutations(5) {
            let p = perm(&v);
            let n = 5;
            let old = |i: usize, j: usize| p.at(i) == j;
            let rotated: Vec<usize> = (1..=n)
                .map(|i| (1..=n).find(|&j| old(j, n + 1 - i)).unwrap())
                .collect();
            assert_eq!(p.rotate90().entries(), rotated.as_slice());
            assert_eq!(p.rotate90().rotate90().rotate90().rotate90(), p);
            assert_eq!(p.rotate90().rotate90(), p.reverse().complement());
        }
    }

    #[test]
    fn dihedral_images_are_a_group_orbit() {
        let p = perm(&[2, 4, 1, 5, 3]);
        let images = p.dihedral_images();
        for q in &images {
            let mut a: Vec<_> = q.dihedral_images().to_vec();
            let mut b: Vec<_> = images.to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        assert!(images.contains(&p.inverse()));
        assert!(images.contains(&p.complement()));
    }

    #[test]
    fn descents() {
        assert_eq!(perm(&[1, 3, 2, 4]).descent_count(), 1);
        assert!(perm(&[1, 3, 2, 4]).is_grassmannian());
        assert_eq!(perm(&[1, 2, 3, 4]).descent_count(), 0);
        assert!(!perm(&[1, 2, 3, 4]).is_grassmannian());
        let p = perm(&[5, 2, 7, 4, 1, 6, 3]);
        assert_eq!(p.descent_count(), 4);
        assert_eq!(p.derivative().diffs().iter().filter(|&&d| d < 0).count(), 4);
        assert!(!p.is_grassmannian());
    }

    #[test]
    fn sum_characteristic_classes_are_indexed_by_first_entry() {
        for n in 1..=7usize {
            let mut classes: BTreeMap<Vec<i64>, BTreeSet<usize>> = BTreeMap::new();
            let mut sizes: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for v in (1..=n).permutations(n) {
                let p = perm(&v);
                let key: Vec<i64> = sum_characteristic(p.derivative().diffs())
                    .into_iter()
                    .collect();
                classes.entry(key.clone()).or_default().insert(p.at(1));
                *sizes.entry(key).or_default() += 1;
            }
            let fact: usize = (1..n).product();
            assert_eq!(classes.len(), n);
            assert!(sizes.values().all(|&s| s == fact));
            assert!(classes.values().all(|firsts| firsts.len() == 1));
        }
    }

    #[test]
    fn matrix_rendering() {
        assert_eq!(perm(&[2, 1]).render_matrix().unwrap(), ". 1\n1 .\n");
        let big = Permutation::identity(65).unwrap();
        assert!(big.render_matrix().is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_int_list("5, 2,-7").unwrap(), vec![5, 2, -7]);
        assert_eq!(parse_int_list("(1,2)").unwrap(), vec![1, 2]);
        assert_eq!(parse_int_list("").unwrap(), Vec::<i64>::new());
        assert!(parse_int_list("1,,2").is_err());
        let p: Permutation = "5,2,7,4,1,6,3".parse().unwrap();
        assert_eq!(p.to_string(), "5,2,7,4,1,6,3");
        assert_eq!(p.derivative().to_string(), "-3,5,-3,-3,5,-3");
    }
}
