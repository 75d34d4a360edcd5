//! Exact enumeration over `S_n` with prefix pruning.
//!
//! The engine walks value choices depth first in lexicographic order, keeping
//! the used values in a bit mask. A [`Pruner`] carries whatever incremental
//! state it needs to reject a prefix as soon as it is appended. With more than
//! one worker the tree is split on the first entry and the per-branch results
//! are merged in branch order, so every mode returns the same answer for any
//! worker count.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::convexity::enumerate_convex;
use crate::costas::{fresh_diff_bit, RowMasks, MAX_MASK_ORDER};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest order for `count_one_costas`.
pub const MAX_ONE_COSTAS_ORDER: usize = 14;
/// Largest order for `count_costas`.
pub const MAX_COSTAS_ORDER: usize = 16;
/// Largest order for the convex rows of `table`.
pub const MAX_CONVEX_TABLE_ORDER: usize = 20;

/// Incremental prefix filter. `push` sees the sequence with the new value
/// already appended and returns `false` to prune it, leaving the state as it
/// was. `pop` undoes an accepted `push` and sees the same sequence.
pub trait Pruner: Sync {
    type State: Clone + Send;

    fn init(&self, n: usize) -> Self::State;
    fn push(&self, state: &mut Self::State, seq: &[usize]) -> bool;
    fn pop(&self, state: &mut Self::State, seq: &[usize]);
}

/// Accepts every prefix.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoPruning;

impl Pruner for NoPruning {
    type State = ();

    fn init(&self, _: usize) {}

    fn push(&self, _: &mut (), _: &[usize]) -> bool {
        true
    }

    fn pop(&self, _: &mut (), _: &[usize]) {}
}

/// A stateless predicate on whole prefixes.
#[derive(Clone, Copy, Debug)]
pub struct PrefixOk<F>(pub F);

impl<F> Pruner for PrefixOk<F>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    type State = ();

    fn init(&self, _: usize) {}

    fn push(&self, _: &mut (), seq: &[usize]) -> bool {
        (self.0)(seq)
    }

    fn pop(&self, _: &mut (), _: &[usize]) {}
}

/// Rejects a repeated consecutive difference (the 1-Costas builder).
#[derive(Clone, Copy, Debug, Default)]
pub struct OneCostasPruner;

impl Pruner for OneCostasPruner {
    type State = (usize, u128);

    fn init(&self, n: usize) -> (usize, u128) {
        (n, 0)
    }

    fn push(&self, (n, used): &mut (usize, u128), seq: &[usize]) -> bool {
        let [.., last, col] = seq else {
            return true;
        };
        match fresh_diff_bit(*n, *used, *last, *col) {
            Some(bit) => {
                *used |= bit;
                true
            }
            None => false,
        }
    }

    fn pop(&self, (n, used): &mut (usize, u128), seq: &[usize]) {
        if let [.., last, col] = seq {
            *used &= !(1u128 << (col + *n - 1 - last));
        }
    }
}

/// Rejects a repeat in any row of the difference triangle.
#[derive(Clone, Copy, Debug, Default)]
pub struct CostasPruner;

impl Pruner for CostasPruner {
    type State = RowMasks;

    fn init(&self, n: usize) -> RowMasks {
        RowMasks::new(n)
    }

    fn push(&self, masks: &mut RowMasks, seq: &[usize]) -> bool {
        let (&v, before) = seq.split_last().expect("push sees a nonempty sequence");
        masks.try_push(before, v)
    }

    fn pop(&self, masks: &mut RowMasks, seq: &[usize]) {
        let (&v, before) = seq.split_last().expect("pop sees a nonempty sequence");
        masks.pop(before, v);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Max,
    Min,
}

pub type Objective = Arc<dyn Fn(&Permutation) -> i64 + Send + Sync>;

#[derive(Clone)]
pub enum Mode {
    Count,
    Collect,
    /// Best objective value among accepted permutations; ties go to the
    /// lexicographically smallest permutation.
    Optimize {
        objective: Objective,
        direction: Direction,
    },
}

impl fmt::Debug for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Count => f.write_str("Count"),
            Mode::Collect => f.write_str("Collect"),
            Mode::Optimize { direction, .. } => write!(f, "Optimize({direction:?})"),
        }
    }
}

pub struct SearchSpec<P, A> {
    pub n: usize,
    pub pruner: P,
    pub accept: A,
    pub mode: Mode,
}

impl<A> SearchSpec<NoPruning, A>
where
    A: Fn(&Permutation) -> bool + Sync,
{
    pub fn filter(n: usize, accept: A, mode: Mode) -> Self {
        Self {
            n,
            pruner: NoPruning,
            accept,
            mode,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Count(u64),
    Collected(Vec<Permutation>),
    /// `None` when nothing was accepted.
    Optimum(Option<(i64, Permutation)>),
}

impl Outcome {
    pub fn count(&self) -> u64 {
        match self {
            Outcome::Count(c) => *c,
            Outcome::Collected(v) => v.len() as u64,
            Outcome::Optimum(o) => o.is_some() as u64,
        }
    }
}

struct Walker<'a, P: Pruner, A> {
    spec: &'a SearchSpec<P, A>,
    seq: Vec<usize>,
    used: u64,
    state: P::State,
    out: Outcome,
}

impl<P, A> Walker<'_, P, A>
where
    P: Pruner,
    A: Fn(&Permutation) -> bool + Sync,
{
    fn leaf(&mut self) {
        match &mut self.out {
            Outcome::Count(c) => {
                let p = Permutation::from_entries_unchecked(self.seq.clone());
                if (self.spec.accept)(&p) {
                    *c += 1;
                }
            }
            Outcome::Collected(v) => {
                let p = Permutation::from_entries_unchecked(self.seq.clone());
                if (self.spec.accept)(&p) {
                    v.push(p);
                }
            }
            Outcome::Optimum(best) => {
                let p = Permutation::from_entries_unchecked(self.seq.clone());
                if !(self.spec.accept)(&p) {
                    return;
                }
                let Mode::Optimize {
                    objective,
                    direction,
                } = &self.spec.mode
                else {
                    unreachable!("optimum outcome only in optimize mode");
                };
                let value = objective(&p);
                if better(value, best.as_ref().map(|b| b.0), *direction) {
                    *best = Some((value, p));
                }
            }
        }
    }

    fn walk(&mut self) {
        if self.seq.len() == self.spec.n {
            self.leaf();
            return;
        }
        for v in 1..=self.spec.n {
            self.step(v);
        }
    }

    fn step(&mut self, v: usize) {
        let bit = 1u64 << (v - 1);
        if self.used & bit != 0 {
            return;
        }
        self.seq.push(v);
        if self.spec.pruner.push(&mut self.state, &self.seq) {
            self.used |= bit;
            self.walk();
            self.used &= !bit;
            self.spec.pruner.pop(&mut self.state, &self.seq);
        }
        self.seq.pop();
    }
}

fn better(value: i64, incumbent: Option<i64>, direction: Direction) -> bool {
    match incumbent {
        None => true,
        Some(b) => match direction {
            Direction::Max => value > b,
            Direction::Min => value < b,
        },
    }
}

fn empty_outcome(mode: &Mode) -> Outcome {
    match mode {
        Mode::Count => Outcome::Count(0),
        Mode::Collect => Outcome::Collected(Vec::new()),
        Mode::Optimize { .. } => Outcome::Optimum(None),
    }
}

/// Combines branch results; `later` comes from lexicographically later
/// branches than `earlier`.
fn merge(earlier: Outcome, later: Outcome, mode: &Mode) -> Outcome {
    match (earlier, later) {
        (Outcome::Count(a), Outcome::Count(b)) => Outcome::Count(a + b),
        (Outcome::Collected(mut a), Outcome::Collected(b)) => {
            a.extend(b);
            Outcome::Collected(a)
        }
        (Outcome::Optimum(a), Outcome::Optimum(b)) => {
            let Mode::Optimize { direction, .. } = mode else {
                unreachable!("optimum outcome only in optimize mode");
            };
            match (a, b) {
                (Some(a), Some(b)) if better(b.0, Some(a.0), *direction) => {
                    Outcome::Optimum(Some(b))
                }
                (Some(a), _) => Outcome::Optimum(Some(a)),
                (None, b) => Outcome::Optimum(b),
            }
        }
        _ => unreachable!("branches share one mode"),
    }
}

fn check_search_order(n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n, min: 1 });
    }
    if n > max {
        return Err(Error::OrderTooLarge { n, max });
    }
    Ok(())
}

fn branch<P, A>(spec: &SearchSpec<P, A>, first: usize) -> Outcome
where
    P: Pruner,
    A: Fn(&Permutation) -> bool + Sync,
{
    let mut w = Walker {
        spec,
        seq: Vec::with_capacity(spec.n),
        used: 0,
        state: spec.pruner.init(spec.n),
        out: empty_outcome(&spec.mode),
    };
    w.step(first);
    w.out
}

/// Runs `spec` on `workers` threads (1 or 0 means the calling thread).
pub fn enumerate<P, A>(spec: &SearchSpec<P, A>, workers: usize) -> Result<Outcome>
where
    P: Pruner,
    A: Fn(&Permutation) -> bool + Sync,
{
    check_search_order(spec.n, MAX_MASK_ORDER)?;
    let branches: Vec<Outcome> = if workers <= 1 {
        (1..=spec.n).map(|v| branch(spec, v)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidBuilderState(format!("thread pool: {e}")))?;
        pool.install(|| {
            (1..=spec.n)
                .into_par_iter()
                .map(|v| branch(spec, v))
                .collect()
        })
    };
    Ok(branches
        .into_iter()
        .fold(empty_outcome(&spec.mode), |acc, b| {
            merge(acc, b, &spec.mode)
        }))
}

/// Filters all of `S_n` without pruning: a permutation counts when every
/// prefix passes the pruner and `accept` holds.
pub fn naive_enumerate<P, A>(spec: &SearchSpec<P, A>) -> Result<Outcome>
where
    P: Pruner,
    A: Fn(&Permutation) -> bool + Sync,
{
    check_search_order(spec.n, MAX_MASK_ORDER)?;
    let mut out = empty_outcome(&spec.mode);
    for v in (1..=spec.n).permutations(spec.n) {
        let mut state = spec.pruner.init(spec.n);
        if !(1..=v.len()).all(|i| spec.pruner.push(&mut state, &v[..i])) {
            continue;
        }
        let p = Permutation::from_entries_unchecked(v);
        if !(spec.accept)(&p) {
            continue;
        }
        let single = match &spec.mode {
            Mode::Count => Outcome::Count(1),
            Mode::Collect => Outcome::Collected(vec![p]),
            Mode::Optimize { objective, .. } => Outcome::Optimum(Some((objective(&p), p))),
        };
        out = merge(out, single, &spec.mode);
    }
    Ok(out)
}

fn always(_: &Permutation) -> bool {
    true
}

/// One row of a count table: `count` of the `total = n!` permutations, and
/// `fraction = 100 count / total` rounded half up to one decimal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub total: u64,
    pub count: u64,
    pub fraction: f64,
}

impl CountRow {
    pub fn new(n: usize, count: u64) -> Self {
        let total: u64 = (1..=n as u64).product();
        let tenths = (2000 * count as u128 + total as u128) / (2 * total as u128);
        Self {
            n,
            total,
            count,
            fraction: tenths as f64 / 10.0,
        }
    }

    /// The fraction with exactly one decimal, e.g. `66.7`.
    pub fn fraction_text(&self) -> String {
        format!("{:.1}", self.fraction)
    }
}

pub fn count_one_costas(n: usize, workers: usize) -> Result<CountRow> {
    check_search_order(n, MAX_ONE_COSTAS_ORDER)?;
    let spec = SearchSpec {
        n,
        pruner: OneCostasPruner,
        accept: always,
        mode: Mode::Count,
    };
    Ok(CountRow::new(n, enumerate(&spec, workers)?.count()))
}

pub fn count_costas(n: usize, workers: usize) -> Result<u64> {
    check_search_order(n, MAX_COSTAS_ORDER)?;
    let spec = SearchSpec {
        n,
        pruner: CostasPruner,
        accept: always,
        mode: Mode::Count,
    };
    Ok(enumerate(&spec, workers)?.count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    OneCostas,
    Costas,
    Convex,
}

impl TableKind {
    pub fn max_order(self) -> usize {
        match self {
            TableKind::OneCostas => MAX_ONE_COSTAS_ORDER,
            TableKind::Costas => MAX_COSTAS_ORDER,
            TableKind::Convex => MAX_CONVEX_TABLE_ORDER,
        }
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-costas" => Ok(TableKind::OneCostas),
            "costas" => Ok(TableKind::Costas),
            "convex" => Ok(TableKind::Convex),
            _ => Err(Error::Parse(format!(
                "unknown table kind `{s}` (expected one-costas, costas or convex)"
            ))),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::OneCostas => "one-costas",
            TableKind::Costas => "costas",
            TableKind::Convex => "convex",
        })
    }
}

/// Rows for `n = 1..=n_max`.
pub fn table(kind: TableKind, n_max: usize, workers: usize) -> Result<Vec<CountRow>> {
    check_search_order(n_max, kind.max_order())?;
    (1..=n_max)
        .map(|n| match kind {
            TableKind::OneCostas => count_one_costas(n, workers),
            TableKind::Costas => Ok(CountRow::new(n, count_costas(n, workers)?)),
            TableKind::Convex => Ok(CountRow::new(n, enumerate_convex(n)?.len() as u64)),
        })
        .collect()
}

/// True when the fractions never increase down the table.
pub fn fractions_non_increasing(rows: &[CountRow]) -> bool {
    rows.windows(2)
        .all(|w| w[1].fraction.partial_cmp(&w[0].fraction) != Some(Ordering::Greater))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costas::{is_costas, is_k_costas};
    use crate::variation::global_variation;

    fn count<P: Pruner, A: Fn(&Permutation) -> bool + Sync>(spec: &SearchSpec<P, A>) -> u64 {
        enumerate(spec, 1).unwrap().count()
    }

    #[test]
    fn counts_everything() {
        let spec = SearchSpec::filter(3, always, Mode::Count);
        assert_eq!(count(&spec), 6);
        let spec = SearchSpec::filter(1, always, Mode::Count);
        assert_eq!(count(&spec), 1);
    }

    #[test]
    fn one_costas_by_accept_and_by_pruning() {
        let accept = |p: &Permutation| is_k_costas(p, 1).unwrap_or(true);
        assert_eq!(count(&SearchSpec::filter(5, accept, Mode::Count)), 44);
        let pruned = SearchSpec {
            n: 5,
            pruner: OneCostasPruner,
            accept: always,
            mode: Mode::Count,
        };
        assert_eq!(count(&pruned), 44);
    }

    #[test]
    fn optimize_global_variation() {
        let objective: Objective = Arc::new(global_variation);
        let spec = SearchSpec::filter(
            5,
            always,
            Mode::Optimize {
                objective: objective.clone(),
                direction: Direction::Max,
            },
        );
        let Outcome::Optimum(Some((value, witness))) = enumerate(&spec, 1).unwrap() else {
            panic!("expected an optimum");
        };
        assert_eq!(value, 11);
        assert_eq!(global_variation(&witness), 11);
        assert_eq!(
            enumerate(&spec, 4).unwrap(),
            naive_enumerate(&spec).unwrap()
        );
        assert_eq!(
            naive_enumerate(&spec).unwrap(),
            Outcome::Optimum(Some((value, witness)))
        );

        let min = SearchSpec::filter(
            4,
            always,
            Mode::Optimize {
                objective,
                direction: Direction::Min,
            },
        );
        assert_eq!(
            enumerate(&min, 3).unwrap(),
            Outcome::Optimum(Some((3, Permutation::identity(4).unwrap())))
        );
    }

    #[test]
    fn empty_optimum() {
        let spec = SearchSpec::filter(
            3,
            |_: &Permutation| false,
            Mode::Optimize {
                objective: Arc::new(global_variation),
                direction: Direction::Max,
            },
        );
        assert_eq!(enumerate(&spec, 2).unwrap(), Outcome::Optimum(None));
    }

    #[test]
    fn pruned_equals_naive_for_shipped_pruners() {
        for n in 1..=7 {
            let one = SearchSpec {
                n,
                pruner: OneCostasPruner,
                accept: always,
                mode: Mode::Collect,
            };
            let costas = SearchSpec {
                n,
                pruner: CostasPruner,
                accept: always,
                mode: Mode::Collect,
            };
            let prefix = SearchSpec {
                n,
                pruner: PrefixOk(|s: &[usize]| s.windows(2).all(|w| w[0].abs_diff(w[1]) <= 2)),
                accept: always,
                mode: Mode::Collect,
            };
            assert_eq!(enumerate(&one, 1).unwrap(), naive_enumerate(&one).unwrap());
            assert_eq!(
                enumerate(&costas, 1).unwrap(),
                naive_enumerate(&costas).unwrap()
            );
            assert_eq!(
                enumerate(&prefix, 1).unwrap(),
                naive_enumerate(&prefix).unwrap()
            );

            let oracle_one = (1..=n)
                .permutations(n)
                .filter(|v| {
                    n == 1 || is_k_costas(&Permutation::new(v.clone()).unwrap(), 1).unwrap()
                })
                .count() as u64;
            let oracle_costas = (1..=n)
                .permutations(n)
                .filter(|v| is_costas(&Permutation::new(v.clone()).unwrap()))
                .count() as u64;
            assert_eq!(count_one_costas(n, 1).unwrap().count, oracle_one);
            assert_eq!(count_costas(n, 1).unwrap(), oracle_costas);
        }
    }

    #[test]
    fn collect_is_lexicographic_for_any_worker_count() {
        let spec = SearchSpec {
            n: 6,
            pruner: OneCostasPruner,
            accept: always,
            mode: Mode::Collect,
        };
        let Outcome::Collected(one) = enumerate(&spec, 1).unwrap() else {
            panic!("expected a collection");
        };
        assert!(one.windows(2).all(|w| w[0] < w[1]));
        for workers in [2, 3, 8] {
            assert_eq!(
                enumerate(&spec, workers).unwrap(),
                Outcome::Collected(one.clone())
            );
        }
    }

    #[test]
    fn parallel_counts_agree() {
        for n in 1..=8 {
            let a = count_one_costas(n, 1).unwrap();
            assert_eq!(a, count_one_costas(n, 4).unwrap());
            assert_eq!(count_costas(n, 1).unwrap(), count_costas(n, 3).unwrap());
        }
    }

    #[test]
    fn small_costas_counts() {
        assert_eq!(count_costas(1, 1).unwrap(), 1);
        assert_eq!(count_costas(4, 1).unwrap(), 12);
    }

    #[test]
    fn count_rows() {
        let row = CountRow::new(3, 4);
        assert_eq!(row.total, 6);
        assert_eq!(row.fraction_text(), "66.7");
        assert_eq!(CountRow::new(5, 44).fraction_text(), "36.7");
        assert_eq!(CountRow::new(1, 1).fraction_text(), "100.0");
        assert_eq!(CountRow::new(4, 12).fraction_text(), "50.0");
        assert_eq!(CountRow::new(4, 0).fraction_text(), "0.0");
    }

    #[test]
    fn one_costas_table_head() {
        let rows = table(TableKind::OneCostas, 8, 2).unwrap();
        let counts: Vec<u64> = rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, [1, 2, 4, 12, 44, 176, 788, 3936]);
        let fractions: Vec<String> = rows.iter().map(CountRow::fraction_text).collect();
        assert_eq!(
            fractions,
            ["100.0", "100.0", "66.7", "50.0", "36.7", "24.4", "15.6", "9.8"]
        );
        assert!(fractions_non_increasing(&rows));
    }

    #[test]
    fn convex_and_costas_tables() {
        let convex: Vec<u64> = table(TableKind::Convex, 6, 1)
            .unwrap()
            .iter()
            .map(|r| r.count)
            .collect();
        assert_eq!(convex, [1, 2, 4, 6, 8, 8]);
        for kind in [TableKind::OneCostas, TableKind::Costas, TableKind::Convex] {
            let rows = table(kind, 1, 1).unwrap();
            assert_eq!(rows.len(), 1);
            assert_eq!(rows[0].count, 1);
        }
    }

    #[test]
    fn order_limits() {
        assert!(matches!(
            count_one_costas(0, 1),
            Err(Error::OrderTooSmall { .. })
        ));
        assert!(matches!(
            count_one_costas(MAX_ONE_COSTAS_ORDER + 1, 1),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(matches!(
            count_costas(17, 1),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!("two-costas".parse::<TableKind>().is_err());
        assert_eq!("convex".parse::<TableKind>().unwrap(), TableKind::Convex);
    }
}
