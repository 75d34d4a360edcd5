//! Built-in replay of the published worked examples and count table.

use std::collections::BTreeSet;

use anyhow::Result;
use serde::Serialize;

use permderiv::convexity::{classify_convex, enumerate_convex, is_convex, PartialColumnFill};
use permderiv::costas::{
    is_centrosymmetric, is_costas, is_costas_centrosymmetric, is_costas_half, is_costas_signed,
    is_costas_subpermutation, is_k_costas, jedwab_witness, reverse_second_half, SignedPermutation,
};
use permderiv::dpair::{
    construct_dpair, inverse_dpair, is_dpair_realization, is_feasible_dpair, DPair,
};
use permderiv::perm::{from_tree, realize_shift, TreeEdge, WeightedTree};
use permderiv::search::{count_one_costas, table, CountRow, TableKind};
use permderiv::triangle::{DifferenceTriangle, RenderMode};
use permderiv::variation::{
    construct_maximin_abs, construct_min_local_1costas, delta_star, global_variation, is_lipschitz,
    is_mid_alternating, local_variation, min_global_1costas, pi_perm, pi_star,
};
use permderiv::{derivative, integrate, is_realizable, sum_characteristic, Permutation};

/// Counts of 1-Costas permutations for `n = 1..=10`.
pub const FIGURE1_COUNTS: [u64; 10] = [1, 2, 4, 12, 44, 176, 788, 3936, 23264, 152112];
/// The matching percentages of `n!`, one decimal.
pub const FIGURE1_FRACTIONS: [&str; 10] = [
    "100.0", "100.0", "66.7", "50.0", "36.7", "24.4", "15.6", "9.8", "6.4", "4.2",
];

#[derive(Clone, Debug, Serialize)]
pub struct ExampleResult {
    pub name: &'static str,
    pub passed: bool,
    pub error: Option<String>,
}

type Check = fn() -> Result<bool>;

fn p(s: &str) -> Permutation {
    s.parse().expect("example permutations are well formed")
}

fn tri(xs: &[i64]) -> Result<DifferenceTriangle> {
    Ok(DifferenceTriangle::from_values(xs)?)
}

fn rows_equal(t: &DifferenceTriangle, rows: &[&[i64]]) -> bool {
    t.rows().len() == rows.len() && t.rows().iter().zip(rows).all(|(a, b)| a.as_slice() == *b)
}

const EXAMPLES: &[(&str, Check)] = &[
    ("derivative of 5,2,7,4,1,6,3", || {
        Ok(derivative(&p("5,2,7,4,1,6,3")).diffs() == [-3, 5, -3, -3, 5, -3])
    }),
    ("derivative of 3,5,1,6,2,4", || {
        Ok(derivative(&p("3,5,1,6,2,4")).diffs() == [2, -4, 5, -4, 2])
    }),
    ("integrate -3,5,-3,-3,5,-3", || {
        Ok(integrate(&[-3, 5, -3, -3, 5, -3])? == p("5,2,7,4,1,6,3"))
    }),
    ("sum-characteristic of -3,5,-3,-3,5,-3", || {
        Ok(sum_characteristic(&[-3, 5, -3, -3, 5, -3]) == (-4..=2).collect::<BTreeSet<_>>())
    }),
    ("sum-characteristic of -4,1,1,1,2,1", || {
        Ok(sum_characteristic(&[-4, 1, 1, 1, 2, 1]) == (-4..=2).collect::<BTreeSet<_>>())
    }),
    ("-3,5,-3,-3,5,-3 is realizable", || {
        Ok(is_realizable(&[-3, 5, -3, -3, 5, -3]))
    }),
    ("realize shift 4 in order 7", || {
        Ok(realize_shift(7, 4)? == p("5,1,2,3,4,6,7"))
    }),
    ("spanning tree reconstruction in order 6", || {
        let e = |i, j, w| TreeEdge { i, j, w };
        let t = WeightedTree::new(
            6,
            vec![
                e(1, 2, 3),
                e(2, 3, -5),
                e(4, 6, -1),
                e(1, 4, 2),
                e(2, 5, -4),
            ],
        );
        Ok(from_tree(&t)? == p("3,6,1,5,2,4"))
    }),
    ("inverse of the (5,-13) realization", || {
        Ok(p("1,6,11,16,3,8,13,18,5,10,15,2,7,12,17,4,9,14").inverse()
            == p("1,12,5,16,9,2,13,6,17,10,3,14,7,18,11,4,15,8"))
    }),
    ("triangle of 3,5,1,6,2,4", || {
        let t = tri(&[3, 5, 1, 6, 2, 4])?;
        Ok(rows_equal(
            &t,
            &[
                &[3, 5, 1, 6, 2, 4],
                &[2, -4, 5, -4, 2],
                &[-2, 1, 1, -2],
                &[3, -3, 3],
                &[-1, -1],
                &[1],
            ],
        ) && t.row(3)? == [3, -3, 3]
            && t.row(5)? == [1]
            && t.row_has_repeat(1)?)
    }),
    ("triangle of 4,3,1,2", || {
        let t = tri(&[4, 3, 1, 2])?;
        Ok(rows_equal(&t, &[&[4, 3, 1, 2], &[-1, -2, 1], &[-3, -1], &[-2]]) && t.is_repeat_free())
    }),
    ("staggered layout of 4,3,1,2", || {
        let got = tri(&[4, 3, 1, 2])?.render(RenderMode::Staggered);
        let tokens: Vec<Vec<&str>> = got
            .lines()
            .map(|l| l.split_whitespace().collect())
            .collect();
        let indents: Vec<usize> = got
            .lines()
            .map(|l| l.len() - l.trim_start().len())
            .collect();
        Ok(tokens
            == [
                vec!["4", "3", "1", "2"],
                vec!["-1", "-2", "1"],
                vec!["-3", "-1"],
                vec!["-2"],
            ]
            && indents.windows(2).all(|w| w[0] < w[1]))
    }),
    ("triangle is not the classical difference table", || {
        let t = tri(&[3, 5, 1, 6, 2, 4])?;
        let classical: Vec<i64> = t.row(1)?.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(classical == [-6, 9, -9, 6] && t.row(2)? == [-2, 1, 1, -2])
    }),
    ("1,3,4,2,5 is 1-Costas", || {
        Ok(is_k_costas(&p("1,3,4,2,5"), 1)?)
    }),
    ("5,2,7,4,1,6,3 is not 1-Costas", || {
        Ok(!is_k_costas(&p("5,2,7,4,1,6,3"), 1)?)
    }),
    ("4,3,1,2 is Costas", || Ok(is_costas(&p("4,3,1,2")))),
    ("3,5,1,6,2,4 is not Costas", || {
        Ok(!is_costas(&p("3,5,1,6,2,4")))
    }),
    (
        "Costas permutations of order 4 to 6 have a Jedwab witness",
        || {
            use itertools::Itertools;
            Ok((4..=6usize).all(|n| {
                (1..=n)
                    .permutations(n)
                    .map(|v| Permutation::new(v).expect("valid"))
                    .filter(is_costas)
                    .all(|q| jedwab_witness(&q).is_some_and(|w| w.is_valid_for(&q)))
            }))
        },
    ),
    ("2,3,5,8,1,4,6,7 is centrosymmetric", || {
        Ok(is_centrosymmetric(&p("2,3,5,8,1,4,6,7")))
    }),
    ("2,3,5,8,1,4,6,7 is Costas-centrosymmetric", || {
        Ok(is_costas_centrosymmetric(&p("2,3,5,8,1,4,6,7")))
    }),
    ("2,4,3,1,8,6,5,7 is Costas-centrosymmetric", || {
        Ok(is_costas_centrosymmetric(&p("2,4,3,1,8,6,5,7")))
    }),
    ("second-half reversal of the order 16 example", || {
        Ok(
            reverse_second_half(&p("1,3,9,10,13,5,15,11,16,14,8,7,4,12,2,6"))?
                == p("1,3,9,10,13,5,15,11,6,2,12,4,7,8,14,16"),
        )
    }),
    ("second-half reversal of 2,4,3,1,8,6,5,7", || {
        let r = reverse_second_half(&p("2,4,3,1,8,6,5,7"))?;
        Ok(r == p("2,4,3,1,7,5,6,8") && !is_costas(&r))
    }),
    ("2,4,-1,-3 is Costas-signed", || {
        Ok(is_costas_signed(&SignedPermutation::new(vec![
            2, 4, -1, -3,
        ])?))
    }),
    (
        "1,8,10,9,2,7 is a Costas subpermutation of order 12",
        || Ok(is_costas_subpermutation(&[1, 8, 10, 9, 2, 7], 12)),
    ),
    ("1,8,10,9,2,7 is a Costas half-permutation", || {
        Ok(is_costas_half(&[1, 8, 10, 9, 2, 7], 6))
    }),
    ("6,3,5,2,4,1 realizes (2,-3)", || {
        Ok(is_dpair_realization(&p("6,3,5,2,4,1"), DPair::new(2, -3)?))
    }),
    ("5,2,7,4,1,6,3 realizes (5,-3)", || {
        Ok(is_dpair_realization(
            &p("5,2,7,4,1,6,3"),
            DPair::new(5, -3)?,
        ))
    }),
    ("(5,-13) is feasible", || {
        Ok(is_feasible_dpair(DPair::new(5, -13)?))
    }),
    ("(2,-4) is not feasible", || {
        Ok(!is_feasible_dpair(DPair::new(2, -4)?))
    }),
    ("construction for (5,-13)", || {
        Ok(construct_dpair(5, 13)? == p("1,6,11,16,3,8,13,18,5,10,15,2,7,12,17,4,9,14"))
    }),
    ("construction for (4,-5)", || {
        let q = construct_dpair(4, 5)?;
        let d = q.derivative();
        // The printed derivative stops one entry short.
        Ok(q == p("1,5,9,4,8,3,7,2,6") && d.diffs()[..7] == [4, 4, -5, 4, -5, 4, -5])
    }),
    ("inverse pair of (5,-13)", || {
        Ok(inverse_dpair(5, 13)? == DPair::new(11, -7)?)
    }),
    ("inverse pair of (4,-5)", || {
        Ok(inverse_dpair(4, 5)? == DPair::new(7, -2)?
            && construct_dpair(4, 5)?.inverse().derivative().diffs()
                == [7, -2, -2, -2, 7, -2, -2, -2])
    }),
    ("local variation of 1,3,4,2,5", || {
        Ok(local_variation(&p("1,3,4,2,5")) == 3)
    }),
    ("global variation of 4,6,2,7,3,8,1,5", || {
        Ok(global_variation(&p("4,6,2,7,3,8,1,5")) == 31)
    }),
    ("global variation of 4,5,2,7,1,6,3", || {
        Ok(global_variation(&p("4,5,2,7,1,6,3")) == 23)
    }),
    ("identity has global variation n-1", || {
        Ok((1..=12)
            .all(|n| Permutation::identity(n).is_ok_and(|q| global_variation(&q) == n as i64 - 1)))
    }),
    ("identity and anti-identity are 1-Lipschitz", || {
        Ok((1..=12).all(|n| {
            Permutation::identity(n).is_ok_and(|q| is_lipschitz(&q, 1))
                && Permutation::anti_identity(n).is_ok_and(|q| is_lipschitz(&q, 1))
        }))
    }),
    ("4,6,2,7,3,8,1,5 is mid-alternating", || {
        Ok(is_mid_alternating(&p("4,6,2,7,3,8,1,5")))
    }),
    ("4,5,2,7,1,6,3 is mid-alternating", || {
        Ok(is_mid_alternating(&p("4,5,2,7,1,6,3")))
    }),
    ("maximum global variation for order 8", || {
        Ok(delta_star(8)? == 31)
    }),
    ("maximum global variation for order 7", || {
        Ok(delta_star(7)? == 23)
    }),
    ("pi of order 4 and 5", || {
        Ok(pi_perm(4)? == p("2,3,1,4") && pi_perm(5)? == p("3,4,2,5,1"))
    }),
    ("rotated pi of order 6", || {
        let s = pi_star(6)?;
        Ok(s == p("6,4,2,1,3,5") && s.derivative().diffs() == [-2, -2, -1, 2, 2])
    }),
    ("1-Costas construction of order 12", || {
        Ok(construct_min_local_1costas(12)?.derivative().diffs()
            == [1, -2, 3, -4, 5, 6, -5, 4, -3, 2, -1])
    }),
    ("1-Costas construction of order 11", || {
        Ok(construct_min_local_1costas(11)?.derivative().diffs()
            == [5, -4, 3, -2, 1, -6, -1, 2, -3, 4])
    }),
    ("minimum 1-Costas global variation for order 12", || {
        Ok(min_global_1costas(12)? == 36
            && global_variation(&construct_min_local_1costas(12)?) == 36)
    }),
    ("maximin construction of order 6", || {
        Ok(construct_maximin_abs(6)? == p("4,1,5,2,6,3"))
    }),
    ("maximin construction of order 7", || {
        Ok(construct_maximin_abs(7)? == p("1,5,2,6,3,7,4"))
    }),
    ("6,4,2,1,3,5 is convex", || Ok(is_convex(&p("6,4,2,1,3,5")))),
    ("identity and anti-identity are convex", || {
        Ok((1..=12).all(|n| {
            Permutation::identity(n).is_ok_and(|q| is_convex(&q))
                && Permutation::anti_identity(n).is_ok_and(|q| is_convex(&q))
        }))
    }),
    ("4,3,1,2 is not convex", || Ok(!is_convex(&p("4,3,1,2")))),
    ("prefixes of a convex matrix are k-convex", || {
        let q = p("6,4,2,1,3,5");
        Ok((1..=6).all(|k| {
            PartialColumnFill::from_permutation_prefix(&q, k).is_ok_and(|st| st.is_k_convex())
        }))
    }),
    ("4,3,1,2 has intervals but is not 4-convex", || {
        let q = p("4,3,1,2");
        let intervals = (1..=4).all(|k| {
            PartialColumnFill::from_permutation_prefix(&q, k)
                .is_ok_and(|st| st.interval().is_some())
        });
        Ok(intervals && !PartialColumnFill::from_permutation_prefix(&q, 4)?.is_k_convex())
    }),
    ("one filled column extends up and down", || {
        let n = 7;
        let inner = (2..n).all(|i| {
            PartialColumnFill::new(n, vec![i])
                .and_then(|st| st.extension_rows())
                .is_ok_and(|rows| rows == BTreeSet::from([i - 1, i + 1]))
        });
        let top = PartialColumnFill::new(n, vec![1])?.extension_rows()? == BTreeSet::from([2]);
        Ok(inner && top)
    }),
    ("eight convex permutations of order 6", || {
        let e = enumerate_convex(6)?;
        Ok(e.len() == 8 && e == classify_convex(6)? && e.contains(&p("6,4,2,1,3,5")))
    }),
    ("44 1-Costas permutations of order 5", || {
        Ok(count_one_costas(5, 1)?.count == 44)
    }),
    ("1-Costas count for order 1", || {
        let r = count_one_costas(1, 1)?;
        Ok(r.count == 1 && r.fraction_text() == "100.0")
    }),
    ("1-Costas count for order 7", || {
        let r = count_one_costas(7, 1)?;
        Ok(r.count == 788 && r.fraction_text() == "15.6")
    }),
    ("1-Costas count for order 10", || {
        let r = count_one_costas(10, 0)?;
        Ok(r.count == 152112 && r.fraction_text() == "4.2")
    }),
    ("1-Costas table up to order 10", || {
        Ok(figure1_matches(&table(TableKind::OneCostas, 10, 0)?))
    }),
];

pub fn run_examples() -> Vec<ExampleResult> {
    EXAMPLES
        .iter()
        .map(|(name, check)| match check() {
            Ok(passed) => ExampleResult {
                name,
                passed,
                error: None,
            },
            Err(e) => ExampleResult {
                name,
                passed: false,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// True when each row up to order 10 has the published count and fraction.
pub fn figure1_matches(rows: &[CountRow]) -> bool {
    rows.iter()
        .all(|r| match r.n.checked_sub(1).filter(|&i| i < 10) {
            Some(i) => r.count == FIGURE1_COUNTS[i] && r.fraction_text() == FIGURE1_FRACTIONS[i],
            None => true,
        })
}
