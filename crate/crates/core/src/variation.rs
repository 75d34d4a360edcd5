//! Local and global variation, and the permutations that attain their
//! extreme values.
//!
//! For `π` of order `n`, the local variation `δ(π)` is `max |D(π)_i|` and the
//! global variation `Δ(π)` is `||D(π)||_1`. The odd-order closed forms below are
//! the ones that agree with exhaustive search; the divergent printed forms are
//! exposed separately through [`PublishedVariant`].

use serde::Serialize;

use crate::error::Result;
use crate::perm::{check_order, Permutation};

/// `δ(π)`; 0 for order 1.
pub fn local_variation(p: &Permutation) -> i64 {
    p.derivative().max_abs()
}

/// `Δ(π)`; 0 for order 1.
pub fn global_variation(p: &Permutation) -> i64 {
    p.derivative().l1_norm()
}

/// `|π_i - π_j| <= L |i - j|` for all `i, j`, which reduces to `δ(π) <= L`.
pub fn is_lipschitz(p: &Permutation, lipschitz: i64) -> bool {
    local_variation(p) <= lipschitz
}

/// Even `n = 2k`: consecutive entries alternate across the cut between `k`
/// and `k+1`. Odd `n = 2k+1`: consecutive entries lie on opposite sides of the
/// pivot `k+1`, the pivot counting as both sides.
pub fn is_mid_alternating(p: &Permutation) -> bool {
    let n = p.order();
    let k = n / 2;
    let (low_max, high_min) = if n.is_multiple_of(2) {
        (k, k + 1)
    } else {
        (k + 1, k + 1)
    };
    p.entries()
        .windows(2)
        .all(|w| (w[0] <= low_max && w[1] >= high_min) || (w[0] >= high_min && w[1] <= low_max))
}

/// True when `{π_1, π_n}` is one of the endpoint sets of a `Δ` maximizer:
/// `{k, k+1}` for `n = 2k`, `{k, k+1}` or `{k+1, k+2}` for `n = 2k+1`.
pub fn has_max_global_endpoints(p: &Permutation) -> bool {
    let n = p.order();
    let k = n / 2;
    let mut ends = [p.at(1), p.at(n)];
    ends.sort_unstable();
    if n.is_multiple_of(2) {
        ends == [k, k + 1]
    } else {
        ends == [k, k + 1] || ends == [k + 1, k + 2]
    }
}

/// `Δ*_n = max Δ` over permutations of order `n`: `(n² - 2)/2` for even `n`,
/// `(n² - 3)/2` for odd `n`.
pub fn delta_star(n: usize) -> Result<i64> {
    check_order(n, 2)?;
    let n = n as i64;
    Ok(if n % 2 == 0 {
        (n * n - 2) / 2
    } else {
        (n * n - 3) / 2
    })
}

/// A `Δ` maximizer: `π_1 = k`, then alternately `k+1+j` and `j`, ending in `k+1`.
pub fn construct_max_global(n: usize) -> Result<Permutation> {
    check_order(n, 2)?;
    let k = n / 2;
    let mut entries = Vec::with_capacity(n);
    entries.push(k);
    for pos in 2..n {
        entries.push(if pos % 2 == 0 {
            k + 1 + pos / 2
        } else {
            (pos - 1) / 2
        });
    }
    entries.push(k + 1);
    Ok(Permutation::from_entries_unchecked(entries))
}

/// `π_(k)`, the permutation of order `k` with derivative `(1, -2, 3, -4, ...)`.
pub fn pi_perm(k: usize) -> Result<Permutation> {
    check_order(k, 1)?;
    let start = if k.is_multiple_of(2) {
        k / 2
    } else {
        k / 2 + 1
    };
    let mut entries = Vec::with_capacity(k);
    let mut cur = start as i64;
    entries.push(start);
    for step in 1..k as i64 {
        cur += if step % 2 == 1 { step } else { -step };
        entries.push(cur as usize);
    }
    Ok(Permutation::from_entries_unchecked(entries))
}

/// `Π*_k`: `Π_k` rotated a quarter turn counter-clockwise.
pub fn pi_star(k: usize) -> Result<Permutation> {
    Ok(pi_perm(k)?.rotate90())
}

/// `A ⊕ B`.
fn direct_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let shift = a.order();
    let entries = a
        .entries()
        .iter()
        .copied()
        .chain(b.entries().iter().map(|&v| v + shift))
        .collect();
    Permutation::from_entries_unchecked(entries)
}

/// `[[O, A], [B, O]]` with `A` in the top-right and `B` in the bottom-left.
fn anti_block(top_right: &Permutation, bottom_left: &Permutation) -> Permutation {
    let shift = bottom_left.order();
    let entries = top_right
        .entries()
        .iter()
        .map(|&v| v + shift)
        .chain(bottom_left.entries().iter().copied())
        .collect();
    Permutation::from_entries_unchecked(entries)
}

/// A 1-Costas permutation with `δ = ⌈n/2⌉` and minimum `Δ` among 1-Costas
/// permutations of order `n`.
///
/// Left multiplication by the backward identity `L` reverses the rows
/// (`reverse`), right multiplication reverses the columns (`complement`).
/// * `n = 2k`: `Π_k ⊕ L Π_k`
/// * `n = 2k+1`, `k` even: `[[O, L Π_{k+1}], [Π_k, O]]`
/// * `n = 2k+1`, `k` odd: `[[O, L Π_{k+1} L], [Π_k L, O]]`
pub fn construct_min_local_1costas(n: usize) -> Result<Permutation> {
    check_order(n, 2)?;
    let k = n / 2;
    let small = pi_perm(k)?;
    Ok(if n.is_multiple_of(2) {
        direct_sum(&small, &small.reverse())
    } else {
        let big = pi_perm(k + 1)?;
        if k.is_multiple_of(2) {
            anti_block(&big.reverse(), &small)
        } else {
            anti_block(&big.reverse().complement(), &small.complement())
        }
    })
}

/// `⌈n/2⌉`, the least local variation of a 1-Costas permutation of order `n >= 2`.
pub fn min_local_1costas(n: usize) -> Result<i64> {
    check_order(n, 2)?;
    Ok(n.div_ceil(2) as i64)
}

/// Minimum `Δ` over 1-Costas permutations: `n²/4` for even `n`,
/// `(n² - 1)/4 + 1` for odd `n`.
pub fn min_global_1costas(n: usize) -> Result<i64> {
    check_order(n, 2)?;
    let n = n as i64;
    Ok(if n % 2 == 0 {
        n * n / 4
    } else {
        (n * n - 1) / 4 + 1
    })
}

/// `π^(n)`, attaining `max_π min_i |D(π)_i| = ⌊n/2⌋`.
///
/// Even `n = 2k`: `(k+1, 1, k+2, 2, ..., n, k)`. Odd `n`: `1` followed by the
/// even construction of order `n-1` shifted up by one (`J_1 ⊕ P^(n-1)`).
pub fn construct_maximin_abs(n: usize) -> Result<Permutation> {
    check_order(n, 2)?;
    let even = |m: usize| -> Vec<usize> {
        let k = m / 2;
        (1..=k).flat_map(|j| [k + j, j]).collect()
    };
    let entries = if n.is_multiple_of(2) {
        even(n)
    } else {
        std::iter::once(1)
            .chain(even(n - 1).into_iter().map(|v| v + 1))
            .collect()
    };
    Ok(Permutation::from_entries_unchecked(entries))
}

/// `⌊n/2⌋`.
pub fn maximin_abs_value(n: usize) -> Result<i64> {
    check_order(n, 2)?;
    Ok((n / 2) as i64)
}

/// Closed forms printed for odd orders that disagree with exhaustive search,
/// kept for reporting next to the validated values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedVariant {
    pub formula: &'static str,
    pub value: i64,
}

/// `(3n² - 6n - 13)/4` for odd `n`; `None` for even `n`, where the printed
/// form is correct.
pub fn published_odd_delta_star(n: usize) -> Option<PublishedVariant> {
    (n % 2 == 1).then(|| {
        let n = n as i64;
        PublishedVariant {
            formula: "(3n^2-6n-13)/4",
            value: (3 * n * n - 6 * n - 13) / 4,
        }
    })
}

/// `(n-1)²/4 + 1` for odd `n`; `None` for even `n`.
pub fn published_odd_min_global_1costas(n: usize) -> Option<PublishedVariant> {
    (n % 2 == 1).then(|| {
        let n = n as i64;
        PublishedVariant {
            formula: "(n-1)^2/4+1",
            value: (n - 1) * (n - 1) / 4 + 1,
        }
    })
}
