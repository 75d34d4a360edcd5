//! Permutations whose derivative takes exactly two values.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{check_order, Permutation};

/// A pair of distinct derivative values `(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DPair {
    pub p: i64,
    pub q: i64,
}

impl DPair {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == q {
            return Err(Error::DegeneratePair(p));
        }
        Ok(Self { p, q })
    }

    /// The equivalent pair with `|p| >= |q|` and `p > 0`. Swapping is free, and
    /// a sign flip corresponds to reversing the permutation.
    pub fn normalized(&self) -> Self {
        let (mut p, mut q) = if self.p.abs() >= self.q.abs() {
            (self.p, self.q)
        } else {
            (self.q, self.p)
        };
        if p < 0 {
            (p, q) = (-p, -q);
        }
        Self { p, q }
    }

    fn value_set(&self) -> BTreeSet<i64> {
        BTreeSet::from([self.p, self.q])
    }
}

/// True iff the set of derivative values of `perm` is exactly `{p, q}`.
pub fn is_dpair_realization(perm: &Permutation, d: DPair) -> bool {
    perm.derivative().value_set() == d.value_set()
}

/// Opposite signs, coprime, and distinct magnitudes.
pub fn is_feasible_dpair(d: DPair) -> bool {
    d.p.signum() * d.q.signum() < 0 && d.p.abs().gcd(&d.q.abs()) == 1 && d.p.abs() != d.q.abs()
}

fn check_pair(a: i64, b: i64) -> Result<()> {
    if a < 1 || a >= b {
        return Err(Error::NotStrictlyOrdered { a, b });
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(())
}

/// A permutation realizing `(a, -b)`.
///
/// For `a = 1` this is `(2, 3, ..., b+1, 1)`. Otherwise it has order `a + b`
/// and walks `a` columns to the right per row, cyclically.
pub fn construct_dpair(a: i64, b: i64) -> Result<Permutation> {
    check_pair(a, b)?;
    let (a, b) = (a as usize, b as usize);
    let entries = if a == 1 {
        check_order(b + 1, 1)?;
        (2..=b + 1).chain(std::iter::once(1)).collect()
    } else {
        let n = a + b;
        check_order(n, 1)?;
        (0..n).map(|i| (i * a) % n + 1).collect()
    };
    Ok(Permutation::from_entries_unchecked(entries))
}

/// The pair `(a', -(a+b-a'))` realized by the inverse of [`construct_dpair`],
/// where `a a' ≡ 1 (mod a+b)`.
pub fn inverse_dpair(a: i64, b: i64) -> Result<DPair> {
    check_pair(a, b)?;
    let n = a + b;
    let inv = a.extended_gcd(&n).x.mod_floor(&n);
    DPair::new(inv, -(n - inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn perm(xs: &[usize]) -> Permutation {
        Permutation::new(xs.to_vec()).unwrap()
    }

    fn pair(p: i64, q: i64) -> DPair {
        DPair::new(p, q).unwrap()
    }

    #[test]
    fn realization_examples() {
        assert!(is_dpair_realization(
            &perm(&[6, 3, 5, 2, 4, 1]),
            pair(2, -3)
        ));
        assert!(!is_dpair_realization(&perm(&[1, 2, 3]), pair(1, -2)));
        assert!(is_dpair_realization(
            &perm(&[5, 2, 7, 4, 1, 6, 3]),
            pair(5, -3)
        ));
        assert!(is_dpair_realization(
            &perm(&[5, 2, 7, 4, 1, 6, 3]),
            pair(-3, 5)
        ));
    }

    #[test]
    fn feasibility_examples() {
        assert!(is_feasible_dpair(pair(5, -13)));
        assert!(!is_feasible_dpair(pair(2, -4)));
        assert!(!is_feasible_dpair(pair(1, -1)));
        assert!(!is_feasible_dpair(pair(2, 3)));
        assert!(!is_feasible_dpair(pair(0, 1)));
        assert!(matches!(DPair::new(3, 3), Err(Error::DegeneratePair(3))));
    }

    #[test]
    fn one_minus_one_is_never_realized() {
        for n in 2..=6usize {
            let hit = (1..=n)
                .permutations(n)
                .any(|v| is_dpair_realization(&perm(&v), pair(1, -1)));
            assert!(!hit, "n = {n}");
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(pair(-3, 5).normalized(), pair(5, -3));
        assert_eq!(pair(-5, 3).normalized(), pair(5, -3));
        assert_eq!(pair(5, -13).normalized(), pair(13, -5));
    }

    #[test]
    fn construct_examples() {
        let p = construct_dpair(5, 13).unwrap();
        assert_eq!(
            p,
            perm(&[1, 6, 11, 16, 3, 8, 13, 18, 5, 10, 15, 2, 7, 12, 17, 4, 9, 14])
        );
        assert_eq!(
            p.derivative().diffs(),
            &[5, 5, 5, -13, 5, 5, 5, -13, 5, 5, -13, 5, 5, 5, -13, 5, 5]
        );
        let q = construct_dpair(1, 3).unwrap();
        assert_eq!(q, perm(&[2, 3, 4, 1]));
        assert_eq!(q.derivative().diffs(), &[1, 1, -3]);
        let r = construct_dpair(4, 5).unwrap();
        assert_eq!(r, perm(&[1, 5, 9, 4, 8, 3, 7, 2, 6]));
        assert_eq!(r.derivative().diffs(), &[4, 4, -5, 4, -5, 4, -5, 4]);
    }

    #[test]
    fn construct_errors() {
        assert!(matches!(
            construct_dpair(2, 4),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            construct_dpair(5, 3),
            Err(Error::NotStrictlyOrdered { .. })
        ));
        assert!(matches!(
            construct_dpair(3, 3),
            Err(Error::NotStrictlyOrdered { .. })
        ));
        assert!(matches!(
            construct_dpair(0, 3),
            Err(Error::NotStrictlyOrdered { .. })
        ));
        assert!(inverse_dpair(4, 6).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_dpair(5, 13).unwrap(), pair(11, -7));
        assert_eq!(inverse_dpair(4, 5).unwrap(), pair(7, -2));
        for b in 2..20 {
            assert_eq!(inverse_dpair(1, b).unwrap(), pair(1, -b));
        }
        let p = construct_dpair(5, 13).unwrap().inverse();
        assert_eq!(
            p.derivative().diffs(),
            &[11, -7, 11, -7, -7, 11, -7, 11, -7, -7, 11, -7, 11, -7, -7, 11, -7]
        );
        let q = construct_dpair(4, 5).unwrap().inverse();
        assert_eq!(q, perm(&[1, 8, 6, 4, 2, 9, 7, 5, 3]));
        assert_eq!(q.derivative().diffs(), &[7, -2, -2, -2, 7, -2, -2, -2]);
    }

    #[test]
    fn constructions_split_into_the_two_cases() {
        for b in 2..=12i64 {
            for a in 1..b {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let p = construct_dpair(a, b).unwrap();
                let d = p.derivative();
                assert!(d.diffs().iter().all(|&x| x == a || x == a - (a + b)));
                assert!(d.diffs().contains(&-b));
                assert!(is_dpair_realization(&p, pair(a, -b)));
                assert!(is_dpair_realization(
                    &p.inverse(),
                    inverse_dpair(a, b).unwrap()
                ));
            }
        }
    }
}
