use itertools::Itertools;
use proptest::prelude::*;

use permderiv::convexity::is_convex;
use permderiv::costas::{is_costas, is_k_costas, BuilderState};
use permderiv::perm::{from_tree, SumCharacteristic, WeightedTree};
use permderiv::search::{enumerate, naive_enumerate, Mode, PrefixOk, SearchSpec};
use permderiv::variation::{global_variation, local_variation};
use permderiv::{integrate, is_realizable, Permutation};

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn integrate_undoes_derivative(p in permutation(40)) {
        let d = p.derivative();
        prop_assert!(is_realizable(d.diffs()));
        prop_assert_eq!(integrate(d.diffs()).unwrap(), p);
    }

    #[test]
    fn path_tree_matches_integration(p in permutation(30)) {
        let d = p.derivative();
        prop_assert_eq!(from_tree(&WeightedTree::path(d.diffs())).unwrap(), p);
    }

    #[test]
    fn sum_characteristic_is_an_interval_at_the_first_entry(p in permutation(30)) {
        let sc = SumCharacteristic::of(&p);
        prop_assert_eq!(sc.low(), 1 - p.at(1) as i64);
        prop_assert_eq!(sc.len(), p.order());
    }

    #[test]
    fn reversal_negates_and_reverses_the_derivative(p in permutation(30)) {
        let d = p.derivative().into_diffs();
        let r: Vec<i64> = d.iter().rev().map(|x| -x).collect();
        prop_assert_eq!(p.reverse().derivative().into_diffs(), r);
        prop_assert_eq!(global_variation(&p), global_variation(&p.reverse()));
        prop_assert_eq!(local_variation(&p), local_variation(&p.complement()));
    }

    #[test]
    fn costas_is_dihedral_invariant(p in permutation(9)) {
        let c = is_costas(&p);
        for g in p.dihedral_images() {
            prop_assert_eq!(is_costas(&g), c);
        }
    }

    #[test]
    fn k_costas_is_monotone_in_k(p in permutation(10)) {
        let flags: Vec<bool> = (0..p.order()).map(|k| is_k_costas(&p, k).unwrap()).collect();
        prop_assert!(flags.windows(2).all(|w| w[0] || !w[1]));
        prop_assert_eq!(*flags.last().unwrap(), is_costas(&p));
    }

    #[test]
    fn builder_accepts_exactly_one_costas_prefixes(p in permutation(12)) {
        let one = p.derivative().is_injective();
        prop_assert_eq!(BuilderState::from_prefix(p.order(), p.entries()).is_ok(), one);
    }

    #[test]
    fn convexity_survives_reversal(p in permutation(12)) {
        prop_assert_eq!(is_convex(&p), is_convex(&p.reverse()));
    }
}

#[test]
fn hereditary_prefix_filters_match_naive_filtering() {
    for n in 1..=7 {
        let spec = SearchSpec {
            n,
            pruner: PrefixOk(|s: &[usize]| s.len() < 2 || s[0] < s[1]),
            accept: |p: &Permutation| p.descent_count() <= 2,
            mode: Mode::Count,
        };
        let oracle = (1..=n)
            .permutations(n)
            .filter(|v| {
                (v.len() < 2 || v[0] < v[1]) && v.windows(2).filter(|w| w[1] < w[0]).count() <= 2
            })
            .count() as u64;
        assert_eq!(enumerate(&spec, 1).unwrap().count(), oracle);
        assert_eq!(enumerate(&spec, 3).unwrap().count(), oracle);
        assert_eq!(naive_enumerate(&spec).unwrap().count(), oracle);
    }
}
