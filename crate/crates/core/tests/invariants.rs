use std::collections::BTreeSet;

use monideal::closure::{certificate_checks, np_contains};
use monideal::decomp::{ass_supports, irreducible_decomposition, minimal_primes};
use monideal::graphs::{di_ideal, minimal_dominating_sets, SimpleGraph};
use monideal::oracle::{ass_box_scan, dominating_sets_exhaustive, power_membership};
use monideal::properties::{ass_profile, extra_prime_table, persistence};
use monideal::{Exponent, Monomial, MonomialIdeal};
use proptest::collection::vec;
use proptest::prelude::*;

fn monomial_strategy(n: usize, max_exp: Exponent) -> impl Strategy<Value = Monomial> {
    vec(0..=max_exp, n).prop_map(Monomial::new)
}

fn ideal_strategy(
    n: usize,
    max_exp: Exponent,
    max_gens: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    vec(monomial_strategy(n, max_exp), 1..=max_gens)
        .prop_map(move |gens| MonomialIdeal::new(n, gens).unwrap())
}

/// Nonzero, proper, squarefree: every generator uses at least one variable.
fn squarefree_ideal_strategy(n: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    vec(
        vec(0..=1 as Exponent, n).prop_filter("constant generator", |e| e.iter().any(|&x| x > 0)),
        1..=max_gens,
    )
    .prop_map(move |gens| {
        MonomialIdeal::new(n, gens.into_iter().map(Monomial::new).collect()).unwrap()
    })
}

/// Some multiset of `t` generators has a product dividing `target`.
fn divides_some_product(gens: &[Monomial], target: &Monomial, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    gens.iter().enumerate().any(|(i, g)| {
        g.divides(target) && divides_some_product(&gens[i..], &target.div_exact(g), t - 1)
    })
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let count = pairs.len();
        vec(any::<bool>(), count).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mask)
                .filter_map(|(&p, &keep)| keep.then_some(p))
                .collect();
            SimpleGraph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn minimal_generators_form_an_antichain(ideal in ideal_strategy(4, 3, 6)) {
        let gens = ideal.gens();
        for (i, g) in gens.iter().enumerate() {
            for (j, h) in gens.iter().enumerate() {
                prop_assert!(i == j || !g.divides(h), "{g:?} divides {h:?}");
            }
        }
        let again = MonomialIdeal::new(ideal.num_vars(), gens.to_vec()).unwrap();
        prop_assert_eq!(&again, &ideal);
    }

    #[test]
    fn alexander_dual_is_an_involution(ideal in squarefree_ideal_strategy(6, 5)) {
        let dual = ideal.alexander_dual().unwrap();
        prop_assert_eq!(dual.alexander_dual().unwrap(), ideal);
    }

    #[test]
    fn colon_membership_law(
        ideal in ideal_strategy(3, 3, 5),
        u in monomial_strategy(3, 2),
        m in monomial_strategy(3, 3),
    ) {
        prop_assert_eq!(ideal.colon(&u).contains(&m), ideal.contains(&u.mul(&m)));
    }

    #[test]
    fn intersection_and_product_membership(
        a in ideal_strategy(3, 3, 4),
        b in ideal_strategy(3, 3, 4),
        m in monomial_strategy(3, 4),
    ) {
        let inter = a.intersect(&b);
        prop_assert_eq!(inter.contains(&m), a.contains(&m) && b.contains(&m));
        prop_assert!(inter.contains_ideal(&a.product(&b)));
    }

    #[test]
    fn sum_is_the_smallest_common_superideal(
        a in ideal_strategy(3, 3, 4),
        b in ideal_strategy(3, 3, 4),
    ) {
        let sum = a.sum(&b);
        prop_assert!(sum.contains_ideal(&a));
        prop_assert!(sum.contains_ideal(&b));
        for g in sum.gens() {
            prop_assert!(a.contains(g) || b.contains(g));
        }
    }

    #[test]
    fn power_membership_matches_generator_products(
        ideal in ideal_strategy(3, 2, 4),
        m in monomial_strategy(3, 5),
        t in 1..=3usize,
    ) {
        prop_assert_eq!(ideal.power(t).contains(&m), divides_some_product(ideal.gens(), &m, t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn newton_membership_agrees_with_bounded_power_search(
        ideal in ideal_strategy(3, 3, 4),
        a in monomial_strategy(3, 3),
    ) {
        match np_contains(&ideal, &a).unwrap() {
            Some(cert) => {
                prop_assert!(certificate_checks(&ideal, &a, &cert));
                let k = cert.power_witness as usize;
                prop_assert!(power_membership(&ideal, &a, k));
            }
            None => {
                // Membership at any power would put the point inside the
                // polyhedron, so a bounded scan must come up empty too.
                for k in 1..=4usize {
                    prop_assert!(!power_membership(&ideal, &a, k));
                }
            }
        }
    }

    #[test]
    fn associated_primes_match_box_scan(ideal in ideal_strategy(3, 3, 4)) {
        prop_assume!(ideal.is_proper() && !ideal.is_zero());
        let fast = ass_supports(&ideal).unwrap();
        prop_assert_eq!(&fast, &ass_box_scan(&ideal));
        let min = minimal_primes(&ideal).unwrap();
        prop_assert!(min.is_subset(&fast));
        for p in &min {
            prop_assert!(!min.iter().any(|q| q != p && q.is_subset_of(p)));
        }
    }

    #[test]
    fn irreducible_components_reconstruct_the_ideal(ideal in ideal_strategy(3, 3, 4)) {
        prop_assume!(ideal.is_proper() && !ideal.is_zero());
        let comps = irreducible_decomposition(&ideal).unwrap();
        let n = ideal.num_vars();
        let back = MonomialIdeal::intersect_all(n, comps.iter().map(|c| c.expand(n)));
        prop_assert_eq!(&back, &ideal);
        let supports: BTreeSet<_> = comps.iter().map(|c| c.support()).collect();
        prop_assert_eq!(supports, ass_supports(&ideal).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominating_sets_and_dual_paths_agree(g in graph_strategy(6)) {
        let fast: BTreeSet<BTreeSet<usize>> =
            minimal_dominating_sets(&g).unwrap().into_iter().collect();
        let slow: BTreeSet<BTreeSet<usize>> =
            dominating_sets_exhaustive(&g).into_iter().collect();
        prop_assert_eq!(fast, slow);
        // di_ideal cross-checks the enumeration against the Alexander dual of
        // the neighborhood ideal internally and errors on any mismatch.
        prop_assert!(di_ideal(&g).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn first_power_has_no_embedded_primes_when_squarefree(
        ideal in squarefree_ideal_strategy(3, 3),
    ) {
        let (table, min) = extra_prime_table(&ideal, 1).unwrap();
        prop_assert!(table[0].is_empty());
        prop_assert_eq!(min, minimal_primes(&ideal).unwrap());
    }

    #[test]
    fn persistence_agrees_with_profile_ascent(ideal in squarefree_ideal_strategy(3, 3)) {
        let verdict = persistence(&ideal, 2).unwrap();
        let profile = ass_profile(&ideal, 2).unwrap();
        let ascending = profile.per_power.windows(2).all(|w| {
            let lo: BTreeSet<_> = w[0].primes.iter().cloned().collect();
            let hi: BTreeSet<_> = w[1].primes.iter().cloned().collect();
            lo.is_subset(&hi)
        });
        prop_assert_eq!(verdict.holds, ascending);
    }
}
