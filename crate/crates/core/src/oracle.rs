//! Reference implementations kept deliberately naive and independent of the
//! main algorithms; the test suites hold the fast paths to these.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::graphs::SimpleGraph;
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{Exponent, Monomial};
use crate::prime::PrimeSupport;

/// Brute-force membership x^(k·a) ∈ I^k: some multiset of k generators has a
/// product dividing a^k. Uses only monomial arithmetic, no ideal operations.
pub fn power_membership(ideal: &MonomialIdeal, a: &Monomial, k: usize) -> bool {
    assert!(k >= 1);
    let target = a.pow(k.try_into().expect("power exceeds exponent range"));
    ideal
        .gens()
        .iter()
        .combinations_with_replacement(k)
        .any(|combo| combo.iter().fold(Monomial::one(a.num_vars()), |acc, g| acc.mul(g)).divides(&target))
}

/// Iterate every exponent point in the box `0..=bounds[i]` per coordinate.
pub fn box_points(bounds: &[Exponent]) -> impl Iterator<Item = Vec<Exponent>> + '_ {
    bounds
        .iter()
        .map(|&b| 0..=b)
        .multi_cartesian_product()
        // multi_cartesian_product yields nothing for zero factors; cover n = 0
        // defensively even though ambient dimensions are positive.
        .chain(bounds.is_empty().then(Vec::new))
}

/// Brute-force integral closure: every box point that reaches I^k for some
/// k <= k_max, minimalized. Exact whenever k_max is large enough for the
/// instance (tests choose instances and k_max together).
pub fn closure_box_scan(ideal: &MonomialIdeal, k_max: usize) -> MonomialIdeal {
    let bounds = ideal.max_exponents();
    let mut hits = Vec::new();
    for point in box_points(&bounds) {
        let m = Monomial::new(point);
        if (1..=k_max).any(|k| power_membership(ideal, &m, k)) {
            hits.push(m);
        }
    }
    MonomialIdeal::from_candidates(ideal.num_vars(), minimalize(hits))
}

/// Brute-force associated primes: enumerate witnesses v in the exponent box
/// and keep every prime that equals some colon (I : v).
pub fn ass_box_scan(ideal: &MonomialIdeal) -> BTreeSet<PrimeSupport> {
    let bounds = ideal.max_exponents();
    let mut found = BTreeSet::new();
    for point in box_points(&bounds) {
        let v = Monomial::new(point);
        let colon = ideal.colon(&v);
        if let Ok(p) = PrimeSupport::try_from_ideal(&colon) {
            found.insert(p);
        }
    }
    found
}

/// All minimal dominating sets by exhaustive subset enumeration.
pub fn dominating_sets_exhaustive(g: &SimpleGraph) -> Vec<BTreeSet<usize>> {
    let n = g.num_vertices();
    assert!(n <= 20, "exhaustive enumeration is for small graphs only");
    let dominates = |set: u32| -> bool {
        (0..n).all(|v| {
            let closed = g.closed_neighborhood(v);
            closed.iter().any(|&u| set & (1 << u) != 0)
        })
    };
    let mut dominating: Vec<u32> = (0..(1u32 << n)).filter(|&s| dominates(s)).collect();
    dominating.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    'outer: for s in dominating {
        for &m in &minimal {
            if m & s == m {
                continue 'outer;
            }
        }
        minimal.push(s);
    }
    minimal
        .into_iter()
        .map(|s| (0..n).filter(|&v| s & (1 << v) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| Monomial::new(e.to_vec())).collect()).unwrap()
    }

    #[test]
    fn power_membership_detects_closure_points() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let xy = Monomial::new(vec![1, 1]);
        assert!(!power_membership(&i, &xy, 1));
        assert!(power_membership(&i, &xy, 2)); // (xy)^2 = x^2 * y^2
    }

    #[test]
    fn closure_box_scan_on_x2_y2() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(closure_box_scan(&i, 4), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
    }

    #[test]
    fn ass_box_scan_on_x2_xy() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let ass = ass_box_scan(&i);
        let expected: BTreeSet<PrimeSupport> =
            [PrimeSupport::new([0]).unwrap(), PrimeSupport::new([0, 1]).unwrap()].into();
        assert_eq!(ass, expected);
    }
}
