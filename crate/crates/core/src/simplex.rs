//! Exact feasibility solver for the Newton-polyhedron membership system
//! { λ >= 0, Σ λ_i = level, Σ λ_i v_i <= target componentwise }, written as a
//! dense primal simplex (maximize Σ λ_i) with Bland's rule, so it cannot cycle
//! and every number stays an exact rational.

use num_traits::{FromPrimitive, Signed};

use crate::monomial::Exponent;

/// Exact scalar usable by the solver: any ordered rational-like field type.
pub trait LpScalar: Signed + FromPrimitive + Clone + Ord + std::fmt::Debug {}

impl<T: Signed + FromPrimitive + Clone + Ord + std::fmt::Debug> LpScalar for T {}

/// Find nonnegative weights over `rows` summing to `level` whose weighted row
/// sum is componentwise at most `target`. Returns the weights on success.
pub fn feasible_combination<T: LpScalar>(
    rows: &[Vec<Exponent>],
    target: &[Exponent],
    level: u64,
) -> Option<Vec<T>> {
    let s = rows.len();
    let n = target.len();
    if s == 0 {
        return None; // Σ λ = level >= 1 is unreachable with no rows
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert!(level >= 1);

    let from_exp = |e: Exponent| T::from_u32(e).expect("exponent does not fit in LP scalar");
    let level_t = T::from_u64(level).expect("level does not fit in LP scalar");

    // Columns: λ_0..λ_{s-1}, slacks y_0..y_{n-1}, artificial z; last slot RHS.
    let cols = s + n + 1;
    let rhs = cols;
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![T::zero(); cols + 1];
        for (i, v) in rows.iter().enumerate() {
            row[i] = from_exp(v[j]);
        }
        row[s + j] = T::one();
        row[rhs] = from_exp(target[j]);
        tab.push(row);
    }
    let mut level_row = vec![T::zero(); cols + 1];
    for slot in level_row.iter_mut().take(s) {
        *slot = T::one();
    }
    level_row[s + n] = T::one();
    level_row[rhs] = level_t.clone();
    tab.push(level_row);

    // Objective row holds reduced costs; its RHS slot holds minus the value.
    let mut obj = vec![T::zero(); cols + 1];
    for slot in obj.iter_mut().take(s) {
        *slot = T::one();
    }

    // Initial basis: the n slacks, then the artificial variable.
    let mut basis: Vec<usize> = (0..n).map(|j| s + j).collect();
    basis.push(s + n);

    let mut iterations = 0usize;
    loop {
        iterations += 1;
        assert!(iterations < 1 << 22, "simplex did not terminate (internal error)");

        // Bland: entering column = smallest index with positive reduced cost.
        let Some(enter) = (0..cols).find(|&j| obj[j] > T::zero()) else {
            break; // optimal
        };

        // Ratio test; ties broken by smallest basic variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<T> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter] > T::zero() {
                let ratio = row[rhs].clone() / row[enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let leave = leave.expect("unbounded objective (internal error: Σλ is bounded by level)");

        // Pivot: normalize the leaving row, eliminate elsewhere.
        let pivot = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        let pivot_row = tab[leave].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != leave && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        basis[leave] = enter;
    }

    // Maximum of Σλ is level exactly when the system is feasible.
    let value = obj[rhs].clone().neg();
    if value != level_t {
        return None;
    }

    let mut lambda = vec![T::zero(); s];
    for (r, &b) in basis.iter().enumerate() {
        if b < s {
            lambda[b] = tab[r][rhs].clone();
        }
    }
    debug_assert!(verify(rows, target, level, &lambda));
    Some(lambda)
}

/// Check a weight vector against the original system (used in debug builds
/// and by tests).
pub fn verify<T: LpScalar>(
    rows: &[Vec<Exponent>],
    target: &[Exponent],
    level: u64,
    lambda: &[T],
) -> bool {
    let from_exp = |e: Exponent| T::from_u32(e).expect("exponent does not fit in LP scalar");
    if lambda.len() != rows.len() || lambda.iter().any(|l| l.is_negative()) {
        return false;
    }
    let total = lambda.iter().fold(T::zero(), |acc, l| acc + l.clone());
    if total != T::from_u64(level).expect("level does not fit in LP scalar") {
        return false;
    }
    for j in 0..target.len() {
        let mut sum = T::zero();
        for (l, row) in lambda.iter().zip(rows) {
            sum = sum + l.clone() * from_exp(row[j]);
        }
        if sum > from_exp(target[j]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::{BigRational, Ratio};

    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn midpoint_certificate_is_unique() {
        // rows x^2, y^2; target xy: the only solution is λ = (1/2, 1/2).
        let rows = vec![vec![2, 0], vec![0, 2]];
        let lambda = feasible_combination::<BigRational>(&rows, &[1, 1], 1).unwrap();
        assert_eq!(lambda, vec![big(1, 2), big(1, 2)]);
    }

    #[test]
    fn infeasible_below_the_polyhedron() {
        // rows x^3, y^3; target xy is under the Newton polyhedron.
        let rows = vec![vec![3, 0], vec![0, 3]];
        assert!(feasible_combination::<BigRational>(&rows, &[1, 1], 1).is_none());
        // but x^2 y is on it: λ = (2/3, 1/3)
        let lambda = feasible_combination::<BigRational>(&rows, &[2, 1], 1).unwrap();
        assert!(verify(&rows, &[2, 1], 1, &lambda));
    }

    #[test]
    fn scaled_level_matches_power_membership() {
        // 2·NP of (x^2, y^2): (1, 3) needs μ = (1/2, 3/2).
        let rows = vec![vec![2, 0], vec![0, 2]];
        let lambda = feasible_combination::<BigRational>(&rows, &[1, 3], 2).unwrap();
        assert!(verify(&rows, &[1, 3], 2, &lambda));
        assert!(feasible_combination::<BigRational>(&rows, &[1, 2], 2).is_none());
    }

    #[test]
    fn no_rows_is_infeasible() {
        assert!(feasible_combination::<BigRational>(&[], &[3, 3], 1).is_none());
    }

    #[test]
    fn zero_target_needs_a_constant_row() {
        let rows = vec![vec![0, 0]];
        assert!(feasible_combination::<BigRational>(&rows, &[0, 0], 1).is_some());
        let rows = vec![vec![1, 0]];
        assert!(feasible_combination::<BigRational>(&rows, &[0, 0], 1).is_none());
    }

    #[test]
    fn scalars_agree_on_random_instances() {
        // The solver is generic; i64 rationals and big rationals must agree.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..500 {
            let s = (next() % 4 + 1) as usize;
            let n = (next() % 3 + 1) as usize;
            let rows: Vec<Vec<Exponent>> =
                (0..s).map(|_| (0..n).map(|_| (next() % 4) as Exponent).collect()).collect();
            let target: Vec<Exponent> = (0..n).map(|_| (next() % 4) as Exponent).collect();
            let level = next() % 3 + 1;
            let a = feasible_combination::<BigRational>(&rows, &target, level);
            let b = feasible_combination::<Ratio<i64>>(&rows, &target, level);
            assert_eq!(a.is_some(), b.is_some(), "rows {rows:?} target {target:?} level {level}");
        }
    }
}
