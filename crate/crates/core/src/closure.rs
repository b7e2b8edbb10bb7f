//! Integral closure of monomial ideals via the Newton polyhedron: a monomial
//! x^a lies in the closure of I^t exactly when a is in t·NP(I), an exact
//! rational feasibility question. Closures are computed by a graded-lex DFS
//! over the exponent box with divisibility and polyhedron pruning; normality
//! is decided from the powers t = 1..=n-1.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{Exponent, Monomial};
use crate::simplex::feasible_combination;
use crate::Rat;

/// Wording attached to every normality report: the decision bound is imported
/// general theory, not something this crate re-proves.
pub const DECISION_RULE: &str =
    "normality of an ideal in n variables is decided by integral closedness of its powers t = 1..=n-1";

/// Exact membership certificate for the Newton polyhedron: weights over the
/// minimal generators and the derived power witness k (the lcm of the weight
/// denominators), for which x^(k·a) is divisible by a product of k generators.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonCertificate {
    pub weights: Vec<Rat>,
    pub power_witness: u64,
}

/// Decide x^a ∈ closure(I); on success return the weight certificate.
/// The zero ideal is rejected; for the unit ideal everything is a member.
pub fn np_contains(ideal: &MonomialIdeal, a: &Monomial) -> Result<Option<NewtonCertificate>> {
    assert_eq!(a.num_vars(), ideal.num_vars(), "dimension mismatch in np_contains");
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "np_contains" });
    }
    let rows: Vec<Vec<Exponent>> = ideal.gens().iter().map(|g| g.exponents.clone()).collect();
    let Some(weights) = feasible_combination::<Rat>(&rows, &a.exponents, 1) else {
        return Ok(None);
    };
    let power_witness = lcm_of_denominators(&weights)?;
    Ok(Some(NewtonCertificate { weights, power_witness }))
}

/// Validate a certificate by direct monomial division: with k the power
/// witness, k·weights are nonnegative integers summing to k, and the product
/// of the generators raised to them divides a^k.
pub fn certificate_checks(ideal: &MonomialIdeal, a: &Monomial, cert: &NewtonCertificate) -> bool {
    let k = BigInt::from(cert.power_witness);
    if cert.weights.len() != ideal.num_gens() || cert.power_witness == 0 {
        return false;
    }
    let mut counts = Vec::with_capacity(cert.weights.len());
    for w in &cert.weights {
        let scaled = w * Rat::from_integer(k.clone());
        if !scaled.is_integer() || scaled.is_negative() {
            return false;
        }
        counts.push(scaled.to_integer());
    }
    if counts.iter().sum::<BigInt>() != k {
        return false;
    }
    let mut product = Monomial::one(ideal.num_vars());
    for (g, c) in ideal.gens().iter().zip(&counts) {
        let c = c.to_u32().expect("certificate count exceeds u32");
        product = product.mul(&g.pow(c));
    }
    product.divides(&a.pow(cert.power_witness.try_into().expect("power witness exceeds u32")))
}

fn lcm_of_denominators(weights: &[Rat]) -> Result<u64> {
    let mut acc = BigInt::one();
    for w in weights {
        acc = acc.lcm(w.denom());
    }
    acc.to_u64().ok_or(Error::WitnessOverflow)
}

/// Scan outcome for one power: the closure generators, or an early witness.
enum ScanOutcome {
    Closed,
    Witness(Monomial),
    TimedOut,
}

/// Shared state for the graded-lex DFS over the exponent box.
struct BoxScan<'a> {
    rows: Vec<Vec<Exponent>>,
    level: u64,
    min_level_degree: u64,
    bounds: Vec<Exponent>,
    inside: &'a MonomialIdeal,
    /// Points confirmed in the closure, for divisibility pruning; minimal
    /// generators of the closure are a subset.
    recorded: Vec<Monomial>,
    /// When set, stop as soon as a closure point outside `inside` appears.
    fail_fast: bool,
    witness: Option<Monomial>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl<'a> BoxScan<'a> {
    fn new(
        base: &MonomialIdeal,
        level: u64,
        inside: &'a MonomialIdeal,
        fail_fast: bool,
        deadline: Option<Instant>,
    ) -> Self {
        let rows: Vec<Vec<Exponent>> = base.gens().iter().map(|g| g.exponents.clone()).collect();
        let level_exp: Exponent = level.try_into().expect("power exceeds exponent range");
        let bounds = base
            .max_exponents()
            .iter()
            .map(|&m| m.checked_mul(level_exp).expect("scan box exponent overflow"))
            .collect();
        let min_degree = base.gens().iter().map(|g| g.total_degree()).min().unwrap_or(0);
        BoxScan {
            rows,
            level,
            min_level_degree: min_degree * level,
            bounds,
            inside,
            recorded: Vec::new(),
            fail_fast,
            witness: None,
            deadline,
            nodes: 0,
            timed_out: false,
        }
    }

    /// Membership of a box point in level·NP, cheapest tests first.
    fn in_scaled_np(&self, point: &[Exponent]) -> bool {
        let degree: u64 = point.iter().map(|&e| u64::from(e)).sum();
        if degree < self.min_level_degree {
            return false;
        }
        let m = Monomial::new(point.to_vec());
        if self.inside.contains(&m) {
            return true;
        }
        feasible_combination::<Rat>(&self.rows, point, self.level).is_some()
    }

    fn record(&mut self, point: &[Exponent]) -> bool {
        let m = Monomial::new(point.to_vec());
        if self.fail_fast && !self.inside.contains(&m) {
            self.witness = Some(m);
            return false;
        }
        self.recorded.push(m);
        true
    }

    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// DFS over coordinates `depth..`; `point[..depth]` is fixed and the rest
    /// is zero. `min_tested` says the all-zeros completion is already known
    /// outside the polyhedron (it is unchanged from the parent node).
    /// Returns false to abort the whole scan.
    fn scan(&mut self, point: &mut Vec<Exponent>, depth: usize, min_tested: bool) -> bool {
        if self.out_of_time() {
            return false;
        }
        // Anything above an already-confirmed closure point is redundant.
        if self.recorded.iter().any(|r| r.exponents.iter().zip(point.iter()).all(|(a, b)| a <= b)) {
            return true;
        }
        if !min_tested && self.in_scaled_np(point) {
            return self.record(point);
        }
        if depth == point.len() {
            return true;
        }
        // If even the box-maximal completion misses the polyhedron, the whole
        // subtree does.
        let saved = point[depth..].to_vec();
        for i in depth..point.len() {
            point[i] = self.bounds[i];
        }
        let max_in = self.in_scaled_np(point);
        point[depth..].copy_from_slice(&saved);
        if !max_in {
            return true;
        }
        for e in 0..=self.bounds[depth] {
            point[depth] = e;
            if !self.scan(point, depth + 1, e == 0) {
                return false;
            }
        }
        point[depth] = 0;
        true
    }

    fn run(mut self) -> (ScanOutcome, Vec<Monomial>) {
        let n = self.bounds.len();
        let mut point = vec![0; n];
        let completed = self.scan(&mut point, 0, false);
        if self.timed_out {
            (ScanOutcome::TimedOut, self.recorded)
        } else if !completed {
            (ScanOutcome::Witness(self.witness.expect("aborted scan must carry a witness")), self.recorded)
        } else {
            (ScanOutcome::Closed, self.recorded)
        }
    }
}

/// Minimal generators of closure(base^level), computed from the scaled Newton
/// polyhedron of `base`. `power` must equal base^level.
fn closure_of_power(base: &MonomialIdeal, level: u64, power: &MonomialIdeal) -> MonomialIdeal {
    let scan = BoxScan::new(base, level, power, false, None);
    let (outcome, recorded) = scan.run();
    debug_assert!(matches!(outcome, ScanOutcome::Closed));
    MonomialIdeal::from_candidates(base.num_vars(), minimalize(recorded))
}

/// Integral closure of a monomial ideal. The unit ideal is its own closure by
/// convention; the zero ideal is rejected.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "integral_closure" });
    }
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    Ok(closure_of_power(ideal, 1, ideal))
}

/// Decide closure(I) = I; on failure return a witness monomial in the closure
/// but outside the ideal.
pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<(bool, Option<Monomial>)> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "is_integrally_closed" });
    }
    if ideal.is_unit() {
        return Ok((true, None));
    }
    let scan = BoxScan::new(ideal, 1, ideal, true, None);
    let (outcome, _) = scan.run();
    match outcome {
        ScanOutcome::Closed => Ok((true, None)),
        ScanOutcome::Witness(w) => Ok((false, Some(w))),
        ScanOutcome::TimedOut => unreachable!("no deadline was set"),
    }
}

/// Options for the normality scan.
#[derive(Debug, Clone, Default)]
pub struct NormalityOptions {
    /// Largest power to check; capped at the decision bound n-1. `None`
    /// means the full decision bound.
    pub bound: Option<usize>,
    /// Cooperative deadline; on expiry the report carries partial evidence.
    pub deadline: Option<Instant>,
}

/// Per-power outcome inside a normality report.
#[derive(Debug, Clone, Serialize)]
pub struct PowerCheck {
    pub t: usize,
    pub integrally_closed: bool,
}

/// How far a normality verdict reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityVerdict {
    /// Every power up to the decision bound is integrally closed.
    Normal,
    /// Some checked power is not integrally closed.
    NotNormal,
    /// All checked powers closed, but the decision bound was not covered.
    VerifiedUpTo,
}

/// Outcome of a bounded normality scan.
#[derive(Debug, Clone, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub verdict: NormalityVerdict,
    /// Highest t with powers 1..=t all verified integrally closed.
    pub verified_up_to: usize,
    pub powers_checked: Vec<PowerCheck>,
    pub failure_power: Option<usize>,
    pub failure_witness: Option<Monomial>,
    pub bound_used: usize,
    pub decision_bound: usize,
    pub timed_out: bool,
    pub decision_rule: &'static str,
}

/// Decide normality of a nonzero ideal by checking integral closedness of
/// I^t for t = 1..=min(bound, n-1).
pub fn is_normal(ideal: &MonomialIdeal, opts: &NormalityOptions) -> Result<NormalityReport> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "is_normal" });
    }
    let n = ideal.num_vars();
    // n = 1: every monomial ideal is principal, hence normal; nothing to scan.
    let decision_bound = n - 1;
    let bound_used = opts.bound.map_or(decision_bound, |b| b.min(decision_bound));

    let mut report = NormalityReport {
        normal: false,
        verdict: NormalityVerdict::VerifiedUpTo,
        verified_up_to: 0,
        powers_checked: Vec::new(),
        failure_power: None,
        failure_witness: None,
        bound_used,
        decision_bound,
        timed_out: false,
        decision_rule: DECISION_RULE,
    };

    if ideal.is_unit() {
        // The unit ideal is normal by convention.
        report.normal = true;
        report.verdict = NormalityVerdict::Normal;
        report.verified_up_to = decision_bound;
        return Ok(report);
    }

    // Materialize the powers first (cheap next to the scans), then scan them
    // in parallel; each scan honors the deadline cooperatively. The verdict
    // walk below stays in ascending order, so the reported failure power and
    // verified prefix match what a sequential scan would say.
    let mut powers = Vec::with_capacity(bound_used);
    let mut power = ideal.clone();
    for t in 1..=bound_used {
        if t > 1 {
            power = power.product(ideal);
        }
        if let Some(deadline) = opts.deadline {
            if Instant::now() >= deadline {
                report.timed_out = true;
                break;
            }
        }
        powers.push((t, power.clone()));
    }

    let mut outcomes: Vec<(usize, ScanOutcome)> = powers
        .par_iter()
        .map(|(t, p)| {
            let scan = BoxScan::new(ideal, *t as u64, p, true, opts.deadline);
            (*t, scan.run().0)
        })
        .collect();
    outcomes.sort_by_key(|&(t, _)| t);

    for (t, outcome) in outcomes {
        match outcome {
            ScanOutcome::Closed => {
                report.powers_checked.push(PowerCheck { t, integrally_closed: true });
                report.verified_up_to = t;
            }
            ScanOutcome::Witness(w) => {
                report.powers_checked.push(PowerCheck { t, integrally_closed: false });
                report.failure_power = Some(t);
                report.failure_witness = Some(w);
                report.verdict = NormalityVerdict::NotNormal;
                return Ok(report);
            }
            ScanOutcome::TimedOut => {
                report.timed_out = true;
                break;
            }
        }
    }

    if report.verified_up_to >= decision_bound {
        report.normal = true;
        report.verdict = NormalityVerdict::Normal;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| Monomial::new(e.to_vec())).collect()).unwrap()
    }

    #[test]
    fn certificate_for_midpoint() {
        // xy ∈ closure (x^2, y^2) with weights (1/2, 1/2), witness k = 2.
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let cert = np_contains(&i, &Monomial::new(vec![1, 1])).unwrap().unwrap();
        assert_eq!(cert.power_witness, 2);
        assert!(certificate_checks(&i, &Monomial::new(vec![1, 1]), &cert));
        // x ∉ closure
        assert!(np_contains(&i, &Monomial::new(vec![1, 0])).unwrap().is_none());
    }

    #[test]
    fn trivial_membership_has_witness_one() {
        let i = ideal(2, &[&[1, 0]]);
        let cert = np_contains(&i, &Monomial::new(vec![1, 0])).unwrap().unwrap();
        assert_eq!(cert.power_witness, 1);
        assert!(certificate_checks(&i, &Monomial::new(vec![1, 0]), &cert));
    }

    #[test]
    fn closure_of_x2_y2_gains_xy() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let c = integral_closure(&i).unwrap();
        assert_eq!(c, ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        let (closed, witness) = is_integrally_closed(&i).unwrap();
        assert!(!closed);
        assert_eq!(witness, Some(Monomial::new(vec![1, 1])));
    }

    #[test]
    fn closure_of_x3_y3() {
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        let c = integral_closure(&i).unwrap();
        assert_eq!(c, ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]));
    }

    #[test]
    fn closure_is_idempotent() {
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        let c = integral_closure(&i).unwrap();
        assert_eq!(integral_closure(&c).unwrap(), c);
        let (closed, _) = is_integrally_closed(&c).unwrap();
        assert!(closed);
    }

    #[test]
    fn squarefree_complete_intersection_is_normal() {
        // (xy, z) is normal in 3 variables: powers 1 and 2 are closed.
        let i = ideal(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let report = is_normal(&i, &NormalityOptions::default()).unwrap();
        assert!(report.normal);
        assert_eq!(report.verified_up_to, 2);
        assert_eq!(report.powers_checked.len(), 2);
    }

    #[test]
    fn x2_y2_is_not_normal_with_witness() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let report = is_normal(&i, &NormalityOptions::default()).unwrap();
        assert!(!report.normal);
        assert_eq!(report.verdict, NormalityVerdict::NotNormal);
        assert_eq!(report.failure_power, Some(1));
        assert_eq!(report.failure_witness, Some(Monomial::new(vec![1, 1])));
    }

    #[test]
    fn partial_bound_reports_verified_up_to() {
        // (xyz normal-looking input, but restrict the bound): verdict must be
        // "verified up to", never "normal".
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let report = is_normal(&i, &NormalityOptions { bound: Some(1), deadline: None }).unwrap();
        assert!(!report.normal);
        assert_eq!(report.verdict, NormalityVerdict::VerifiedUpTo);
        assert_eq!(report.verified_up_to, 1);
        assert_eq!(report.bound_used, 1);
        assert_eq!(report.decision_bound, 3);
    }

    #[test]
    fn unit_ideal_is_normal_by_convention() {
        let report = is_normal(&MonomialIdeal::unit(3), &NormalityOptions::default()).unwrap();
        assert!(report.normal);
        let (closed, _) = is_integrally_closed(&MonomialIdeal::unit(3)).unwrap();
        assert!(closed);
    }

    #[test]
    fn one_variable_ideals_are_normal() {
        let i = ideal(1, &[&[4]]);
        let report = is_normal(&i, &NormalityOptions::default()).unwrap();
        assert!(report.normal);
        assert_eq!(report.bound_used, 0);
    }

    #[test]
    fn zero_ideal_rejected_everywhere() {
        let z = MonomialIdeal::zero(2);
        assert!(np_contains(&z, &Monomial::one(2)).is_err());
        assert!(integral_closure(&z).is_err());
        assert!(is_integrally_closed(&z).is_err());
        assert!(is_normal(&z, &NormalityOptions::default()).is_err());
    }
}
