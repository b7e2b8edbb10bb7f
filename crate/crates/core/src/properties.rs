//! Bounded verifiers for power-indexed ideal properties, and instance-level
//! validation of the normality-transfer constructions.
//!
//! Every verdict here has explicitly bounded semantics: a property is checked
//! for powers `k = 1..=K` and nothing is claimed beyond `K`.

use serde::{Deserialize, Serialize};

use crate::closure::{is_normal, NormalityOptions, NormalityReport};
use crate::decomp::{
    ass_supports, depth_zero, minimal_primes, symbolic_power, AssProfile, PowerAss,
};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{default_names, Exponent, Monomial};
use crate::prime::PrimeSupport;

/// Default power bound for the property checkers.
pub const DEFAULT_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Persistence,
    StrongPersistence,
    SymbolicStrongPersistence,
    NormallyTorsionFree,
    NearlyNormallyTorsionFree,
}

/// A power at which the property check failed, with re-checkable evidence.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyCounterexample {
    pub k: usize,
    pub evidence: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra_primes: Vec<PrimeSupport>,
}

/// Outcome of a bounded property check over powers `1..=bound`.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyVerdict {
    pub property: PropertyKind,
    pub holds: bool,
    /// Largest power through which the property was verified.
    pub holds_up_to: usize,
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<PropertyCounterexample>,
    /// Least power at which the single extra prime appears, for the nearly
    /// torsion-free pattern.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_prime_from: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_prime: Option<PrimeSupport>,
    pub notes: String,
}

fn proper_nonzero(ideal: &MonomialIdeal, op: &'static str) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal { op });
    }
    Ok(())
}

/// Checks `(I^{k+1} : I) = I^k` for `k = 1..=bound`.
pub fn strong_persistence(ideal: &MonomialIdeal, bound: usize) -> Result<PropertyVerdict> {
    proper_nonzero(ideal, "strong_persistence")?;
    assert!(bound >= 1, "power bound must be at least 1");
    let names = default_names(ideal.num_vars());
    let mut power = ideal.clone();
    let mut counterexample = None;
    let mut holds_up_to = 0;
    for k in 1..=bound {
        let next = power.product(ideal);
        let quotient = next.colon_ideal(ideal)?;
        if quotient != power {
            counterexample = Some(PropertyCounterexample {
                k,
                evidence: format!(
                    "(I^{} : I) = ({}) differs from I^{} = ({})",
                    k + 1,
                    quotient.render(&names),
                    k,
                    power.render(&names)
                ),
                extra_primes: vec![],
            });
            break;
        }
        holds_up_to = k;
        power = next;
    }
    Ok(PropertyVerdict {
        property: PropertyKind::StrongPersistence,
        holds: counterexample.is_none(),
        holds_up_to,
        bound,
        counterexample,
        extra_prime_from: None,
        extra_prime: None,
        notes: format!("checked (I^(k+1) : I) = I^k for k = 1..={bound}"),
    })
}

/// Checks `Ass(I^k) ⊆ Ass(I^{k+1})` along consecutive powers up to the bound.
pub fn persistence(ideal: &MonomialIdeal, bound: usize) -> Result<PropertyVerdict> {
    proper_nonzero(ideal, "persistence")?;
    assert!(bound >= 1, "power bound must be at least 1");
    let names = default_names(ideal.num_vars());
    let mut power = ideal.clone();
    let mut previous = ass_supports(ideal)?;
    let mut counterexample = None;
    let mut holds_up_to = 1;
    for k in 1..bound {
        power = power.product(ideal);
        let current = ass_supports(&power)?;
        let lost: Vec<PrimeSupport> = previous.difference(&current).cloned().collect();
        if !lost.is_empty() {
            let listed: Vec<String> = lost.iter().map(|p| p.render(&names)).collect();
            counterexample = Some(PropertyCounterexample {
                k,
                evidence: format!(
                    "associated primes {} of I^{} are not associated to I^{}",
                    listed.join(", "),
                    k,
                    k + 1
                ),
                extra_primes: lost,
            });
            break;
        }
        previous = current;
        holds_up_to = k + 1;
    }
    Ok(PropertyVerdict {
        property: PropertyKind::Persistence,
        holds: counterexample.is_none(),
        holds_up_to,
        bound,
        counterexample,
        extra_prime_from: None,
        extra_prime: None,
        notes: format!("checked Ass(I^k) ⊆ Ass(I^(k+1)) for k = 1..={}", bound.max(2) - 1),
    })
}

/// Checks `(I^(k+1) : I^(1)) = I^(k)` on symbolic powers, for `k = 1..=bound`.
/// Only squarefree ideals are in scope; the symbolic variant of persistence is
/// reported through this strong form.
pub fn symbolic_strong_persistence(ideal: &MonomialIdeal, bound: usize) -> Result<PropertyVerdict> {
    proper_nonzero(ideal, "symbolic_strong_persistence")?;
    assert!(bound >= 1, "power bound must be at least 1");
    let names = default_names(ideal.num_vars());
    let first = symbolic_power(ideal, 1)?;
    let mut current = first.clone();
    let mut counterexample = None;
    let mut holds_up_to = 0;
    for k in 1..=bound {
        let next = symbolic_power(ideal, k + 1)?;
        let quotient = next.colon_ideal(&first)?;
        if quotient != current {
            counterexample = Some(PropertyCounterexample {
                k,
                evidence: format!(
                    "(I^({}) : I^(1)) = ({}) differs from I^({}) = ({})",
                    k + 1,
                    quotient.render(&names),
                    k,
                    current.render(&names)
                ),
                extra_primes: vec![],
            });
            break;
        }
        holds_up_to = k;
        current = next;
    }
    Ok(PropertyVerdict {
        property: PropertyKind::SymbolicStrongPersistence,
        holds: counterexample.is_none(),
        holds_up_to,
        bound,
        counterexample,
        extra_prime_from: None,
        extra_prime: None,
        notes: format!("checked (I^(k+1) : I^(1)) = I^(k) for k = 1..={bound}"),
    })
}

/// Per-power extra primes `Ass(I^m) ∖ Min(I)` for `m = 1..=bound`.
pub fn extra_prime_table(
    ideal: &MonomialIdeal,
    bound: usize,
) -> Result<(Vec<Vec<PrimeSupport>>, std::collections::BTreeSet<PrimeSupport>)> {
    let minimal = minimal_primes(ideal)?;
    let mut table = Vec::with_capacity(bound);
    let mut power = MonomialIdeal::unit(ideal.num_vars());
    for _ in 1..=bound {
        power = power.product(ideal);
        let ass = ass_supports(&power)?;
        table.push(ass.difference(&minimal).cloned().collect());
    }
    Ok((table, minimal))
}

/// Checks `Ass(I^m) = Min(I)` for every `m = 1..=bound` (squarefree scope).
pub fn normally_torsion_free(ideal: &MonomialIdeal, bound: usize) -> Result<PropertyVerdict> {
    proper_nonzero(ideal, "normally_torsion_free")?;
    assert!(bound >= 2, "torsion-freedom checks need a bound of at least 2");
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree {
            op: "normally_torsion_free",
            gen: first_non_squarefree(ideal),
        });
    }
    let names = default_names(ideal.num_vars());
    let (table, _) = extra_prime_table(ideal, bound)?;
    let mut counterexample = None;
    let mut holds_up_to = 0;
    for (idx, extras) in table.iter().enumerate() {
        let m = idx + 1;
        if !extras.is_empty() {
            let listed: Vec<String> = extras.iter().map(|p| p.render(&names)).collect();
            counterexample = Some(PropertyCounterexample {
                k: m,
                evidence: format!(
                    "Ass(I^{}) gains {} beyond the minimal primes",
                    m,
                    listed.join(", ")
                ),
                extra_primes: extras.clone(),
            });
            break;
        }
        holds_up_to = m;
    }
    Ok(PropertyVerdict {
        property: PropertyKind::NormallyTorsionFree,
        holds: counterexample.is_none(),
        holds_up_to,
        bound,
        counterexample,
        extra_prime_from: None,
        extra_prime: None,
        notes: format!("checked Ass(I^m) = Min(I) for m = 1..={bound}"),
    })
}

/// Checks the nearly torsion-free pattern up to the bound: `Ass(I^m) = Min(I)`
/// below some threshold and `Ass(I^m) ⊆ Min(I) ∪ {p}` for one fixed prime `p`
/// from the threshold on. Reports the smallest threshold and `p` when found.
pub fn nearly_ntf(ideal: &MonomialIdeal, bound: usize) -> Result<PropertyVerdict> {
    proper_nonzero(ideal, "nearly_ntf")?;
    assert!(bound >= 2, "torsion-freedom checks need a bound of at least 2");
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree {
            op: "nearly_ntf",
            gen: first_non_squarefree(ideal),
        });
    }
    let names = default_names(ideal.num_vars());
    let (table, _) = extra_prime_table(ideal, bound)?;
    let mut extra: Option<(usize, PrimeSupport)> = None;
    let mut counterexample = None;
    let mut holds_up_to = 0;
    'scan: for (idx, extras) in table.iter().enumerate() {
        let m = idx + 1;
        for p in extras {
            match &extra {
                None => extra = Some((m, p.clone())),
                Some((_, fixed)) if fixed == p => {}
                Some((m0, fixed)) => {
                    counterexample = Some(PropertyCounterexample {
                        k: m,
                        evidence: format!(
                            "Ass(I^{}) gains {} while {} already entered at power {}; \
                             more than one extra prime",
                            m,
                            p.render(&names),
                            fixed.render(&names),
                            m0
                        ),
                        extra_primes: extras.clone(),
                    });
                    break 'scan;
                }
            }
        }
        holds_up_to = m;
    }
    let (extra_prime_from, extra_prime) = match (&counterexample, extra) {
        (None, Some((m, p))) => (Some(m), Some(p)),
        _ => (None, None),
    };
    let notes = match (&counterexample, &extra_prime) {
        (Some(_), _) => format!("pattern broken within m = 1..={bound}"),
        (None, Some(p)) => format!(
            "single extra prime {} from power {} on, within m = 1..={}",
            p.render(&names),
            extra_prime_from.unwrap(),
            bound
        ),
        (None, None) => format!("no extra prime up to m = {bound}; torsion-free so far"),
    };
    Ok(PropertyVerdict {
        property: PropertyKind::NearlyNormallyTorsionFree,
        holds: counterexample.is_none(),
        holds_up_to,
        bound,
        counterexample,
        extra_prime_from,
        extra_prime,
        notes,
    })
}

fn first_non_squarefree(ideal: &MonomialIdeal) -> Monomial {
    ideal
        .gens()
        .iter()
        .find(|g| !g.is_squarefree())
        .cloned()
        .unwrap_or_else(|| Monomial::one(ideal.num_vars()))
}

/// Associated primes of each power `I, I^2, …, I^K`, with the per-power socle
/// state and the minimal primes for reference.
pub fn ass_profile(ideal: &MonomialIdeal, bound: usize) -> Result<AssProfile> {
    proper_nonzero(ideal, "ass_profile")?;
    assert!(bound >= 1, "power bound must be at least 1");
    let mut per_power = Vec::with_capacity(bound);
    let mut power = MonomialIdeal::unit(ideal.num_vars());
    for k in 1..=bound {
        power = power.product(ideal);
        let primes: Vec<PrimeSupport> = ass_supports(&power)?.into_iter().collect();
        per_power.push(PowerAss {
            k,
            primes,
            depth_zero: depth_zero(&power)?,
        });
    }
    Ok(AssProfile {
        bound,
        per_power,
        min_primes: minimal_primes(ideal)?.into_iter().collect(),
    })
}

/// Least `k ≤ bound` whose power has the maximal ideal associated, if any.
pub fn depth_zero_onset(ideal: &MonomialIdeal, bound: usize) -> Result<Option<usize>> {
    proper_nonzero(ideal, "depth_zero_onset")?;
    assert!(bound >= 1, "power bound must be at least 1");
    let mut power = MonomialIdeal::unit(ideal.num_vars());
    for k in 1..=bound {
        power = power.product(ideal);
        if depth_zero(&power)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// The six normality-transfer constructions, with the inputs each one needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Criterion {
    /// `L = I + x_d^c·H`, with `I`, `H`, `I + H` normal and every generator
    /// avoiding the variable `d`.
    SumVariablePower {
        i: MonomialIdeal,
        h: MonomialIdeal,
        d: usize,
        c: Exponent,
    },
    /// `L = I + w·H` for a monomial `w` coprime to all generators.
    SumMonomial {
        i: MonomialIdeal,
        h: MonomialIdeal,
        multiplier: Monomial,
    },
    /// `L = I + J·H` with `I ⊆ H` normal, the generators of `J` pairwise
    /// coprime and coprime to those of `I` and `H`.
    SumCoprimeProduct {
        i: MonomialIdeal,
        h: MonomialIdeal,
        j: MonomialIdeal,
    },
    /// `L = I·S ∩ (x_n, x_{n+1}^ℓ)` in one more variable, for squarefree
    /// normal `I`.
    ExtendOneVariable { i: MonomialIdeal, ell: Exponent },
    /// `L = I·S ∩ (x_n, …, x_{n+m})` in `m` more variables, for squarefree
    /// normal `I`.
    ExtendManyVariables { i: MonomialIdeal, extra: usize },
    /// `L = I ∩ (x_{n−1}, x_n)` on the last two variables, for squarefree
    /// normal `I` with `I ∩ (x_{n−1}) + (I : x_n)` normal.
    IntersectLastTwo { i: MonomialIdeal },
}

/// Fieldless tags for the construction kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionKind {
    SumVariablePower,
    SumMonomial,
    SumCoprimeProduct,
    ExtendOneVariable,
    ExtendManyVariables,
    IntersectLastTwo,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 6] = [
        CriterionKind::SumVariablePower,
        CriterionKind::SumMonomial,
        CriterionKind::SumCoprimeProduct,
        CriterionKind::ExtendOneVariable,
        CriterionKind::ExtendManyVariables,
        CriterionKind::IntersectLastTwo,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CriterionKind::SumVariablePower => "sum-variable-power",
            CriterionKind::SumMonomial => "sum-monomial",
            CriterionKind::SumCoprimeProduct => "sum-coprime-product",
            CriterionKind::ExtendOneVariable => "extend-one-variable",
            CriterionKind::ExtendManyVariables => "extend-many-variables",
            CriterionKind::IntersectLastTwo => "intersect-last-two",
        }
    }
}

impl Criterion {
    pub fn kind(&self) -> CriterionKind {
        match self {
            Criterion::SumVariablePower { .. } => CriterionKind::SumVariablePower,
            Criterion::SumMonomial { .. } => CriterionKind::SumMonomial,
            Criterion::SumCoprimeProduct { .. } => CriterionKind::SumCoprimeProduct,
            Criterion::ExtendOneVariable { .. } => CriterionKind::ExtendOneVariable,
            Criterion::ExtendManyVariables { .. } => CriterionKind::ExtendManyVariables,
            Criterion::IntersectLastTwo { .. } => CriterionKind::IntersectLastTwo,
        }
    }
}

/// One mechanically validated hypothesis of a construction.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Hypothesis validation and conclusion check for one construction instance.
/// A failed hypothesis makes the instance inapplicable; the conclusion is then
/// not judged at all.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub kind: &'static str,
    pub hypotheses: Vec<HypothesisCheck>,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructed: Option<MonomialIdeal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<NormalityReport>,
}

fn normality_hypothesis(
    name: &'static str,
    ideal: &MonomialIdeal,
    deadline: &NormalityOptions,
) -> Result<HypothesisCheck> {
    // Hypotheses get the full decision bound regardless of the caller's
    // conclusion bound; only the deadline is shared.
    let opts = NormalityOptions {
        bound: None,
        deadline: deadline.deadline,
    };
    let report = is_normal(ideal, &opts)?;
    let detail = if report.normal {
        format!("normal (all powers to {} closed)", report.decision_bound)
    } else if report.timed_out {
        format!("undecided: timed out after power {}", report.verified_up_to)
    } else {
        format!(
            "power {} is not integrally closed",
            report.failure_power.unwrap_or(0)
        )
    };
    Ok(HypothesisCheck {
        name,
        holds: report.normal,
        detail,
    })
}

fn coprime_hypothesis(
    name: &'static str,
    gens: &[&MonomialIdeal],
    with: &Monomial,
    names: &[String],
) -> HypothesisCheck {
    let offender = gens
        .iter()
        .flat_map(|i| i.gens())
        .find(|g| !g.is_coprime_with(with));
    HypothesisCheck {
        name,
        holds: offender.is_none(),
        detail: match offender {
            None => "all generators coprime".into(),
            Some(g) => format!("generator {} shares a variable with {}", g.render(names), with.render(names)),
        },
    }
}

/// Validates every hypothesis of the construction, builds `L`, and, when all
/// hypotheses hold, runs the bounded normality check on `L` with the caller's
/// options. Structural problems (dimension mismatches, out-of-range variables,
/// zero inputs) are errors; mathematical hypothesis failures are reported.
pub fn verify_criterion(criterion: &Criterion, opts: &NormalityOptions) -> Result<CriterionReport> {
    let mut hypotheses = Vec::new();
    let constructed: MonomialIdeal;
    match criterion {
        Criterion::SumVariablePower { i, h, d, c } => {
            let n = i.num_vars();
            if h.num_vars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: h.num_vars() });
            }
            if *d >= n {
                return Err(Error::VariableOutOfRange { index: *d + 1, n });
            }
            if *c == 0 {
                return Err(Error::Invalid("the exponent c must be positive".into()));
            }
            proper_nonzero_input(i)?;
            proper_nonzero_input(h)?;
            let names = default_names(n);
            hypotheses.push(normality_hypothesis("I is normal", i, opts)?);
            hypotheses.push(normality_hypothesis("H is normal", h, opts)?);
            hypotheses.push(normality_hypothesis("I + H is normal", &i.sum(h), opts)?);
            let var = Monomial::variable(*d, n);
            hypotheses.push(coprime_hypothesis(
                "generators avoid the chosen variable",
                &[i, h],
                &var,
                &names,
            ));
            constructed = i.sum(&h.product(&principal(var.pow(*c))?));
        }
        Criterion::SumMonomial { i, h, multiplier } => {
            let n = i.num_vars();
            if h.num_vars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: h.num_vars() });
            }
            if multiplier.num_vars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: multiplier.num_vars() });
            }
            proper_nonzero_input(i)?;
            proper_nonzero_input(h)?;
            let names = default_names(n);
            hypotheses.push(normality_hypothesis("I is normal", i, opts)?);
            hypotheses.push(normality_hypothesis("H is normal", h, opts)?);
            hypotheses.push(normality_hypothesis("I + H is normal", &i.sum(h), opts)?);
            hypotheses.push(coprime_hypothesis(
                "generators coprime to the multiplier",
                &[i, h],
                multiplier,
                &names,
            ));
            constructed = i.sum(&h.product(&principal(multiplier.clone())?));
        }
        Criterion::SumCoprimeProduct { i, h, j } => {
            let n = i.num_vars();
            for other in [h, j] {
                if other.num_vars() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: other.num_vars() });
                }
            }
            proper_nonzero_input(i)?;
            proper_nonzero_input(h)?;
            let names = default_names(n);
            hypotheses.push(HypothesisCheck {
                name: "I is contained in H",
                holds: h.contains_ideal(i),
                detail: String::new(),
            });
            hypotheses.push(normality_hypothesis("I is normal", i, opts)?);
            hypotheses.push(normality_hypothesis("H is normal", h, opts)?);
            let pairwise = j
                .gens()
                .iter()
                .enumerate()
                .flat_map(|(a, u)| j.gens()[a + 1..].iter().map(move |v| (u, v)))
                .find(|(u, v)| !u.is_coprime_with(v));
            hypotheses.push(HypothesisCheck {
                name: "generators of J pairwise coprime",
                holds: pairwise.is_none(),
                detail: match pairwise {
                    None => String::new(),
                    Some((u, v)) => format!(
                        "{} and {} share a variable",
                        u.render(&names),
                        v.render(&names)
                    ),
                },
            });
            let cross = j
                .gens()
                .iter()
                .find_map(|v| {
                    [i, h]
                        .iter()
                        .flat_map(|x| x.gens())
                        .find(|u| !u.is_coprime_with(v))
                        .map(|u| (u.clone(), v.clone()))
                });
            hypotheses.push(HypothesisCheck {
                name: "J coprime to I and H",
                holds: cross.is_none(),
                detail: match cross {
                    None => String::new(),
                    Some((u, v)) => format!(
                        "{} and {} share a variable",
                        u.render(&names),
                        v.render(&names)
                    ),
                },
            });
            constructed = i.sum(&j.product(h));
        }
        Criterion::ExtendOneVariable { i, ell } => {
            if *ell == 0 {
                return Err(Error::Invalid("the exponent ℓ must be positive".into()));
            }
            proper_nonzero_input(i)?;
            let n = i.num_vars();
            hypotheses.push(squarefree_hypothesis(i));
            hypotheses.push(normality_hypothesis("I is normal", i, opts)?);
            let mut corner = vec![0 as Exponent; n + 1];
            corner[n - 1] = 1;
            let mut new_var = vec![0 as Exponent; n + 1];
            new_var[n] = *ell;
            let pair = MonomialIdeal::new(
                n + 1,
                vec![Monomial::new(corner), Monomial::new(new_var)],
            )?;
            constructed = i.extend_to(n + 1).intersect(&pair);
        }
        Criterion::ExtendManyVariables { i, extra } => {
            if *extra == 0 {
                return Err(Error::Invalid("at least one new variable is required".into()));
            }
            proper_nonzero_input(i)?;
            let n = i.num_vars();
            hypotheses.push(squarefree_hypothesis(i));
            hypotheses.push(normality_hypothesis("I is normal", i, opts)?);
            let tail = PrimeSupport::new(n - 1..n + extra)?.expand(n + extra)?;
            constructed = i.extend_to(n + extra).intersect(&tail);
        }
        Criterion::IntersectLastTwo { i } => {
            proper_nonzero_input(i)?;
            let n = i.num_vars();
            if n < 2 {
                return Err(Error::Invalid(
                    "the construction needs at least two variables".into(),
                ));
            }
            hypotheses.push(squarefree_hypothesis(i));
            hypotheses.push(normality_hypothesis("I is normal", i, opts)?);
            let second_last = Monomial::variable(n - 2, n);
            let last = Monomial::variable(n - 1, n);
            let aux = i.intersect(&principal(second_last)?).sum(&i.colon(&last));
            hypotheses.push(normality_hypothesis(
                "I ∩ (second-last variable) + (I : last variable) is normal",
                &aux,
                opts,
            )?);
            constructed = i.intersect(&PrimeSupport::new(n - 2..n)?.expand(n)?);
        }
    }
    let applicable = hypotheses.iter().all(|h| h.holds);
    let conclusion = if applicable {
        Some(is_normal(&constructed, opts)?)
    } else {
        None
    };
    Ok(CriterionReport {
        kind: criterion.kind().name(),
        hypotheses,
        applicable,
        constructed: Some(constructed),
        conclusion,
    })
}

fn proper_nonzero_input(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "verify_criterion" });
    }
    Ok(())
}

fn squarefree_hypothesis(ideal: &MonomialIdeal) -> HypothesisCheck {
    let holds = ideal.is_squarefree();
    HypothesisCheck {
        name: "I is squarefree",
        holds,
        detail: if holds {
            String::new()
        } else {
            format!(
                "generator {} has an exponent above 1",
                first_non_squarefree(ideal).render(&default_names(ideal.num_vars()))
            )
        },
    }
}

fn principal(m: Monomial) -> Result<MonomialIdeal> {
    let n = m.num_vars();
    MonomialIdeal::new(n, vec![m])
}

/// Seeded instance generation for the construction suites. The ingredient
/// ideals come from families whose normality is cheap to certify: monomial
/// primes, principal ideals, and products of primes on disjoint variable
/// blocks.
pub mod generate {
    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::{Criterion, CriterionKind};
    use crate::ideal::MonomialIdeal;
    use crate::monomial::{Exponent, Monomial};
    use crate::prime::PrimeSupport;

    /// Random ideal over `n` variables from the cheaply-normal families, using
    /// only variables outside `avoid`.
    pub fn random_normal_ideal<R: Rng>(
        rng: &mut R,
        n: usize,
        squarefree: bool,
        avoid: &[usize],
    ) -> MonomialIdeal {
        let pool: Vec<usize> = (0..n).filter(|v| !avoid.contains(v)).collect();
        assert!(!pool.is_empty(), "no variables left to build an ideal from");
        let max_exp: Exponent = if squarefree { 1 } else { 2 };
        match rng.gen_range(0..3u8) {
            // A monomial prime on a random nonempty subset of the pool.
            0 => {
                let size = rng.gen_range(1..=pool.len());
                let mut vars = pool.clone();
                vars.shuffle(rng);
                PrimeSupport::new(vars.into_iter().take(size))
                    .expect("nonempty subset")
                    .expand(n)
                    .expect("variables in range")
            }
            // A principal ideal.
            1 => {
                let mut exps = vec![0 as Exponent; n];
                for &v in &pool {
                    if rng.gen_bool(0.5) {
                        exps[v] = rng.gen_range(1..=max_exp);
                    }
                }
                if exps.iter().all(|&e| e == 0) {
                    exps[pool[rng.gen_range(0..pool.len())]] = 1;
                }
                MonomialIdeal::new(n, vec![Monomial::new(exps)]).expect("dimensions agree")
            }
            // A product of primes on disjoint variable blocks.
            _ => {
                let mut vars = pool.clone();
                vars.shuffle(rng);
                let blocks = rng.gen_range(1..=vars.len().min(3));
                let mut product = MonomialIdeal::unit(n);
                for chunk in vars.chunks(vars.len().div_ceil(blocks)) {
                    let prime = PrimeSupport::new(chunk.iter().copied())
                        .expect("nonempty chunk")
                        .expand(n)
                        .expect("variables in range");
                    product = product.product(&prime);
                }
                product
            }
        }
    }

    fn random_monomial_on<R: Rng>(
        rng: &mut R,
        n: usize,
        vars: &[usize],
        max_exp: Exponent,
    ) -> Monomial {
        let mut exps = vec![0 as Exponent; n];
        for &v in vars {
            if rng.gen_bool(0.6) {
                exps[v] = rng.gen_range(1..=max_exp);
            }
        }
        if exps.iter().all(|&e| e == 0) && !vars.is_empty() {
            exps[vars[rng.gen_range(0..vars.len())]] = 1;
        }
        Monomial::new(exps)
    }

    /// Draws one instance of the given construction kind over at most five
    /// variables. Hypothesis validity is likely but not guaranteed; callers
    /// filter with `verify_criterion`.
    pub fn random_instance<R: Rng>(rng: &mut R, kind: CriterionKind) -> Criterion {
        match kind {
            // The sum constructions keep the coprime factor squarefree (c = 1,
            // squarefree multiplier and J): a square there can defeat integral
            // closedness of the sum even when every hypothesis holds, because
            // closure may interpolate a fractional number of factors. See
            // `sum_with_squared_coprime_factor_can_lose_closedness`.
            CriterionKind::SumVariablePower => {
                let n = rng.gen_range(3..=5);
                let d = rng.gen_range(0..n);
                let i = random_normal_ideal(rng, n, false, &[d]);
                let h = random_normal_ideal(rng, n, false, &[d]);
                Criterion::SumVariablePower { i, h, d, c: 1 }
            }
            CriterionKind::SumMonomial => {
                let n = rng.gen_range(3..=5);
                let mut vars: Vec<usize> = (0..n).collect();
                vars.shuffle(rng);
                let (mult_vars, rest) = vars.split_at(rng.gen_range(1..n));
                let i = random_normal_ideal(rng, n, false, mult_vars);
                let h = random_normal_ideal(rng, n, false, mult_vars);
                let _ = rest;
                Criterion::SumMonomial {
                    i,
                    h,
                    multiplier: random_monomial_on(rng, n, mult_vars, 1),
                }
            }
            CriterionKind::SumCoprimeProduct => {
                let n = rng.gen_range(3..=5);
                let mut vars: Vec<usize> = (0..n).collect();
                vars.shuffle(rng);
                let (j_vars, ih_vars) = vars.split_at(rng.gen_range(1..n));
                let h = random_normal_ideal(rng, n, false, j_vars);
                // Either I = H, or I = uH for a squarefree u supported away
                // from H so that I stays squarefree and normal.
                let h_support: Vec<usize> =
                    h.gens().iter().flat_map(|g| g.support()).collect();
                let u_vars: Vec<usize> = ih_vars
                    .iter()
                    .copied()
                    .filter(|v| !h_support.contains(v))
                    .collect();
                let i = if u_vars.is_empty() || rng.gen_bool(0.5) {
                    h.clone()
                } else {
                    let u = random_monomial_on(rng, n, &u_vars, 1);
                    h.product(&MonomialIdeal::new(n, vec![u]).expect("dimensions agree"))
                };
                // One or two generators on disjoint slices of the J variables.
                let split = rng.gen_range(1..=j_vars.len());
                let mut j_gens = vec![random_monomial_on(rng, n, &j_vars[..split], 1)];
                if split < j_vars.len() && rng.gen_bool(0.7) {
                    j_gens.push(random_monomial_on(rng, n, &j_vars[split..], 1));
                }
                let j = MonomialIdeal::new(n, j_gens).expect("dimensions agree");
                Criterion::SumCoprimeProduct { i, h, j }
            }
            CriterionKind::ExtendOneVariable => {
                let n = rng.gen_range(2..=4);
                Criterion::ExtendOneVariable {
                    i: random_normal_ideal(rng, n, true, &[]),
                    ell: rng.gen_range(1..=3),
                }
            }
            CriterionKind::ExtendManyVariables => {
                let n = rng.gen_range(2..=3);
                let extra = rng.gen_range(1..=5 - n);
                Criterion::ExtendManyVariables {
                    i: random_normal_ideal(rng, n, true, &[]),
                    extra,
                }
            }
            CriterionKind::IntersectLastTwo => {
                let n = rng.gen_range(3..=5);
                Criterion::IntersectLastTwo {
                    i: random_normal_ideal(rng, n, true, &[]),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_bipartite, cycle, di_ideal, ni_ideal};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| Monomial::new(e.to_vec())).collect()).unwrap()
    }

    #[test]
    fn strong_persistence_examples() {
        let ni = ni_ideal(&complete_bipartite(2, 2).unwrap());
        let verdict = strong_persistence(&ni, 4).unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.holds_up_to, 4);

        let principal = ideal(2, &[&[1, 0]]);
        assert!(strong_persistence(&principal, 4).unwrap().holds);

        let di = di_ideal(&cycle(5).unwrap()).unwrap();
        assert!(strong_persistence(&di, 4).unwrap().holds);
    }

    #[test]
    fn persistence_examples() {
        let ni = ni_ideal(&complete_bipartite(2, 3).unwrap());
        let verdict = persistence(&ni, 4).unwrap();
        assert!(verdict.holds);

        let prime = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(persistence(&prime, 4).unwrap().holds);
    }

    #[test]
    fn persistence_matches_ass_profile() {
        let ni = ni_ideal(&complete_bipartite(2, 3).unwrap());
        let profile = ass_profile(&ni, 4).unwrap();
        let ascending = profile.per_power.windows(2).all(|w| {
            let ass_k: std::collections::BTreeSet<_> = w[0].primes.iter().collect();
            w[1].primes.iter().collect::<std::collections::BTreeSet<_>>().is_superset(&ass_k)
        });
        assert_eq!(ascending, persistence(&ni, 4).unwrap().holds);
        // The maximal ideal enters at power 3 and stays.
        let full = PrimeSupport::maximal(5);
        assert!(!profile.per_power[0].primes.contains(&full));
        assert!(!profile.per_power[1].primes.contains(&full));
        assert!(profile.per_power[2].primes.contains(&full));
        assert!(profile.per_power[3].primes.contains(&full));
    }

    #[test]
    fn symbolic_strong_persistence_examples() {
        let di = di_ideal(&cycle(5).unwrap()).unwrap();
        assert!(symbolic_strong_persistence(&di, 3).unwrap().holds);

        let prime = ideal(2, &[&[1, 0], &[0, 1]]);
        assert!(symbolic_strong_persistence(&prime, 3).unwrap().holds);

        let triangle = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let verdict = symbolic_strong_persistence(&triangle, 2).unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.holds_up_to, 2);

        let not_squarefree = ideal(2, &[&[2, 0]]);
        assert!(symbolic_strong_persistence(&not_squarefree, 2).is_err());
    }

    #[test]
    fn torsion_free_examples() {
        let principal = ideal(2, &[&[1, 1]]);
        let verdict = normally_torsion_free(&principal, 4).unwrap();
        assert!(verdict.holds);

        // Five embedded primes appear already at the second power; the
        // irrelevant ideal itself only joins at the third.
        let ni = ni_ideal(&complete_bipartite(2, 3).unwrap());
        let verdict = normally_torsion_free(&ni, 4).unwrap();
        assert!(!verdict.holds);
        let ce = verdict.counterexample.unwrap();
        assert_eq!(ce.k, 2);
        let p = |vs: &[usize]| PrimeSupport::new(vs.iter().copied()).unwrap();
        assert_eq!(
            ce.extra_primes,
            vec![p(&[0, 1, 2]), p(&[0, 1, 3]), p(&[0, 1, 4]), p(&[0, 2, 3, 4]), p(&[1, 2, 3, 4])]
        );
        // Re-validate directly: the irrelevant ideal is absent at power 2 and
        // present at power 3.
        assert!(!ass_supports(&ni.power(2)).unwrap().contains(&PrimeSupport::maximal(5)));
        assert!(ass_supports(&ni.power(3)).unwrap().contains(&PrimeSupport::maximal(5)));
    }

    #[test]
    fn nearly_torsion_free_examples() {
        let di = di_ideal(&complete_bipartite(2, 2).unwrap()).unwrap();
        let verdict = nearly_ntf(&di, 4).unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.extra_prime_from, Some(2));
        assert_eq!(verdict.extra_prime, Some(PrimeSupport::maximal(4)));
        // Equality with the minimal primes at the first power is automatic for
        // squarefree ideals.
        let (table, _) = extra_prime_table(&di, 1).unwrap();
        assert!(table[0].is_empty());

        // The neighborhood ideal gains five distinct embedded primes at the
        // second power, so no single-extra-prime pattern can hold.
        let ni = ni_ideal(&complete_bipartite(2, 3).unwrap());
        let verdict = nearly_ntf(&ni, 4).unwrap();
        assert!(!verdict.holds);
        let ce = verdict.counterexample.unwrap();
        assert_eq!(ce.k, 2);
        assert_eq!(ce.extra_primes.len(), 5);
    }

    #[test]
    fn depth_zero_onset_examples() {
        let ni = ni_ideal(&complete_bipartite(2, 3).unwrap());
        assert_eq!(depth_zero_onset(&ni, 4).unwrap(), Some(3));

        let triangle = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(depth_zero_onset(&triangle, 4).unwrap(), Some(2));

        // A monomial prime short of the irrelevant ideal never reaches it.
        let prime = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(depth_zero_onset(&prime, 4).unwrap(), None);

        // In its own two-variable ring, (x, y) is the irrelevant ideal, so
        // depth drops to zero from the first power.
        let irrelevant = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(depth_zero_onset(&irrelevant, 4).unwrap(), Some(1));
    }

    #[test]
    fn implication_chain_on_a_normal_ideal() {
        // A normal squarefree ideal satisfies the whole chain.
        let di = di_ideal(&cycle(4).unwrap()).unwrap();
        let normal = is_normal(&di, &NormalityOptions::default()).unwrap();
        assert!(normal.normal);
        assert!(strong_persistence(&di, 3).unwrap().holds);
        assert!(persistence(&di, 3).unwrap().holds);
        assert!(symbolic_strong_persistence(&di, 2).unwrap().holds);
    }

    #[test]
    fn criterion_reconstructs_bipartite_neighborhood_ideal() {
        // I = f·(x2), H = (f, x2·x3, x2·x4, x2·x5) with f = x3x4x5; then
        // I + x1·H is the neighborhood ideal of the complete bipartite graph.
        let i = ideal(5, &[&[0, 1, 1, 1, 1]]);
        let h = ideal(
            5,
            &[&[0, 0, 1, 1, 1], &[0, 1, 1, 0, 0], &[0, 1, 0, 1, 0], &[0, 1, 0, 0, 1]],
        );
        let criterion = Criterion::SumVariablePower { i, h, d: 0, c: 1 };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(report.applicable, "hypotheses: {:?}", report.hypotheses);
        assert_eq!(
            report.constructed.as_ref().unwrap(),
            &ni_ideal(&complete_bipartite(2, 3).unwrap())
        );
        assert!(report.conclusion.unwrap().normal);
    }

    #[test]
    fn criterion_trivial_and_extension_examples() {
        // L = (y) + x²·(y) = (y).
        let criterion = Criterion::SumVariablePower {
            i: ideal(2, &[&[0, 1]]),
            h: ideal(2, &[&[0, 1]]),
            d: 0,
            c: 2,
        };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(report.applicable);
        assert_eq!(report.constructed.unwrap(), ideal(2, &[&[0, 1]]));
        assert!(report.conclusion.unwrap().normal);

        // L = (x1x2)·S ∩ (x2, x3²) stays (x1x2), which is normal.
        let criterion = Criterion::ExtendOneVariable { i: ideal(2, &[&[1, 1]]), ell: 2 };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(report.applicable);
        assert_eq!(report.constructed.unwrap(), ideal(3, &[&[1, 1, 0]]));
        assert!(report.conclusion.unwrap().normal);
    }

    #[test]
    fn sum_with_squared_coprime_factor_can_lose_closedness() {
        // Every hypothesis of the sum construction holds here, yet with c = 2
        // the result is not normal: the closure of L^2 picks up a monomial
        // whose x1-degree sits strictly between two multiples of c, something
        // no product of generators can produce. This is why the random
        // generator keeps the coprime factor squarefree.
        let i = ideal(4, &[&[0, 1, 1, 1]]);
        let h = ideal(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let criterion = Criterion::SumVariablePower { i, h, d: 0, c: 2 };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(report.applicable, "hypotheses all hold: {:?}", report.hypotheses);
        let conclusion = report.conclusion.unwrap();
        assert!(!conclusion.normal);
        assert_eq!(conclusion.failure_power, Some(2));
        // w = x1^3 x2x3x4 lies outside L^2, but w^2 is exactly the product of
        // the four generators of L, so w is integral over L^2.
        let l = report.constructed.unwrap();
        let w = Monomial::new(vec![3, 1, 1, 1]);
        assert_eq!(conclusion.failure_witness, Some(w.clone()));
        assert!(!l.power(2).contains(&w));
        assert!(crate::oracle::power_membership(&l.power(2), &w, 2));

        // The same mechanism with the square inside a summand instead.
        let i = ideal(4, &[&[1, 2, 1, 0]]);
        let h = ideal(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let criterion = Criterion::SumVariablePower { i, h, d: 3, c: 2 };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(report.applicable);
        let conclusion = report.conclusion.unwrap();
        assert!(!conclusion.normal);
        assert_eq!(conclusion.failure_power, Some(1));
        let w = Monomial::new(vec![1, 1, 1, 1]);
        assert_eq!(conclusion.failure_witness, Some(w.clone()));
        let l = report.constructed.unwrap();
        assert!(!l.contains(&w));
        assert!(crate::oracle::power_membership(&l, &w, 2));
    }

    #[test]
    fn sum_with_coprime_variable_multiplier_can_lose_normality() {
        // A multiplier of bare degree 1 is not safe either: here every
        // hypothesis of the monomial-multiplier sum holds — I, H, and
        // I + H = H normal, multiplier x1 coprime to all generators — yet
        // L is the closed neighborhood ideal of the complete bipartite graph
        // on 3+3 vertices and is not normal. All generators of L have degree
        // 4, so the all-twos monomial w (degree 12) could only sit in L^3 as
        // an exact product of three generators, and the row/column structure
        // forces a fractional split; but w^2 is precisely the product of all
        // six generators, so w is integral over L^3.
        let i = ideal(6, &[&[0, 1, 0, 1, 1, 1], &[0, 0, 1, 1, 1, 1]]);
        let h = ideal(
            6,
            &[
                &[0, 0, 0, 1, 1, 1],
                &[0, 1, 1, 1, 0, 0],
                &[0, 1, 1, 0, 1, 0],
                &[0, 1, 1, 0, 0, 1],
            ],
        );
        let criterion = Criterion::SumMonomial {
            i,
            h,
            multiplier: Monomial::variable(0, 6),
        };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(report.applicable, "hypotheses all hold: {:?}", report.hypotheses);
        let l = report.constructed.unwrap();
        assert_eq!(l, ni_ideal(&complete_bipartite(3, 3).unwrap()));
        let conclusion = report.conclusion.unwrap();
        assert!(!conclusion.normal);
        assert_eq!(conclusion.failure_power, Some(3));
        let w = Monomial::new(vec![2; 6]);
        assert_eq!(conclusion.failure_witness, Some(w.clone()));
        let l3 = l.power(3);
        assert!(!l3.contains(&w));
        assert!(crate::oracle::power_membership(&l3, &w, 2));
        let product = l.gens().iter().fold(Monomial::one(6), |acc, g| acc.mul(g));
        assert_eq!(product, w.pow(2));
    }

    #[test]
    fn criterion_hypothesis_failure_is_inapplicable() {
        // A generator of H touches the chosen variable, breaking the
        // coprimality hypothesis; no conclusion may be drawn.
        let criterion = Criterion::SumVariablePower {
            i: ideal(2, &[&[0, 1]]),
            h: ideal(2, &[&[1, 0]]),
            d: 0,
            c: 1,
        };
        let report = verify_criterion(&criterion, &NormalityOptions::default()).unwrap();
        assert!(!report.applicable);
        assert!(report.conclusion.is_none());
        assert!(report.hypotheses.iter().any(|h| !h.holds));
    }

    #[test]
    fn criterion_structural_errors() {
        let mismatched = Criterion::SumMonomial {
            i: ideal(2, &[&[0, 1]]),
            h: ideal(3, &[&[1, 0, 0]]),
            multiplier: Monomial::one(2),
        };
        assert!(verify_criterion(&mismatched, &NormalityOptions::default()).is_err());

        let zero_exponent = Criterion::ExtendOneVariable { i: ideal(2, &[&[1, 1]]), ell: 0 };
        assert!(verify_criterion(&zero_exponent, &NormalityOptions::default()).is_err());
    }

    #[test]
    fn random_instances_are_mostly_applicable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in CriterionKind::ALL {
            let mut applicable = 0;
            for _ in 0..8 {
                let instance = generate::random_instance(&mut rng, kind);
                let report = verify_criterion(&instance, &NormalityOptions::default()).unwrap();
                if report.applicable {
                    applicable += 1;
                    assert!(
                        report.conclusion.unwrap().normal,
                        "constructed ideal not normal for kind {}",
                        kind.name()
                    );
                }
            }
            assert!(applicable > 0, "no applicable instance for kind {}", kind.name());
        }
    }
}
