//! Primary decomposition data for monomial ideals: irreducible decomposition
//! by recursive generator splitting, associated primes by exact localization
//! with verified colon witnesses, minimal primes, symbolic powers of
//! squarefree ideals, and the depth-zero (socle) test.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exponent, Monomial};
use crate::prime::PrimeSupport;

/// An irreducible monomial ideal `(x_i^{a_i} : i ∈ S)`, stored as the map
/// from variable index to positive exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IrreducibleComponent {
    pub powers: BTreeMap<usize, Exponent>,
}

impl IrreducibleComponent {
    pub fn support(&self) -> PrimeSupport {
        PrimeSupport::new(self.powers.keys().copied()).expect("components are never empty")
    }

    pub fn expand(&self, n: usize) -> MonomialIdeal {
        let gens = self
            .powers
            .iter()
            .map(|(&i, &a)| {
                let mut e = vec![0; n];
                e[i] = a;
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal::from_candidates(n, gens)
    }

    /// Ideal containment against another irreducible component.
    fn contained_in(&self, other: &IrreducibleComponent) -> bool {
        self.powers.iter().all(|(v, a)| other.powers.get(v).is_some_and(|b| b <= a))
    }
}

/// Irredundant irreducible decomposition by recursive generator splitting:
/// pick the first mixed generator in canonical order, split on its
/// highest-exponent variable, and intersect the two refined ideals. The
/// result is the unique irredundant decomposition, canonically sorted.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "irreducible_decomposition" });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal { op: "irreducible_decomposition" });
    }
    let mut memo: HashMap<MonomialIdeal, BTreeSet<IrreducibleComponent>> = HashMap::new();
    let components = split(ideal, &mut memo);

    // Drop any component containing another; what remains is irredundant
    // because an irreducible monomial ideal containing an intersection
    // contains one of the factors.
    let list: Vec<&IrreducibleComponent> = components.iter().collect();
    let mut kept = Vec::new();
    for (i, c) in list.iter().enumerate() {
        let redundant =
            list.iter().enumerate().any(|(j, other)| i != j && other.contained_in(c));
        if !redundant {
            kept.push((*c).clone());
        }
    }
    Ok(kept)
}

fn split(
    ideal: &MonomialIdeal,
    memo: &mut HashMap<MonomialIdeal, BTreeSet<IrreducibleComponent>>,
) -> BTreeSet<IrreducibleComponent> {
    if let Some(cached) = memo.get(ideal) {
        return cached.clone();
    }
    let mixed = ideal.gens().iter().find(|g| g.support().len() >= 2);
    let result = match mixed {
        None => {
            // Every generator is a pure power of a distinct variable.
            let powers =
                ideal.gens().iter().map(|g| {
                    let v = g.support()[0];
                    (v, g.exponents[v])
                }).collect();
            BTreeSet::from([IrreducibleComponent { powers }])
        }
        Some(u) => {
            let support = u.support();
            // Highest exponent wins; ties go to the lowest variable index.
            let &i = support
                .iter()
                .max_by_key(|&&v| (u.exponents[v], std::cmp::Reverse(v)))
                .expect("mixed generator has nonempty support");
            let mut left_gen = vec![0; ideal.num_vars()];
            left_gen[i] = u.exponents[i];
            let mut right_gen = u.exponents.clone();
            right_gen[i] = 0;
            let attach = |extra: Vec<Exponent>| {
                let mut gens: Vec<Monomial> = ideal.gens().to_vec();
                gens.push(Monomial::new(extra));
                MonomialIdeal::from_candidates(ideal.num_vars(), gens)
            };
            let mut out = split(&attach(left_gen), memo);
            out.extend(split(&attach(right_gen), memo));
            out
        }
    };
    memo.insert(ideal.clone(), result.clone());
    result
}

/// How an associated-prime witness was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessPath {
    /// Socle element of the localized ideal, lifted by the localizing monomial.
    SocleLift,
    /// Exhaustive search over the exponent box.
    BoxSearch,
}

/// An associated prime together with its verified colon witness.
#[derive(Debug, Clone, Serialize)]
pub struct AssPrime {
    pub support: PrimeSupport,
    /// Monomial v with (I : v) equal to the prime, re-verified exactly.
    pub witness: Monomial,
    pub witness_path: WitnessPath,
}

/// Associated primes of R/I for a proper nonzero monomial ideal.
///
/// A prime p_S is associated iff, after localizing at S (colon by the other
/// variables at their maximal exponents), the socle test
/// (J_S : m_S) != J_S succeeds; the socle element lifts to a witness v with
/// (I : v) = p_S, which is verified before being reported.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<Vec<AssPrime>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "associated_primes" });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal { op: "associated_primes" });
    }
    let n = ideal.num_vars();
    let support = ideal.support();
    let max_exp = ideal.max_exponents();
    let gen_supports: Vec<Vec<usize>> = ideal.gens().iter().map(|g| g.support()).collect();

    let mut out = Vec::new();
    for subset in support.iter().copied().powerset() {
        if subset.is_empty() {
            continue;
        }
        // p_S ⊇ I iff S meets the support of every generator.
        let meets_all = gen_supports
            .iter()
            .all(|gs| gs.iter().any(|v| subset.contains(v)));
        if !meets_all {
            continue;
        }
        let mut lift_exps = vec![0; n];
        for j in 0..n {
            if !subset.contains(&j) {
                lift_exps[j] = max_exp[j];
            }
        }
        let lift = Monomial::new(lift_exps);
        let localized = ideal.colon(&lift);
        if localized.is_unit() {
            continue; // the whole ideal became trivial after localizing
        }
        let prime = PrimeSupport::new(subset.iter().copied()).expect("subset is nonempty");
        let prime_ideal = prime.expand(n)?;
        let socle = localized.colon_ideal(&prime_ideal)?;
        if socle == localized {
            continue; // no socle in the localization: not associated
        }
        let socle_gen = socle
            .gens()
            .iter()
            .find(|g| !localized.contains(g))
            .expect("a strictly larger colon has a generator outside the ideal");
        let witness = socle_gen.mul(&lift);
        if ideal.colon(&witness) == prime_ideal {
            out.push(AssPrime { support: prime, witness, witness_path: WitnessPath::SocleLift });
        } else {
            // Defensive fallback; the socle lift is expected to verify.
            let witness = box_search_witness(ideal, &prime_ideal)
                .expect("socle test succeeded but no witness exists (internal error)");
            out.push(AssPrime { support: prime, witness, witness_path: WitnessPath::BoxSearch });
        }
    }
    out.sort_by(|a, b| a.support.cmp(&b.support));
    Ok(out)
}

fn box_search_witness(ideal: &MonomialIdeal, prime_ideal: &MonomialIdeal) -> Option<Monomial> {
    crate::oracle::box_points(&ideal.max_exponents())
        .map(Monomial::new)
        .find(|v| &ideal.colon(v) == prime_ideal)
}

/// The supports of the associated primes, without witnesses.
pub fn ass_supports(ideal: &MonomialIdeal) -> Result<BTreeSet<PrimeSupport>> {
    Ok(associated_primes(ideal)?.into_iter().map(|a| a.support).collect())
}

/// Minimal primes: the inclusion-minimal associated primes.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<PrimeSupport>> {
    let ass = ass_supports(ideal)?;
    Ok(ass
        .iter()
        .filter(|p| !ass.iter().any(|q| q != *p && q.is_subset_of(p)))
        .cloned()
        .collect())
}

/// k-th symbolic power of a squarefree ideal: the intersection of the k-th
/// powers of its minimal primes.
pub fn symbolic_power(ideal: &MonomialIdeal, k: usize) -> Result<MonomialIdeal> {
    assert!(k >= 1, "symbolic power requires k >= 1");
    let _ = Exponent::try_from(k).expect("symbolic power exceeds exponent range");
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "symbolic_power" });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal { op: "symbolic_power" });
    }
    if let Some(g) = ideal.gens().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree { op: "symbolic_power", gen: g.clone() });
    }
    let n = ideal.num_vars();
    let mut acc = MonomialIdeal::unit(n);
    for p in minimal_primes(ideal)? {
        let power = prime_power(&p, k, n);
        acc = acc.intersect(&power);
    }
    Ok(acc)
}

/// `p^k` expanded directly: all degree-k monomials in the prime's variables.
fn prime_power(p: &PrimeSupport, k: usize, n: usize) -> MonomialIdeal {
    let gens = p
        .vars()
        .iter()
        .copied()
        .combinations_with_replacement(k)
        .map(|combo| {
            let mut e = vec![0; n];
            for v in combo {
                e[v] += 1;
            }
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::from_candidates(n, gens)
}

/// Socle test: is the maximal ideal associated to R/I (depth zero)?
pub fn depth_zero(ideal: &MonomialIdeal) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal { op: "depth_zero" });
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal { op: "depth_zero" });
    }
    let n = ideal.num_vars();
    if ideal.support().len() < n {
        return Ok(false); // a variable missing from I keeps the socle empty
    }
    let maximal = PrimeSupport::maximal(n).expand(n)?;
    Ok(ideal.colon_ideal(&maximal)? != *ideal)
}

/// Associated primes of the powers I, I^2, ..., I^K, with the minimal primes
/// for reference.
#[derive(Debug, Clone, Serialize)]
pub struct AssProfile {
    pub bound: usize,
    pub per_power: Vec<PowerAss>,
    pub min_primes: Vec<PrimeSupport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerAss {
    pub k: usize,
    pub primes: Vec<PrimeSupport>,
    pub depth_zero: bool,
}
