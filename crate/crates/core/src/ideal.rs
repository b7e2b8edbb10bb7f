use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{default_names, Exponent, Monomial};

/// A monomial ideal in a fixed polynomial ring, stored as its unique minimal
/// generating set in graded-lexicographic order, so equality is structural.
///
/// The zero ideal has no generators; the unit ideal is generated by 1.
/// Deserialization funnels through `new`, so foreign generator lists are
/// minimalized and validated like any other input.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Build an ideal from arbitrary generators; they are minimalized and
    /// canonically ordered. Fails on dimension mismatches or `n == 0`.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroAmbientDimension);
        }
        for g in &gens {
            if g.num_vars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.num_vars() });
            }
        }
        Ok(Self::from_candidates(n, gens))
    }

    /// The zero ideal in `n` variables.
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "ambient dimension must be positive");
        MonomialIdeal { n, gens: Vec::new() }
    }

    /// The unit ideal in `n` variables.
    pub fn unit(n: usize) -> Self {
        assert!(n > 0, "ambient dimension must be positive");
        MonomialIdeal { n, gens: vec![Monomial::one(n)] }
    }

    /// Internal constructor: minimalize + sort a candidate generator list.
    pub(crate) fn from_candidates(n: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal { n, gens: minimalize(gens) }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// The minimal generators, in canonical graded-lex order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Monomial membership: some minimal generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        assert_eq!(m.num_vars(), self.n, "dimension mismatch in membership test");
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Ideal containment `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        assert_eq!(other.n, self.n, "dimension mismatch in containment test");
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Union of the supports of the minimal generators.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for g in &self.gens {
            for i in g.support() {
                seen[i] = true;
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// Componentwise maximum exponent over the generators (the scan box).
    pub fn max_exponents(&self) -> Vec<Exponent> {
        let mut out = vec![0; self.n];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(&g.exponents) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// The common total degree of the generators, if they share one.
    pub fn single_degree(&self) -> Option<u64> {
        let mut it = self.gens.iter().map(|g| g.total_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Sum of ideals: union of generators, minimalized.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(other.n, self.n, "dimension mismatch in ideal sum");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::from_candidates(self.n, gens)
    }

    /// Product of ideals: pairwise generator products, minimalized.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(other.n, self.n, "dimension mismatch in ideal product");
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Self::from_candidates(self.n, gens)
    }

    /// `self^t` for `t >= 1` by iterated products.
    pub fn power(&self, t: usize) -> MonomialIdeal {
        assert!(t >= 1, "power requires t >= 1; the unit ideal must be requested explicitly");
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self);
        }
        acc
    }

    /// Intersection via pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(other.n, self.n, "dimension mismatch in ideal intersection");
        // Fast paths: the unit ideal is the identity, the zero ideal absorbs.
        if self.is_unit() || other.is_zero() {
            return other.clone();
        }
        if other.is_unit() || self.is_zero() {
            return self.clone();
        }
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let l = a.lcm(b);
                if seen.insert(l.clone()) {
                    gens.push(l);
                }
            }
        }
        Self::from_candidates(self.n, gens)
    }

    /// n-ary intersection; the empty intersection is the unit ideal.
    pub fn intersect_all<I>(n: usize, ideals: I) -> MonomialIdeal
    where
        I: IntoIterator,
        I::Item: Borrow<MonomialIdeal>,
    {
        let mut acc = MonomialIdeal::unit(n);
        for ideal in ideals {
            acc = acc.intersect(ideal.borrow());
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Colon by a monomial: generated by `g / gcd(g, u)`.
    pub fn colon(&self, u: &Monomial) -> MonomialIdeal {
        assert_eq!(u.num_vars(), self.n, "dimension mismatch in colon");
        let gens = self.gens.iter().map(|g| g.div_exact(&g.gcd(u))).collect();
        Self::from_candidates(self.n, gens)
    }

    /// Colon by an ideal: intersection of the colons by its generators.
    /// The zero ideal divisor is rejected.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        assert_eq!(other.n, self.n, "dimension mismatch in colon");
        if other.is_zero() {
            return Err(Error::ColonByZero);
        }
        Ok(MonomialIdeal::intersect_all(self.n, other.gens.iter().map(|v| self.colon(v))))
    }

    /// Alexander dual of a squarefree ideal: the intersection, over the
    /// generators, of the primes on their supports. An involution on proper
    /// nonzero squarefree ideals.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal { op: "alexander_dual" });
        }
        if let Some(g) = self.gens.iter().find(|g| !g.is_squarefree()) {
            return Err(Error::NotSquarefree { op: "alexander_dual", gen: g.clone() });
        }
        let mut acc = MonomialIdeal::unit(self.n);
        for g in &self.gens {
            let prime_gens =
                g.support().into_iter().map(|i| Monomial::variable(i, self.n)).collect();
            let prime = Self::from_candidates(self.n, prime_gens);
            acc = acc.intersect(&prime);
        }
        Ok(acc)
    }

    /// Re-embed into a ring with `new_n >= n` variables (zero-pad exponents).
    pub fn extend_to(&self, new_n: usize) -> MonomialIdeal {
        assert!(new_n >= self.n, "extend_to cannot shrink the ring");
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = g.exponents.clone();
                e.resize(new_n, 0);
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal { n: new_n, gens }
    }

    /// Monomial localization at a variable set: exponents outside `keep` are
    /// zeroed (equivalent to the colon by the other variables at their max
    /// exponents), then minimalized.
    pub fn localize_at(&self, keep: &[usize]) -> MonomialIdeal {
        let mut mask = vec![false; self.n];
        for &i in keep {
            assert!(i < self.n, "variable index out of range in localization");
            mask[i] = true;
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let exps = g
                    .exponents
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if mask[i] { e } else { 0 })
                    .collect();
                Monomial::new(exps)
            })
            .collect();
        Self::from_candidates(self.n, gens)
    }

    /// Render one generator per line with the given names.
    pub fn render(&self, names: &[String]) -> String {
        self.gens.iter().map(|g| g.render(names)).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "({})", self.render(&default_names(self.n)))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Mirror of the serialized field layout, used to validate on the way in.
#[derive(Deserialize)]
struct RawIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: RawIdeal) -> Result<Self> {
        MonomialIdeal::new(raw.n, raw.gens)
    }
}

/// Reduce a candidate list to the minimal generating antichain, sorted in
/// graded-lex order. Duplicates are removed first; since a proper divisor has
/// strictly smaller total degree, a degree-ascending forward scan suffices.
pub fn minimalize(candidates: Vec<Monomial>) -> Vec<Monomial> {
    let mut uniq: Vec<Monomial> = {
        let mut seen = HashSet::new();
        candidates.into_iter().filter(|m| seen.insert(m.clone())).collect()
    };
    uniq.sort_by(|a, b| a.cmp_grlex(b));
    let mut kept: Vec<Monomial> = Vec::new();
    'outer: for cand in uniq {
        for g in &kept {
            if g.total_degree() >= cand.total_degree() {
                break; // kept is degree-sorted; no further divisor possible
            }
            if g.divides(&cand) {
                continue 'outer;
            }
        }
        kept.push(cand);
    }
    kept
}
