use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{default_names, Monomial};

/// A monomial prime ideal, identified by its nonempty set of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeSupport {
    vars: BTreeSet<usize>,
}

impl PrimeSupport {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        if vars.is_empty() {
            return Err(Error::EmptyPrimeSupport);
        }
        Ok(PrimeSupport { vars })
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(n: usize) -> Self {
        assert!(n > 0, "ambient dimension must be positive");
        PrimeSupport { vars: (0..n).collect() }
    }

    pub fn vars(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty supports
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.vars.contains(&i)
    }

    /// Set inclusion, which is ideal inclusion for monomial primes.
    pub fn is_subset_of(&self, other: &PrimeSupport) -> bool {
        self.vars.is_subset(&other.vars)
    }

    /// Whether this is the maximal ideal of an `n`-variable ring.
    pub fn is_maximal(&self, n: usize) -> bool {
        self.vars.len() == n
    }

    /// Expand to the monomial ideal generated by the variables.
    pub fn expand(&self, n: usize) -> Result<MonomialIdeal> {
        if let Some(&max) = self.vars.iter().next_back() {
            if max >= n {
                return Err(Error::VariableOutOfRange { index: max, n });
            }
        }
        MonomialIdeal::new(n, self.vars.iter().map(|&i| Monomial::variable(i, n)).collect())
    }

    /// Recover a prime from an ideal generated by distinct single variables.
    pub fn try_from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        let mut vars = BTreeSet::new();
        if ideal.gens().is_empty() {
            return Err(Error::NotPrime);
        }
        for g in ideal.gens() {
            let support = g.support();
            if support.len() != 1 || g.exponents[support[0]] != 1 {
                return Err(Error::NotPrime);
            }
            vars.insert(support[0]);
        }
        Ok(PrimeSupport { vars })
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<&str> = self.vars.iter().map(|&i| names[i].as_str()).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.vars.iter().next_back().map_or(0, |&m| m + 1);
        write!(f, "{}", self.render(&default_names(n)))
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_ideal() {
        let p = PrimeSupport::new([0, 2]).unwrap();
        let i = p.expand(3).unwrap();
        assert_eq!(i.gens().len(), 2);
        assert_eq!(PrimeSupport::try_from_ideal(&i).unwrap(), p);
    }

    #[test]
    fn rejects_empty_and_non_prime() {
        assert!(PrimeSupport::new([]).is_err());
        let not_prime =
            MonomialIdeal::new(2, vec![Monomial::new(vec![1, 1])]).unwrap();
        assert!(PrimeSupport::try_from_ideal(&not_prime).is_err());
        let squared = MonomialIdeal::new(2, vec![Monomial::new(vec![2, 0])]).unwrap();
        assert!(PrimeSupport::try_from_ideal(&squared).is_err());
    }

    #[test]
    fn maximal_detection() {
        assert!(PrimeSupport::maximal(3).is_maximal(3));
        assert!(!PrimeSupport::new([0, 1]).unwrap().is_maximal(3));
    }

    #[test]
    fn out_of_range_expansion_rejected() {
        let p = PrimeSupport::new([5]).unwrap();
        assert!(p.expand(3).is_err());
    }
}
