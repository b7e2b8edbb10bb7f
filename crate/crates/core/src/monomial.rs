use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent type for monomials; arithmetic on it is always checked.
pub type Exponent = u32;

/// A monomial in a fixed number of variables, stored as its exponent vector.
///
/// Variables are 0-indexed internally; names exist only at the I/O boundary.
/// The constant monomial 1 is the all-zeros vector. Serializes as the bare
/// exponent array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    pub exponents: Vec<Exponent>,
}

impl Monomial {
    pub fn new(exponents: Vec<Exponent>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exponents: vec![0; n] }
    }

    /// The single variable `x_i` in `n` variables.
    pub fn variable(i: usize, n: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        let mut exponents = vec![0; n];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    /// Indices of the variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_vars()).filter(|&i| self.exponents[i] > 0).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// Whether `self` divides `other` (componentwise <=).
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// Product of two monomials; aborts on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.num_vars(), other.num_vars(), "dimension mismatch in monomial product");
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
            .collect();
        Monomial { exponents }
    }

    /// `self^k`; aborts on exponent overflow.
    pub fn pow(&self, k: Exponent) -> Monomial {
        let exponents = self
            .exponents
            .iter()
            .map(|&a| a.checked_mul(k).expect("monomial exponent overflow"))
            .collect();
        Monomial { exponents }
    }

    /// Exact quotient `self / other`; requires `other.divides(self)`.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        assert!(other.divides(self), "inexact monomial division");
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| a - b).collect();
        Monomial { exponents }
    }

    /// Componentwise maximum (least common multiple).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.num_vars(), other.num_vars(), "dimension mismatch in monomial lcm");
        let exponents =
            self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| a.max(b)).collect();
        Monomial { exponents }
    }

    /// Componentwise minimum (greatest common divisor).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.num_vars(), other.num_vars(), "dimension mismatch in monomial gcd");
        let exponents =
            self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| a.min(b)).collect();
        Monomial { exponents }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Graded-lexicographic comparison: total degree first, then the
    /// lexicographically larger exponent vector sorts first within a degree,
    /// so e.g. x^2 precedes xy precedes y^2.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }

    /// Render with the given variable names, e.g. `x1^2*x3`; 1 for the constant.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.num_vars(), "dimension mismatch in monomial rendering");
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.num_vars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Default variable names `x1..xn` used wherever no header supplied any.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[Exponent]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn divides_is_componentwise() {
        assert!(m(&[1, 0, 2]).divides(&m(&[1, 1, 2])));
        assert!(!m(&[1, 0, 3]).divides(&m(&[1, 1, 2])));
        assert!(m(&[0, 0, 0]).divides(&m(&[5, 0, 1])));
    }

    #[test]
    fn lcm_gcd_product() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 0]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert_eq!(a.mul(&b), m(&[3, 4, 0]));
        // lcm * gcd == product, componentwise max+min == sum
        assert_eq!(a.lcm(&b).mul(&a.gcd(&b)), a.mul(&b));
    }

    #[test]
    fn grlex_orders_by_degree_then_lex_descending() {
        let x2 = m(&[2, 0]);
        let xy = m(&[1, 1]);
        let y2 = m(&[0, 2]);
        let x = m(&[1, 0]);
        assert_eq!(x.cmp_grlex(&x2), Ordering::Less);
        assert_eq!(x2.cmp_grlex(&xy), Ordering::Less);
        assert_eq!(xy.cmp_grlex(&y2), Ordering::Less);
    }

    #[test]
    fn render_round_trip_shapes() {
        let names = default_names(3);
        assert_eq!(m(&[2, 0, 1]).render(&names), "x1^2*x3");
        assert_eq!(m(&[0, 0, 0]).render(&names), "1");
        assert_eq!(m(&[0, 1, 0]).render(&names), "x2");
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn product_overflow_aborts() {
        let a = m(&[Exponent::MAX, 0]);
        let _ = a.mul(&m(&[1, 0]));
    }
}
