//! Exact arithmetic for monomial ideals: generator-level algebra, integral
//! closures via Newton-polyhedron feasibility, irreducible decompositions,
//! associated primes, symbolic powers, and the neighborhood/dominating ideals
//! of small graphs, together with bounded checkers for normality-adjacent
//! properties. All computations are exact; nothing here floats.

pub mod closure;
pub mod decomp;
pub mod error;
pub mod graphs;
pub mod ideal;
pub mod monomial;
pub mod oracle;
pub mod prime;
pub mod properties;
pub mod simplex;
pub mod textfmt;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use monomial::{Exponent, Monomial};
pub use prime::PrimeSupport;

/// Exact scalar used by the feasibility solver: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;
