//! Exact arithmetic for exponential Puiseux semirings: the additive monoids
//! generated by the powers r^k of a positive rational r, with k running over
//! a numerical monoid. The crate computes memberships, factorizations, and
//! the standard factorization invariants (length and delta sets, Betti
//! elements, catenary degrees, unions of length sets, elasticity, omega
//! primality), each backed by closed forms where they exist and by bounded
//! search with honest completeness flags where they do not. A deliberately
//! naive knapsack oracle provides independent ground truth for tests.

pub mod enumerate;
pub mod error;
pub mod factorization;
pub mod invariants;
pub mod numonoid;
pub mod oracle;
pub mod rational;
pub mod semiring;

pub use enumerate::Caps;
pub use error::Error;
pub use factorization::{Factorization, FactorizationSet};
pub use numonoid::NumericalMonoid;
pub use rational::Rational;
pub use semiring::{parse_element, Direction, Extremal, Semiring, SemiringClass};
