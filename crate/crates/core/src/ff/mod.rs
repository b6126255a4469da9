//! Exact arithmetic in odd-characteristic finite fields.
//!
//! [`GaloisField`] is the workhorse: elements are [`Fe`] indices and all
//! operations go through the field, table-driven for orders up to 2^21.
//! [`FieldSpec`] is the textual/serializable presentation of an absolute
//! field and [`TowerSpec`] the relative presentation `GF(q)[θ]/(m)` used by
//! the explicit colorings.

mod element;
mod field;
pub mod nt;
mod poly;
mod spec;
mod tower;

use thiserror::Error;

pub use element::{ArithOp, FieldElement};
pub use field::{Fe, GaloisField, Sign};
pub use poly::{Poly, PolyRing};
pub use spec::FieldSpec;
pub use tower::{binomial_irreducible, find_binomial_mu, TowerKind, TowerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("binary operation without a right operand")]
    MissingOperand,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus is reducible")]
    NotIrreducible,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("degree {0} not allowed here")]
    BadDegree(usize),
    #[error("field order exceeds the supported range")]
    TooLarge,
    #[error("{0}")]
    Parse(String),
}
