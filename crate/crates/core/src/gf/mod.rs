//! Finite fields, dense matrices over them, and subspaces in canonical form.

mod extension;
mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use extension::ExtensionField;
pub use field::{is_prime_power, prime_power, FieldElement, FieldSpec, MAX_ORDER};
pub use matrix::{LinearSolution, MatrixGF, Rref};
pub use subspace::{grassmannian, Grassmannian, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field order {0} is outside the supported range [2, 2^20]")]
    UnsupportedOrder(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("entry {value} is not an element of a field of order {order}")]
    NotInField { value: u32, order: u32 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("ambient dimensions differ ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
}
