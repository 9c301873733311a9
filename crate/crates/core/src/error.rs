//! Crate-wide error type.

/// Errors surfaced by field construction, parsing, and the factor engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Field degree outside the supported range 1..=32.
    #[error("field degree {0} out of range (supported: 1..=32)")]
    DegreeOutOfRange(u32),

    /// Modulus rejected: wrong degree, even constant term, or reducible.
    #[error("invalid modulus {modulus:#x} for GF(2^{m}): {reason}")]
    InvalidModulus { m: u32, modulus: u64, reason: &'static str },

    /// An operation needed an extension GF(2^{m'}) with m' > 32.
    #[error("extension degree {needed} exceeds capacity 32 ({context})")]
    CapacityExceeded { needed: u32, context: &'static str },

    /// Mixed operands from different field contexts.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    /// Division by zero in a field or polynomial ring.
    #[error("division by zero")]
    DivisionByZero,

    /// Exact division requested but the remainder was nonzero.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// Monomial exponent above 2^16 or total degree above 256.
    #[error("degree limit exceeded: {0}")]
    DegreeLimit(String),

    /// The factor engine exhausted its work budget; `partial` describes the
    /// state reached (factors extracted, unresolved modular factors).
    #[error("work budget exhausted after {spent} units (budget {budget}): {partial}")]
    BudgetExhausted { spent: u64, budget: u64, partial: String },

    /// Parse failure for a field, element, or polynomial literal.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
