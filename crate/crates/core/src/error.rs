use alloc::string::String;

/// Errors shared across the crate.
///
/// Guard-style variants (`FactorBound`, `ResourceBound`, `GroupBound`)
/// indicate an input beyond the configured desk-scale limits rather
/// than a malformed input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A field element was zero where a unit was required.
    #[error("zero square class: {0}")]
    ZeroValue(String),
    /// Construction of a prime field with p = 2 or a non-prime modulus.
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    /// Binary operation on values over different fields.
    #[error("field descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    /// Trial-division factorization gave up beyond the configured bound.
    #[error("factorization bound exceeded for {0}")]
    FactorBound(String),
    /// Division by a residue that is zero modulo p.
    #[error("division by zero residue mod {0}")]
    ZeroResidue(u64),
    /// Series operation requiring constant coefficient one.
    #[error("series has constant coefficient != 1: {0}")]
    LeadingCoeffNotOne(String),
    /// Orbit or multiset enumeration would exceed the resource guard.
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    /// Group order beyond the Burnside-module guard.
    #[error("group order bound exceeded: {0}")]
    GroupBound(String),
    /// Square classes that are multiplicatively dependent where an
    /// independent family is required.
    #[error("dependent square classes: {0}")]
    DependentClasses(String),
    /// Polynomial with a repeated root where a separable one is required.
    #[error("polynomial is not squarefree: {0}")]
    NotSquarefree(String),
    /// Mismatched Galois-set contexts in a binary operation.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    /// An action table that is not a well-formed commuting involution family.
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    /// A closed-form coefficient that should have been an integer was not.
    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),
    /// Malformed input detected outside the parsers (e.g. non-monic polynomial).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
