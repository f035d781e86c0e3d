//! Crate-wide error type.
//!
//! Every failure mode that a caller can trigger with well-typed but invalid
//! inputs gets its own variant. `Error::name` returns a stable token used by
//! the machine output format of the CLI; the `Display` form adds a short
//! human-readable explanation.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion of a scalar that is not a single term q*E(mu), q != 0.
    #[error("NotAUnit: only one-term scalars q*E(mu) with q != 0 are invertible")]
    NotAUnit,

    /// A divisor must have positive degree.
    #[error("EmptyDivisor: a divisor needs at least one point with multiplicity >= 1")]
    EmptyDivisor,

    /// A multiplicity was outside the allowed range for the operation.
    #[error("BadMultiplicity: multiplicity at the required point is too small")]
    BadMultiplicity,

    /// Rescaling by zero is not invertible.
    #[error("ZeroScale: rescaling requires a nonzero factor")]
    ZeroScale,

    /// Two operands live over different divisors.
    #[error("DivisorMismatch: operands belong to groups over different divisors")]
    DivisorMismatch,

    /// Inclusion requested into a divisor that does not dominate pointwise.
    #[error("NotASubdivisor: inclusion needs every multiplicity to grow or stay")]
    NotASubdivisor,

    /// A function that must lie in the function space of the divisor does not.
    #[error("NotInVd: the function part is not annihilated by the divisor's operator")]
    NotInVd,

    /// A tangent vector with a w d/dw component was passed where the smaller
    /// algebra (no w d/dw term) is required.
    #[error("NotInSubalgebra: this adjoint action is only defined for vectors with no w*d/dw part")]
    NotInSubalgebra,

    /// The construction needs 0 in the support of the divisor.
    #[error("ZeroNotInSupport: the divisor must contain the point 0")]
    ZeroNotInSupport,

    /// The construction needs the given point in the support of the divisor.
    #[error("NotInSupport: the requested point is not in the divisor's support")]
    NotInSupport,

    /// Morphism composition with mismatched middle spaces.
    #[error("ChainMismatch: target of the first morphism differs from source of the second")]
    ChainMismatch,

    /// An element was applied through a morphism whose source space does not
    /// match the element's kind.
    #[error("SpaceMismatch: element does not belong to the expected space")]
    SpaceMismatch,

    /// Symbolic action needs the first developing component to be s + constant.
    #[error("UnsupportedFirstComponent: symbolic action needs first component s + c")]
    UnsupportedFirstComponent,

    /// A symbolic substitution left the exp-polynomial ring.
    #[error("UnsupportedSubstitution: substitution result is not an exp-polynomial")]
    UnsupportedSubstitution,

    /// The developing system is not in the normalized gauge the catalog uses.
    #[error("NotInCatalogGauge: developing map is not a gauge image of a catalog structure")]
    NotInCatalogGauge,

    /// Lattice generators fail the exact rank-4 independence check.
    #[error("DegenerateLattice: the four generators are rationally dependent")]
    DegenerateLattice,

    /// The commutator relation a1*b3 - b1*a3 = r*c2 fails.
    #[error("KodairaRelation: a1*b3 - b1*a3 = r*c2 is violated")]
    KodairaRelation,

    /// Degenerate Kodaira data: c2 = 0, r = 0, or a dependent period pair.
    #[error("KodairaDegenerate: periods are degenerate (c2 = 0, r = 0, or dependent pair)")]
    KodairaDegenerate,

    /// Text input that does not match the value or program grammar.
    #[error("ParseError: line {line}, col {col}: {message}")]
    Parse { line: u32, col: u32, message: String },

    /// A program referenced a name with no prior binding.
    #[error("UnboundName: line {line}: no binding named `{name}`")]
    UnboundName { name: String, line: u32 },

    /// A binding of the wrong kind was used (e.g. a torus where a divisor
    /// was expected).
    #[error("TypeMismatch: line {line}: `{name}` is bound to a {found}, expected a {expected}")]
    TypeMismatch { name: String, line: u32, found: &'static str, expected: &'static str },
}

impl Error {
    /// Stable machine-readable token (used by `--format=machine`).
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotAUnit => "NotAUnit",
            Error::EmptyDivisor => "EmptyDivisor",
            Error::BadMultiplicity => "BadMultiplicity",
            Error::ZeroScale => "ZeroScale",
            Error::DivisorMismatch => "DivisorMismatch",
            Error::NotASubdivisor => "NotASubdivisor",
            Error::NotInVd => "NotInVd",
            Error::NotInSubalgebra => "NotInSubalgebra",
            Error::ZeroNotInSupport => "ZeroNotInSupport",
            Error::NotInSupport => "NotInSupport",
            Error::ChainMismatch => "ChainMismatch",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::UnsupportedFirstComponent => "UnsupportedFirstComponent",
            Error::UnsupportedSubstitution => "UnsupportedSubstitution",
            Error::NotInCatalogGauge => "NotInCatalogGauge",
            Error::DegenerateLattice => "DegenerateLattice",
            Error::KodairaRelation => "KodairaRelation",
            Error::KodairaDegenerate => "KodairaDegenerate",
            Error::Parse { .. } => "ParseError",
            Error::UnboundName { .. } => "UnboundName",
            Error::TypeMismatch { .. } => "TypeMismatch",
        }
    }
}
