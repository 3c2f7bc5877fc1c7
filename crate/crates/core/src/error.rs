use thiserror::Error;

/// Errors raised while validating or computing with finite monoids, acts and
/// congruences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedTable { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range (bound {bound})")]
    OutOfRangeEntry { row: usize, col: usize, value: usize, bound: usize },
    #[error("operation is not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NotAGroup(usize),
    #[error("member set is not a subgroup")]
    NotASubgroup,
    #[error("element {0} is out of range for a structure of order {1}")]
    ElementOutOfRange(usize, usize),

    #[error("act carrier is empty")]
    EmptyCarrier,
    #[error("action has {found} rows, expected one per monoid element ({expected})")]
    ActionShape { expected: usize, found: usize },
    #[error("identity does not fix element {0}")]
    IdentityLawViolated(usize),
    #[error("({0}·{1})·{2} ≠ {0}·({1}·{2}) in the action")]
    CompatibilityViolated(usize, usize, usize),
    #[error("the acting monoid is not a group")]
    MonoidNotGroup,
    #[error("acts are over different monoids")]
    MixedMonoids,
    #[error("empty list of acts")]
    EmptyList,
    #[error("map is not equivariant: image of {0}·{1} disagrees")]
    NotEquivariant(usize, usize),
    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("enumeration size {size} exceeds the cap {cap}")]
    SizeBoundExceeded { size: u128, cap: usize },

    #[error("partition is not compatible with the action: {1} ~ {2} but {0}·{1} ≁ {0}·{2}")]
    NotCompatible(usize, usize, usize),
    #[error("carrier size mismatch: expected {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("affine space has {points} points, above the cap {cap}")]
    ArityBoundExceeded { points: u128, cap: usize },
    #[error("arity must be at least 1")]
    ZeroArity,

    #[error("invalid canonical form: {0}")]
    InvalidForm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
