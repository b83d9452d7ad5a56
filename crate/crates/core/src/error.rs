use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants map one-to-one onto the stable codes returned by [`Error::code`],
/// which the command-line front end prints and uses to pick an exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible; it has the factor {factor}")]
    ReducibleModulus { factor: String },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {p}^{k} exceeds the supported size (< 2^31)")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("the element is zero")]
    ZeroElement,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("bad element ordering override: {0}")]
    BadOverride(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("operands belong to different group algebras")]
    MixedAlgebras,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("ideal is not projective: 0 has multiplicity {multiplicity} in the minimal polynomial")]
    NotProjective { multiplicity: usize },
    #[error("split factors are not coprime")]
    NotCoprime,
    #[error("product of split factors does not annihilate the element")]
    NotAnnihilating,
    #[error("the element is a unit; its ideal is the whole algebra")]
    UnitElement,
    #[error("the group is not abelian")]
    NonAbelian,
    #[error("the group algebra is not semisimple (field order {q} shares a factor with |G| = {order})")]
    NotSemisimple { q: u64, order: usize },
    #[error("no q-orbit size matches the trace class")]
    EmptyY,
    #[error("bad eigenvalue ordering: {0}")]
    BadRootCount(String),
    #[error("the element is not idempotent")]
    NotIdempotent,
    #[error("the basis is empty")]
    EmptyBasis,
}

impl Error {
    /// Stable machine-readable name of the error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::ReducibleModulus { .. } => "ReducibleModulus",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::ZeroInversion => "ZeroInversion",
            Error::MixedFields => "MixedFields",
            Error::ZeroElement => "ZeroElement",
            Error::BothZero => "BothZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonSquare { .. } => "NonSquare",
            Error::Singular => "Singular",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ClosureCapExceeded(_) => "ClosureCapExceeded",
            Error::BadOverride(_) => "BadOverride",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::MixedAlgebras => "MixedAlgebras",
            Error::Parse { .. } => "ParseError",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::NotApplicable(_) => "NotApplicable",
            Error::NotProjective { .. } => "NotProjective",
            Error::NotCoprime => "NotCoprime",
            Error::NotAnnihilating => "NotAnnihilating",
            Error::UnitElement => "UnitElement",
            Error::NonAbelian => "NonAbelian",
            Error::NotSemisimple { .. } => "NotSemisimple",
            Error::EmptyY => "EmptyY",
            Error::BadRootCount(_) => "BadRootCount",
            Error::NotIdempotent => "NotIdempotent",
            Error::EmptyBasis => "EmptyBasis",
        }
    }

    /// True for errors caused by malformed input text rather than by the
    /// mathematics of a well-formed request.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownGenerator(_) | Error::BadOverride(_)
        )
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
