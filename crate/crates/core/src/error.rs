use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. [`Error::code`] gives a stable
/// machine-readable identifier for front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed fan: {0}")]
    InvalidFan(String),
    #[error("ray {index} is not primitive (gcd of entries is {gcd})")]
    NonPrimitiveRay { index: usize, gcd: String },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} is not simplicial: its rays are linearly dependent")]
    NonSimplicialCone { cone: usize },
    #[error("rays span a sublattice of rank {rank} < {dim}: the variety has a torus factor")]
    TorusFactor { rank: usize, dim: usize },
    #[error("operation needs a complete fan (complete flag is false)")]
    RequiresComplete,
    #[error("operation needs a projective variety (projective flag is false)")]
    RequiresProjective,
    #[error("graded piece of class {class} is infinite: the fan is not complete")]
    UnboundedGradedPiece { class: String },
    #[error("class has {got} free coordinates and {got_torsion} torsion residues, expected {expected} and {expected_torsion}")]
    ClassShape {
        got: usize,
        got_torsion: usize,
        expected: usize,
        expected_torsion: usize,
    },
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("polynomial has {got} variables, expected {expected}")]
    VariableCount { got: usize, expected: usize },
    #[error("polynomial is not homogeneous: monomials {first} and {second} have different classes")]
    NotHomogeneous { first: String, second: String },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("division is not exact")]
    InexactDivision,
    #[error("expected {expected} syzygies, got {got}")]
    WrongSyzygyCount { expected: String, got: usize },
    #[error("vector {index} is not a syzygy: {reason}")]
    NotASyzygy { index: usize, reason: String },
    #[error("no Euler functional is nonzero on the divisor class")]
    EulerCoefficientDegenerate,
    #[error("search exceeded the combination limit of {limit}")]
    SearchLimitExceeded { limit: u64 },
    #[error("degree of f_{index} has zero free part on a projective variety")]
    ZeroFreePart { index: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidFan(_) => "InvalidFan",
            Error::NonPrimitiveRay { .. } => "NonPrimitiveRay",
            Error::DuplicateRay { .. } => "DuplicateRay",
            Error::NonSimplicialCone { .. } => "NonSimplicialCone",
            Error::TorusFactor { .. } => "TorusFactor",
            Error::RequiresComplete => "RequiresComplete",
            Error::RequiresProjective => "RequiresProjective",
            Error::UnboundedGradedPiece { .. } => "UnboundedGradedPiece",
            Error::ClassShape { .. } => "ClassShape",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::VariableCount { .. } => "VariableCount",
            Error::NotHomogeneous { .. } => "NotHomogeneous",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InexactDivision => "InexactDivision",
            Error::WrongSyzygyCount { .. } => "WrongSyzygyCount",
            Error::NotASyzygy { .. } => "NotASyzygy",
            Error::EulerCoefficientDegenerate => "EulerCoefficientDegenerate",
            Error::SearchLimitExceeded { .. } => "SearchLimitExceeded",
            Error::ZeroFreePart { .. } => "ZeroFreePart",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
