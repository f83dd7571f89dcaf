use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("vector is not unimodular{}", component.map(|c| format!(" (product component {c})")).unwrap_or_default())]
    NotUnimodular { component: Option<usize> },
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("no stable-rank-1 reduction oracle for ring {0}")]
    OracleUnavailable(String),
    #[error("certificate does not certify the given vector")]
    CertificateInvalid,
    #[error("element is not a principal unit (constant part must be 1)")]
    NotPrincipalUnit,
    #[error("ring {0} does not contain the rationals")]
    RingWithoutRationals(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("determinant limited to n <= 8, got n = {0}")]
    DimensionTooLarge(usize),
    #[error("matrix is not in SL_n (determinant is not 1)")]
    NotSL,
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("matrix is not unipotent triangular")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("division by (near) zero at z = {0} without removable-singularity annotation")]
    UnannotatedPole(String),
    #[error("pole at jet base point {0}")]
    PoleAtBase(String),
    #[error("jet has vanishing constant term")]
    VanishingConstantTerm,
    #[error("root finding did not converge after {0} iterations")]
    NonConvergence(usize),
    #[error("duplicate interpolation base points")]
    DuplicateBasePoints,
    #[error("root finding failed: {0}")]
    RootFindingFailed(String),
    #[error("jet division failed at {0}: numerator does not vanish to the required order")]
    JetDivisionFailed(String),
    #[error("matrix does not have a double eigenvalue (residual {0:e})")]
    NotDoubleEigenvalue(f64),
    #[error("degenerate eigenvector construction")]
    EigenvectorDegenerate,

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
