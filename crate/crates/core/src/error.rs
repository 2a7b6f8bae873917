use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right} variables")]
    RankMismatch { left: usize, right: usize },

    #[error("zero linear form")]
    ZeroForm,

    #[error("linear form {0} is not primitive")]
    NotPrimitive(String),

    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("polynomial {0} is not homogeneous")]
    NotHomogeneous(String),

    #[error("class values have mixed degrees {0} and {1}")]
    MixedDegrees(u32, u32),

    #[error("polynomial {0} does not split into linear forms")]
    NoLinearSplit(String),

    #[error("cannot parse polynomial {text:?}: {reason}")]
    PolyParse { text: String, reason: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("duplicate vertex name {0}")]
    DuplicateVertex(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("dart index {0} out of range")]
    DartOutOfRange(usize),

    #[error("edge {0}: loops are not allowed")]
    Loop(usize),

    #[error("edge {edge}: alpha_rev {alpha_rev} is not +/- alpha {alpha}")]
    ReverseSign { edge: usize, alpha: String, alpha_rev: String },

    #[error("expected {expected} coefficients, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("vertices must be distinct")]
    SameVertex,

    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),

    #[error("dart {dart} does not belong to the requested set")]
    DartNotInSet { dart: usize },

    #[error("graph fails validation: {0}")]
    InvalidGraph(String),

    #[error("graph admits no parallel transport")]
    NotGkm,

    #[error("malformed algebra data: {0}")]
    MalformedAlgebra(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
