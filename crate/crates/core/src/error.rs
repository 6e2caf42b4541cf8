use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A construction precondition on an input parameter failed.
    #[error("{name} must satisfy {expected} (got {value})")]
    Parameter {
        name: &'static str,
        expected: &'static str,
        value: String,
    },
    #[error("primitives {index} and {} do not join (gap {gap:e})", index + 1)]
    BrokenChain { index: usize, gap: f64 },
    #[error("curve endpoint does not match its primitives ({which})")]
    EndpointMismatch { which: &'static str },
    #[error("primitive {index} is degenerate: {reason}")]
    DegeneratePrimitive { index: usize, reason: &'static str },
    #[error("curve has no primitives")]
    EmptyCurve,
    #[error("reference segment has coincident endpoints")]
    DegenerateReference,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("curve is not closed")]
    OpenCurve,
    #[error("polygon measurement requires straight segments only")]
    ArcInPolygon,
    #[error("pieces {0:?} and {1:?} overlap")]
    OverlappingPieces(String, String),
    #[error("piece {label:?} is invalid: {source}")]
    InvalidPiece {
        label: String,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid irrational tag: {0}")]
    InvalidTag(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, expected: &'static str, value: impl ToString) -> Self {
        Error::Parameter {
            name,
            expected,
            value: value.to_string(),
        }
    }

    /// Short machine-readable name of the violated condition.
    pub fn precondition(&self) -> String {
        match self {
            Error::Parameter { name, expected, .. } => format!("{name}: {expected}"),
            Error::BrokenChain { .. } | Error::EndpointMismatch { .. } => "curve chained".into(),
            Error::DegeneratePrimitive { .. } => "primitive non-degenerate".into(),
            Error::EmptyCurve => "curve non-empty".into(),
            Error::DegenerateReference => "reference segment non-degenerate".into(),
            Error::TooFewVertices(_) => "polygon has >= 3 vertices".into(),
            Error::SelfIntersecting(..) => "polygon simple".into(),
            Error::OpenCurve => "curve closed".into(),
            Error::ArcInPolygon => "polygon segments only".into(),
            Error::OverlappingPieces(..) => "pieces interior-disjoint".into(),
            Error::InvalidPiece { .. } => "each piece simple".into(),
            Error::InvalidTag(_) => "valid irrational tag".into(),
            Error::Parse { what, .. } => format!("{what} well-formed"),
        }
    }
}
