use crate::point::Point;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pair ({0}, {1}) mentions a point outside the declared support")]
    PairOutsideSupport(Point, Point),

    #[error("malformed relation: {0}")]
    Parse(String),

    #[error("window of {len} points exceeds the {family} enumeration guardrail of {cap}; set the cap override to proceed")]
    WindowCap {
        family: String,
        len: usize,
        cap: usize,
    },

    #[error("window of {0} points is beyond the supported enumeration limit of 8")]
    WindowTooLarge(usize),

    #[error("closure exceeded the element cap of {0}")]
    ClosureCap(usize),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("family {0} cannot construct witnesses and no search window was supplied")]
    NotWitnessCapable(String),

    #[error("witness search exhausted the supplied window")]
    SearchExhausted,

    #[error("constructed witness {witness} commutes with {against}; the family breaks the separation contract")]
    WitnessVerification { witness: String, against: String },

    #[error("relation {0} is not a member of family {1}")]
    NotInFamily(String, String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
