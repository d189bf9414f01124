use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} does not belong to the {group} family")]
    FamilyMismatch { group: String, element: String },
    #[error("undecided order: {left} and {right} agree up to Magnus degree {degree}")]
    UndecidedOrder {
        degree: u32,
        left: String,
        right: String,
    },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis does not hold: {0}")]
    Hypothesis(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error("ball exceeds cap of {cap} elements at radius {radius}; shrink the radius")]
    BallCap { cap: usize, radius: usize },
    #[error("unsupported schema version {0:?}")]
    UnsupportedVersion(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Undecided comparisons and cap hits are reported separately from bad input.
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::UndecidedOrder { .. } | Error::BallCap { .. })
    }
}
