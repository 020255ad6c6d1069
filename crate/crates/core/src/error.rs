use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse scenario: {0}")]
    Parse(#[from] serde_json::Error),

    /// A scenario or configuration invariant does not hold.
    #[error("invalid {what}: {reason}")]
    Validation { what: &'static str, reason: String },

    #[error("could not place {count} UAVs {d_min} m apart in a {area} m box after {attempts} attempts")]
    Placement {
        count: usize,
        d_min: f64,
        area: f64,
        attempts: usize,
    },

    #[error("link distance {distance} m is below the reference distance {reference} m")]
    Domain { distance: f64, reference: f64 },

    #[error("direction is undefined between coincident points")]
    CoincidentPoints,

    #[error("all excitation weights are zero")]
    DegenerateWeights,

    #[error("leg of {distance} m cannot be flown at zero speed")]
    ZeroSpeed { distance: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("archive is empty")]
    EmptyArchive,

    #[error("at least one draw is required")]
    NoDraws,
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            what,
            reason: reason.into(),
        }
    }
}
