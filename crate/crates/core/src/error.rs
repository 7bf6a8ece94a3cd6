use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by curve construction, evaluation and flow integration.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The curve left the admissible set (height or node-spacing floor).
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    /// Denominator of the Lagrange multiplier fell below its guard; the
    /// curvature has collapsed in the weighted norm.
    #[error("degenerate Lagrange multiplier denominator {0:e} (guard 1e-8)")]
    DegenerateMultiplier(f64),

    /// The scalar Newton solve of the length projection did not converge.
    #[error("length projection failed after {iters} iterations (relative drift {drift:e})")]
    ProjectionFailure { iters: usize, drift: f64 },

    /// Circle fitting on (near-)collinear input.
    #[error("circle fit failure: {0}")]
    FitFailure(String),

    /// A mesh triangle degenerated below the area floor.
    #[error("degenerate mesh triangle (area {0:e})")]
    MeshDegeneracy(f64),

    /// Malformed on-disk artifact.
    #[error("malformed {what}: {detail}")]
    Parse { what: String, detail: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
