//! Crate-wide error type with stable categories.
//!
//! Every failure surfaced by the library folds into one of four groups so the
//! CLI can map them onto fixed exit codes: configuration problems (exit 2),
//! data/artifact problems (exit 3), training divergence (exit 4), and wrapped
//! I/O or codec failures (treated as data problems).

use std::path::PathBuf;

/// Unified error type for the whole pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid or inconsistent configuration (bad parameter value, unknown
    /// key, contradictory settings). CLI exit code 2.
    #[error("config: {0}")]
    Config(String),

    /// Missing, malformed, or inconsistent data artifacts (images,
    /// annotations, manifests, checkpoints). CLI exit code 3.
    #[error("data: {0}")]
    Data(String),

    /// The augmentation planner cannot meet a class budget exactly.
    #[error("augment plan infeasible: {0}")]
    PlanInfeasible(String),

    /// A training loss became non-finite. CLI exit code 4.
    #[error("training diverged at step {step}: {detail}")]
    Diverged { step: usize, detail: String },

    /// Filesystem failure, annotated with the path involved.
    #[error("io: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// PNG encode/decode failure.
    #[error("image: {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    /// JSON (de)serialization failure for manifests and reports.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Helper for filesystem errors so call sites keep the path.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Helper for image codec errors.
    pub fn image(path: impl Into<PathBuf>, source: image::ImageError) -> Self {
        Error::Image {
            path: path.into(),
            source,
        }
    }

    /// Exit code the CLI maps this error onto.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Data(_) | Error::PlanInfeasible(_) | Error::Io { .. } | Error::Image { .. } => 3,
            Error::Json(_) => 3,
            Error::Diverged { .. } => 4,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!(Error::Config("x".into()).exit_code(), 2);
        assert_eq!(Error::Data("x".into()).exit_code(), 3);
        assert_eq!(Error::PlanInfeasible("x".into()).exit_code(), 3);
        assert_eq!(
            Error::Diverged {
                step: 7,
                detail: "nan".into()
            }
            .exit_code(),
            4
        );
    }

    #[test]
    fn messages_carry_context() {
        let e = Error::io("/tmp/missing.png", std::io::Error::from(std::io::ErrorKind::NotFound));
        assert!(e.to_string().contains("/tmp/missing.png"));
        let e = Error::Diverged {
            step: 42,
            detail: "det_loss=inf".into(),
        };
        assert!(e.to_string().contains("42"));
    }
}
