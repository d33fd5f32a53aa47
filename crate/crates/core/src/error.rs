use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A radial intersection was requested for the artifact center itself.
    #[error("degenerate ray: point coincides with the artifact center")]
    DegenerateRay,

    #[error("rim requested on type H geometry")]
    MissingRim,

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("profile config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unsupported image format: {0}")]
    Format(String),

    #[error("dimension mismatch: {left_h}x{left_w} vs {right_h}x{right_w}")]
    DimensionMismatch {
        left_h: usize,
        left_w: usize,
        right_h: usize,
        right_w: usize,
    },

    #[error("image {height}x{width} is smaller than the {window}x{window} window")]
    ImageTooSmall {
        height: usize,
        width: usize,
        window: usize,
    },

    #[error("{}", describe_mismatch(.missing, .extra))]
    NameMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("image codec: {0}")]
    Codec(#[from] image::ImageError),

    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
}

fn describe_mismatch(missing: &[String], extra: &[String]) -> String {
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("missing from restored: {}", missing.join(", ")));
    }
    if !extra.is_empty() {
        parts.push(format!("not in ground truth: {}", extra.join(", ")));
    }
    format!("file name sets differ ({})", parts.join("; "))
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn image(path: impl Into<PathBuf>, source: image::ImageError) -> Self {
        Error::Image {
            path: path.into(),
            source,
        }
    }
}
