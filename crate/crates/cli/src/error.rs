use std::fmt;
use std::process::ExitCode;

use gcnet::constructor::ConstructError;
use gcnet::network::NetworkError;
use gcnet::GfError;

/// A failure together with the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, parameters or input files.
    Usage(String),
    /// The computation ran but could not produce a result.
    Compute(String),
    /// Something that should not happen.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(2),
            Failure::Compute(_) => ExitCode::from(3),
            Failure::Internal(_) => ExitCode::from(4),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "invalid input: {m}"),
            Failure::Compute(m) => write!(f, "computation failed: {m}"),
            Failure::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NotAPrimePower(_)
            | GfError::UnsupportedOrder(_)
            | GfError::NotInField { .. }
            | GfError::ShapeMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<NetworkError> for Failure {
    fn from(e: NetworkError) -> Self {
        match e {
            NetworkError::InvalidParams(_) | NetworkError::ShapeMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            NetworkError::Gf(g) => g.into(),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::ParamViolation(_) | ConstructError::InvalidDistance { .. } => {
                Failure::Usage(e.to_string())
            }
            ConstructError::Gf(g) => g.into(),
            ConstructError::Network(n) => n.into(),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}
