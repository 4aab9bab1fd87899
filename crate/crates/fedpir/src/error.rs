use thiserror::Error;

use fedpir_core::audit::AuditError;
use fedpir_core::protocol::ProtocolError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Runtime(String),
    #[error("{0}")]
    Guard(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 success, 1 runtime failure, 2 invalid config, 3 guard exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Runtime(_) | CliError::Io { .. } => 1,
            CliError::Invalid(_) => 2,
            CliError::Guard(_) => 3,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<ProtocolError> for CliError {
    fn from(e: ProtocolError) -> Self {
        match e {
            ProtocolError::InvalidParity { .. }
            | ProtocolError::DimensionTooSmall { .. }
            | ProtocolError::ZeroThreshold
            | ProtocolError::BadReplication { .. }
            | ProtocolError::EmptyShape
            | ProtocolError::GammaTooSmall(_)
            | ProtocolError::ModulusTooSmall { .. }
            | ProtocolError::ModulusTooLarge(_)
            | ProtocolError::ObjectiveOutOfRange { .. }
            | ProtocolError::IdleClient(_)
            | ProtocolError::LabelMismatch(_)
            | ProtocolError::Labels(_)
            | ProtocolError::Assignment(_) => CliError::Invalid(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        match e {
            AuditError::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            AuditError::OutOfBounds(_)
            | AuditError::TooManyColluders { .. }
            | AuditError::BadColluder(_)
            | AuditError::BadTarget(_) => CliError::Invalid(e.to_string()),
            AuditError::Protocol(p) => p.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}
