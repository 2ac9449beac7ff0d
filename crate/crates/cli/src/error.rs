use std::fmt;

use weightsys_core::deltamatroids::DmError;
use weightsys_core::diagrams::DiagramError;
use weightsys_core::graphs::GraphError;
use weightsys_core::hopf::HopfError;
use weightsys_core::lie::LieError;

/// Outcome classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// A check ran and found a violation (exit 1).
    Failed(String),
    /// Bad flags, unreadable or malformed input (exit 2).
    Usage(String),
    /// A size bound was exceeded (exit 3).
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) => write!(f, "check failed: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Bound(m) => write!(f, "bound exceeded: {m}"),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> Self {
        match e {
            HopfError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
            HopfError::Diagram(d) => d.into(),
            HopfError::Graph(g) => g.into(),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DmError> for CliError {
    fn from(e: DmError) -> Self {
        match e {
            DmError::TooLarge(_) => CliError::Bound(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("invalid JSON: {e}"))
    }
}
