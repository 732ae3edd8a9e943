use mucheeger_core::Error as CoreError;

use crate::edgelist::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    SizeCap(String),
    #[error("no vertex set has its volume inside the mu = {0} window")]
    Infeasible(f64),
    #[error(transparent)]
    Core(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TooLarge { n, cap } => CliError::SizeCap(format!(
                "graph has {n} vertices, above the enumeration cap of {cap}; \
                 rerun with --sweep for a heuristic answer or raise --cap (at most 30)"
            )),
            CoreError::Unsupported(msg) => CliError::SizeCap(msg),
            CoreError::Infeasible(mu) => CliError::Infeasible(mu),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Parse(_) | CliError::Io { .. } | CliError::Core(_) => 2,
            CliError::SizeCap(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}
