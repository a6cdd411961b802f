use std::path::PathBuf;

use hoalg::algebras::AlgebraError;
use hoalg::bar::BarError;
use hoalg::chain::ChainError;
use hoalg::chevalley::ChevalleyError;
use hoalg::ginfty::GinftyError;
use hoalg::harrison::HarrisonError;
use hoalg::koszul::KoszulError;
use hoalg::linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {msg}", path.display())]
    Parse { path: PathBuf, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("invariant failed: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io { .. } | CliError::Parse { .. } => 4,
        }
    }

    /// Prefixes the message with where it happened.
    pub fn context(self, what: &str) -> Self {
        match self {
            CliError::Validation(m) => CliError::Validation(format!("{what}: {m}")),
            CliError::Invariant(m) => CliError::Invariant(format!("{what}: {m}")),
            other => other,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<BarError> for CliError {
    fn from(e: BarError) -> Self {
        match e {
            BarError::Chain(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<HarrisonError> for CliError {
    fn from(e: HarrisonError) -> Self {
        match e {
            HarrisonError::QuotientNotPreserved(_) => CliError::Invariant(e.to_string()),
            HarrisonError::Chain(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ChevalleyError> for CliError {
    fn from(e: ChevalleyError) -> Self {
        match e {
            ChevalleyError::Chain(e) => e.into(),
            ChevalleyError::Linalg(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<KoszulError> for CliError {
    fn from(e: KoszulError) -> Self {
        match e {
            KoszulError::Chain(e) => e.into(),
            KoszulError::Linalg(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<GinftyError> for CliError {
    fn from(e: GinftyError) -> Self {
        match e {
            GinftyError::QuotientNotPreserved(..) => CliError::Invariant(e.to_string()),
            GinftyError::Chain(e) => e.into(),
            GinftyError::Linalg(e) => e.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}
