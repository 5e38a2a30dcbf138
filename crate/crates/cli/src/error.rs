use std::process::ExitCode;

use seqopt::cspath::PathError;
use seqopt::error::{NumbersError, ParseError};
use seqopt::oracle::OracleError;
use seqopt::pareto::ParetoError;
use seqopt::simulate::SimError;
use thiserror::Error;

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_ARITY: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("{0}")]
    Arity(String),
    /// A check ran to completion and did not hold; its report is already on stdout.
    #[error("check failed")]
    CheckFailed,
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Arity(_) => EXIT_ARITY,
            CliError::CheckFailed => EXIT_CHECK_FAILED,
        })
    }
}

impl From<NumbersError> for CliError {
    fn from(e: NumbersError) -> Self {
        match e {
            NumbersError::CombinationBudget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ParetoError> for CliError {
    fn from(e: ParetoError) -> Self {
        match e {
            ParetoError::ArityMismatch { .. } => CliError::Arity(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::Arity { .. } => CliError::Arity(e.to_string()),
            PathError::FrontBudget { .. } | PathError::LimitExceeded { .. } => CliError::Budget(e.to_string()),
            PathError::Pareto(p) => p.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Path(p) => p.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
