use std::fmt;

use lefschetz_core::Error;

/// Exit codes: 0 success, 1 negative verdict or verification mismatch, 2 bad input,
/// 3 not Artinian, 4 non-generic sample, 5 internal consistency failure.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERDICT_FALSE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const NOT_ARTINIAN: u8 = 3;
    pub const GENERICITY: u8 = 4;
    pub const INTERNAL: u8 = 5;
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed spec file or arguments.
    Parse(String),
    Io(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => exit::INPUT,
            CliError::Core(e) => match e {
                Error::NotArtinian { .. } => exit::NOT_ARTINIAN,
                Error::Genericity(_) => exit::GENERICITY,
                Error::Inconsistent(_) => exit::INTERNAL,
                Error::ZeroForm | Error::VarCountMismatch { .. } | Error::InvalidInput(_) | Error::NotPowerIdeal => {
                    exit::INPUT
                }
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
