use std::fmt;

use chainlab_core::Error as CoreError;

/// Process exit codes. Every failure path maps to exactly one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    /// A computed value disagrees with its expected value.
    Mismatch = 1,
    /// Malformed command line, group spec, system spec or input file.
    Parse = 2,
    /// A numerical residual exceeded its tolerance.
    Residual = 3,
    /// A theorem-violation certificate was produced.
    Theorem = 4,
    /// A closure cap or truncation window was exceeded.
    Cap = 5,
    /// A file could not be read.
    Io = 6,
    /// The request is outside what the lab supports (nonabelian Hilbert spaces).
    Unsupported = 7,
}

pub const EXIT_CODE_HELP: &str = "\
Exit codes:
  0  all checks passed
  1  verification mismatch (a computed value differs from the expected one)
  2  parse error (command line, group spec, system spec or input file)
  3  numerical residual above tolerance
  4  theorem-violation certificate
  5  closure cap or truncation window exceeded
  6  I/O error
  7  unsupported request (higher-dimensional Hilbert spaces in finite dimension)";

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(ExitCode::Parse, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::ClosureCapExceeded { .. } | CoreError::WindowTooSmall(_) => ExitCode::Cap,
            CoreError::NumericalResidual { .. } | CoreError::DegenerateSpectrum { .. } => ExitCode::Residual,
            CoreError::TheoremViolation(_) | CoreError::WellDefinednessViolation(_) => ExitCode::Theorem,
            CoreError::NonAbelianGroup => ExitCode::Unsupported,
            _ => ExitCode::Parse,
        };
        Self::new(code, e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
