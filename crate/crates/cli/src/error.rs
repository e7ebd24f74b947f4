//! Front-end failures: expression syntax, name resolution, and passthrough
//! of module errors from the core crate.

use std::fmt;

use distcalc_core::Error as ModuleError;

#[derive(Debug, Clone)]
pub enum CliError {
    /// The expression text failed to parse; `offset` is a byte index into
    /// the input.
    Syntax { offset: usize, expected: String },
    /// An identifier that names nothing in any sub-language.
    UnknownName { identifier: String },
    /// An error from the core modules, forwarded verbatim.
    Module(ModuleError),
}

impl CliError {
    /// Stable kind tag for structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "SyntaxError",
            CliError::UnknownName { .. } => "UnknownName",
            CliError::Module(e) => e.kind(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax { offset, expected } => {
                write!(f, "syntax error at byte {offset}: expected {expected}")
            }
            CliError::UnknownName { identifier } => write!(f, "unknown name: {identifier}"),
            CliError::Module(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        CliError::Module(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Shorthand for precondition failures detected by the front end itself.
pub fn unsupported(reason: impl Into<String>) -> CliError {
    CliError::Module(ModuleError::Unsupported {
        reason: reason.into(),
    })
}
