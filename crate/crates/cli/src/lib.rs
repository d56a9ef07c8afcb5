//! Library side of the `mudeg` command-line tool: the group-expression
//! language, the commands, reports and the lattice cache.

pub mod cache;
pub mod commands;
pub mod expr;
pub mod hunt;
pub mod report;
pub mod verify;

use mudeg_core::Error;

pub use expr::{parse_group, ExprError, GroupExpr};

/// Exit codes shared by every command.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const RESOURCE_CAP: i32 = 2;
    pub const PARSE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Expr(_) => exit::PARSE,
            CliError::Core(e) => match e {
                Error::OrderCap { .. } | Error::SubgroupCap { .. } | Error::CosetCap { .. } => {
                    exit::RESOURCE_CAP
                }
                Error::CycleSyntax(_)
                | Error::PresentationSyntax { .. }
                | Error::LetterOutOfRange { .. }
                | Error::InvalidParameter(_) => exit::PARSE,
                _ => exit::CHECK_FAILED,
            },
            CliError::Io { .. } => exit::CHECK_FAILED,
        }
    }
}
