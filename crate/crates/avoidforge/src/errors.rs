//! Tool-level errors and their exit codes.

use avoidforge_core::avoid::AvoidError;
use avoidforge_core::cnf::CnfError;
use avoidforge_core::extract::ExtractError;
use avoidforge_core::game::GameError;
use avoidforge_core::gens::GenError;
use avoidforge_core::gf2core::CircuitError;
use avoidforge_core::parred::{ProofError, ReductionError, RefuteError, TransformError};
use thiserror::Error;

use crate::config::ConfigError;
use crate::formats::FormatError;

#[derive(Debug, Error)]
pub enum ToolError {
    /// Bad arguments, unreadable or malformed input.
    #[error("{0}")]
    Usage(String),
    /// A size limit was hit.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A checker rejected its input.
    #[error("verification failed: {0}")]
    Verify(String),
}

impl ToolError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Usage(_) => 2,
            ToolError::Budget(_) => 3,
            ToolError::Verify(_) => 1,
        }
    }
}

/// Whether an error (or one it wraps) is a size-limit error.
pub trait IsBudget {
    fn is_budget(&self) -> bool;
}

impl IsBudget for CircuitError {
    fn is_budget(&self) -> bool {
        matches!(self, CircuitError::BudgetExceeded { .. })
    }
}

impl IsBudget for GenError {
    fn is_budget(&self) -> bool {
        matches!(self, GenError::Circuit(e) if e.is_budget())
    }
}

impl IsBudget for ExtractError {
    fn is_budget(&self) -> bool {
        matches!(self, ExtractError::BudgetExceeded { .. })
    }
}

impl IsBudget for AvoidError {
    fn is_budget(&self) -> bool {
        match self {
            AvoidError::BudgetExceeded { .. } => true,
            AvoidError::Circuit(e) => e.is_budget(),
            AvoidError::Extract(e) => e.is_budget(),
            _ => false,
        }
    }
}

impl IsBudget for CnfError {
    fn is_budget(&self) -> bool {
        match self {
            CnfError::BudgetExceeded { .. } => true,
            CnfError::Circuit(e) => e.is_budget(),
            _ => false,
        }
    }
}

impl IsBudget for RefuteError {
    fn is_budget(&self) -> bool {
        matches!(self, RefuteError::WidthTooLarge(_))
            || matches!(self, RefuteError::Cnf(e) if e.is_budget())
    }
}

impl IsBudget for ReductionError {
    fn is_budget(&self) -> bool {
        match self {
            ReductionError::Avoid(e) => e.is_budget(),
            ReductionError::Cnf(e) => e.is_budget(),
            ReductionError::Extract(e) => e.is_budget(),
            ReductionError::Refute(e) => e.is_budget(),
            _ => false,
        }
    }
}

impl IsBudget for GameError {
    fn is_budget(&self) -> bool {
        match self {
            GameError::BudgetExceeded { .. } => true,
            GameError::Circuit(e) => e.is_budget(),
            GameError::Avoid(e) => e.is_budget(),
            GameError::Extract(e) => e.is_budget(),
            _ => false,
        }
    }
}

macro_rules! classify {
    ($($t:ty),*) => {$(
        impl From<$t> for ToolError {
            fn from(e: $t) -> Self {
                if e.is_budget() {
                    ToolError::Budget(e.to_string())
                } else {
                    ToolError::Usage(e.to_string())
                }
            }
        }
    )*};
}

classify!(
    CircuitError,
    GenError,
    ExtractError,
    AvoidError,
    CnfError,
    RefuteError,
    ReductionError,
    GameError
);

impl From<ProofError> for ToolError {
    fn from(e: ProofError) -> Self {
        ToolError::Verify(e.to_string())
    }
}

impl From<TransformError> for ToolError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::BoundExceeded { .. } => ToolError::Budget(e.to_string()),
            TransformError::ReductionInvalid(_) | TransformError::ProofInvalid(_) => {
                ToolError::Verify(e.to_string())
            }
            TransformError::EmptySource => ToolError::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for ToolError {
    fn from(e: FormatError) -> Self {
        ToolError::Usage(e.to_string())
    }
}

impl From<ConfigError> for ToolError {
    fn from(e: ConfigError) -> Self {
        ToolError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for ToolError {
    fn from(e: std::io::Error) -> Self {
        ToolError::Usage(e.to_string())
    }
}
