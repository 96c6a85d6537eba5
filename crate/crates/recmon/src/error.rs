use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("action `{0}` is not in the alphabet")]
    UnknownAction(String),
    #[error("`tau` is reserved and cannot be used as an observable action")]
    ReservedTau,
    #[error("alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("formula is not guarded: variable `{0}` occurs outside any modality in its binder")]
    Unguarded(String),
    #[error("free variable `{0}`")]
    FreeVariable(String),
    #[error("finite trace given where an infinite (lasso) trace is required")]
    FiniteTrace,
    #[error("formula outside the required fragment: {0}")]
    Fragment(String),
    #[error("monitor is not reactive")]
    NotReactive,
    #[error("monitor is inconsistent: it can both accept and reject `{0}`")]
    Inconsistent(String),
    #[error("monitor outside the required class: {0}")]
    MonitorClass(String),
    #[error("state cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// A stable machine-readable name for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::UnknownAction(_) => "unknown_action",
            Error::ReservedTau => "reserved_tau",
            Error::EmptyAlphabet => "empty_alphabet",
            Error::Unguarded(_) => "unguarded",
            Error::FreeVariable(_) => "free_variable",
            Error::FiniteTrace => "finite_trace",
            Error::Fragment(_) => "fragment",
            Error::NotReactive => "not_reactive",
            Error::Inconsistent(_) => "inconsistent",
            Error::MonitorClass(_) => "monitor_class",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::Stage { source, .. } => source.code(),
            Error::Io(_) => "io",
        }
    }

    /// True when the error is (or wraps) a cap overflow.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::CapExceeded(_) => true,
            Error::Stage { source, .. } => source.is_cap(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
