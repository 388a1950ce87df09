use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),

    #[error("elements belong to different Coxeter systems ({left} vs {right})")]
    SystemMismatch { left: String, right: String },

    #[error("element [{word}] is not a minimal coset representative for J = {{{subset}}}: s{descent} is a descent in J")]
    NotCosetRepresentative {
        word: String,
        subset: String,
        descent: usize,
    },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
