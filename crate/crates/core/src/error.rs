use thiserror::Error;

use crate::lattice::Site;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),

    #[error("site ({}, {}, {}) is outside the window", .0.i, .0.j, .0.k)]
    OutOfWindow(Site),

    #[error("site ({}, {}, {}) has the wrong parity: expected {expected}", site.i, site.j, site.k)]
    Parity { site: Site, expected: &'static str },

    #[error("generator at ({}, {}, {}) is undefined: its support exits the window", .0.i, .0.j, .0.k)]
    UndefinedGenerator(Site),

    #[error("operands live in different contexts")]
    ContextMismatch,

    #[error("invalid operator spec: {0}")]
    InvalidOperator(String),

    #[error("syndrome has odd support; monopole sectors admit no dipole/quadrupole decomposition")]
    OddSupport,

    #[error("syndrome support is too close to the window boundary (margin {margin})")]
    NonBulk { margin: i64 },

    #[error("configuration violates a precondition: {0}")]
    Config(String),

    #[error("malformed JSON document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
