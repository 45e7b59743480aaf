//! Executable comma-category model structures.
//!
//! Given a Quillen adjunction `F ⊣ U` presented as computable data over a
//! decidable chain-complex backend, this crate builds the comma category
//! `M↓U`, classifies morphisms in all eight of its model structures, runs the
//! explicit factorization and lifting algorithms, constructs the monoidal,
//! abelian, and site structures, and verifies every axiom by exact
//! computation over F_p. There is no floating point and no approximation:
//! every check is a finite linear-algebra fact.
//!
//! The narrative guide lives in `book/`; its code snippets are compiled and
//! run as doc-tests through the [`guide`] module.

pub mod chain;
pub mod comma;
pub mod exact;
pub mod factor;
pub mod gen;
pub mod guide;
pub mod homotopy;
pub mod linalg;
pub mod monoidal;
pub mod report;

/// Errors surfaced by constructors and fallible operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid prime: {0}")]
    InvalidPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(i64),
    #[error("chain condition fails at degree {0}")]
    NotAChainMap(i64),
    #[error("comma square does not commute")]
    NotACommaMorphism,
    #[error("square does not commute")]
    NonCommutingSquare,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
