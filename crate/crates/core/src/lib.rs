//! Exact word algebras, shuffle-type products, transferred Hopf structures
//! and truncated q-series evaluators for (q-)multiple zeta values.

pub mod cli;
pub mod error;
pub mod hopf;
pub mod linear;
pub mod maps;
pub mod products;
pub mod qseries;
pub mod words;

pub use error::{MzvError, Result};
pub use linear::{LinComb, Rational};
pub use words::{Alphabet, Composition, Grading, Letter, Poly, Subspace, Word};
