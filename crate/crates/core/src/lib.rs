//! Exact evaluation of truncation-compatible symmetric polynomial families at
//! the punctured cyclotomic cosine points `cos(2πk/n)`, `1 ≤ k ≤ n−1`.

pub mod error;
pub mod catalan;
pub mod dsl;
pub mod exactcore;
pub mod invariants;
pub mod oracle;
pub mod rigidity;
pub mod symfunc;

pub use error::{Error, Result};
pub use exactcore::{GaussianRational, Rational, Ring, Series, UniPoly};
