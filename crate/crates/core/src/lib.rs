//! Exact Clifford algebras, spin modules and cubic Dirac operators.
//!
//! All arithmetic happens in Q(√2, i). The crate builds the objects attached
//! to a reductive pair (Clifford algebra of the complement, α-map, cubic
//! element, spin module) and to a transitive triple of symmetric spaces, and
//! checks the Dirac operator embedding identity together with the complete
//! SL(2,R)×SL(2,R) example symbol by symbol.

pub mod clifford;
pub mod dirac;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod modules;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod spin;
pub mod suites;
pub mod triple;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, ExactVector};
pub use scalar::{ExactScalar, Rational};
