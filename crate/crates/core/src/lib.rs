//! Eigenvalue inequalities for sums of Hermitian matrices under the matrix
//! order `C ≤ A(1) + … + A(m)`.
//!
//! The crate builds the inequality lists from Littlewood-Richardson
//! coefficients ([`lr`], [`horn`]), decides and certifies feasibility
//! ([`feasibility`]), constructs numerical witness matrices ([`witness`]),
//! tests irredundancy of the lists by exact linear programming
//! ([`minimality`]), and provides a brute-force oracle over finite modules
//! on a discrete valuation ring ([`dvr`]).

pub mod dvr;
pub mod error;
pub mod feasibility;
pub mod horn;
pub mod lr;
pub mod minimality;
pub mod scalar;
pub mod simplex;
pub mod sweep;
pub mod witness;

pub use error::{Error, Result};
