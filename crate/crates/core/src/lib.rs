//! Exact Maclaurin coefficients for powers of inverse (hyperbolic) sine and
//! tangent, the Stirling sum `Q(m,k;α)`, partial Bell polynomials, and a
//! numeric evaluator for the generalized logsine function.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod expansions;
pub mod identities;
pub mod logsine;
pub mod exact;
pub mod series;

pub use error::{Error, Result};
pub use exact::{Coeff, PiPoly, Rational};
pub use series::Series;
