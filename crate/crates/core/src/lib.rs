//! Exact algebra over small commutative rings: multivariate polynomials
//! reduced modulo grid vanishing polynomials, interpolation and coefficient
//! recovery on grids, nonvanishing witnesses, ideal membership certificates
//! on finite grids, Zariski closure over finite rings, and a checker for
//! restricted-variable Chevalley–Warning statements.

pub mod caps;
pub mod chevalley;
pub mod error;
pub mod grid;
pub mod ideal;
pub mod poly;
pub mod ring;
pub mod textio;

pub use error::{Error, Result};
