//! Combinatorial models of toroidal crossing spaces over a field, the wall
//! bundles and joint compatibility conditions that cut out the sheaf of log
//! structures over the standard log point, log-singular loci, and
//! divisor-level blow-up resolutions, all in exact arithmetic.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod factor;
pub mod gtc;
pub mod intmat;
pub mod json;
pub mod ls;
pub mod lattice;
pub mod monoid;
pub mod plf;
pub mod resolution;
pub mod verify;
pub mod poly;

pub use error::{LogtcError, Result};
