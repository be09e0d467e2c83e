//! Exact up/down Markov chains on strict partitions.
//!
//! The crate covers the combinatorics of shifted Young diagrams, Kerov
//! interlacing coordinates, multiplicative coherent measures, the algebra
//! of doubly symmetric functions with its Schur Q and factorial Q* bases,
//! the operators acting on it, exact transition matrices and their spectra,
//! and a seeded Monte Carlo engine for the limit on the simplex.
//!
//! Everything upstream of the limit module and the chain sampler is exact
//! rational arithmetic.

pub mod chains;
pub mod diagrams;
pub mod error;
pub mod gamma;
pub mod kerov;
pub mod limit;
pub mod linalg;
pub mod measures;
pub mod operators;
pub mod par;
pub mod rational;
pub mod report;
pub mod suites;
pub mod upoly;

pub use diagrams::{KerovCoordinates, StrictPartition};
pub use error::{Error, Result};
pub use par::Exec;
pub use rational::Rational;
