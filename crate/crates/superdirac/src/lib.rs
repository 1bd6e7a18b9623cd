//! Exact λ-bracket calculus for Poisson vertex superalgebras and N=1 SUSY PVAs,
//! with Dirac reduction, modified Dirac reduction on quotients, and the
//! closed-form brackets of classical W-(super)algebras.

pub mod cli;
pub mod diffpoly;
pub mod dirac;
pub mod error;
pub mod goldens;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod pvsa;
pub mod sample;
pub mod susy;
pub mod report;
pub mod scalar;
pub mod series;
pub mod text;
pub mod w;

pub use diffpoly::{Alphabet, DiffPoly, Flavor, Mono, Var};
pub use error::{Error, Result};
pub use scalar::{Scalar, Q};
pub use series::{LMono, Series};
