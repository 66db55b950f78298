//! Iwahori-Hecke algebras of types A, B and D over exact coefficient rings,
//! their Jucys-Murphy elements and central elements, the Markov traces they
//! represent, and link invariants of braid closures.

pub mod coeffring;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod jmtower;
pub mod links;
pub mod markov;
pub mod report;
pub mod sample;
pub mod suites;

pub use coeffring::{Coeff, ExtScalar, Scalar, Symbolic, Var, ZipPoint, ZipScalar};
pub use error::{Error, Result};
