//! Exact divisor calculus on the quintic del Pezzo surface and its weak
//! degenerations, together with the cover numerology and case enumerations
//! built on top of it.

pub mod casework;
pub mod cohomology;
pub mod config;
pub mod contraction;
pub mod covers;
pub mod curves;
pub mod error;
pub mod golden;
pub mod lattice;
pub mod scenario;
pub mod linalg;
pub mod symmetry;

pub use config::Configuration;
pub use error::{Error, Result};
pub use lattice::{Basis, DivisorClass, QDivisorClass};
