//! Exact computations with Coxeter groups carrying a diagram involution:
//! twisted involutions, their Bruhat posets, interval homology and Poincaré
//! series.

pub mod coxeter;
pub mod error;
pub mod intmatrix;
pub mod poincare;
pub mod poset;
pub mod presets;
pub mod topology;
pub mod twisted;

pub use error::{Error, Result};
