//! Pluricanonical maps of varieties isogenous to a product of curves with
//! an abelian group action, and their classification.

pub mod chevalley_weil;
pub mod classification;
pub mod covering;
pub mod datum_file;
pub mod decomposition;
pub mod error;
pub mod galois;
pub mod groups;
pub mod invariants;
pub mod maps;

pub use error::{Error, Result};
