//! Reedy-cofibrant resolutions of dg-nerve simplices in bounded free
//! chain complexes over the integers.

pub mod cli;
pub mod complex;
pub mod error;
pub mod frames;
pub mod gen;
pub mod json;
pub mod linalg;
pub mod nerve;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};
