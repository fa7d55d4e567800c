//! Free-group algorithms on Stallings graphs and Whitehead automorphisms,
//! with deciders for distance-two questions in the ellipticity graph of a
//! free group.

pub mod cli;
pub mod ellipticity;
pub mod error;
pub mod stallings;
mod union_find;
pub mod whitehead;
pub mod words;

pub use error::{Error, Result};
