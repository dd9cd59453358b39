//! Exact combinatorics of truncation, reduction theory and torus character
//! sums for split reductive groups over function fields.

pub mod error;
pub mod linalg;
pub mod rootdata;

pub use error::{Error, Result};
pub use linalg::Q;
pub mod parabolic;
pub mod truncation;
pub mod polyhedra;
pub mod cyclotomic;
pub mod quasipoly;
pub mod charfield;
pub mod verify;
pub mod cli;
