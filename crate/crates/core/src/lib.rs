//! Syzygies, Igusa-Todorov functions and Morita-context gluings for bound
//! quiver algebras over prime fields.

pub mod error;
pub mod exactfield;
pub mod pathalgebra;
pub mod repmod;
pub mod decomp;
pub mod homology;
pub mod grothendieck;
pub mod morita;
pub mod analysis;
pub mod cli;

pub use error::{Error, Result};
