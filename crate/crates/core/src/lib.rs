pub mod cli;
pub mod codes;
pub mod error;
pub mod gf;
pub mod groebner;
pub mod hilbert;
pub mod ideals;
pub mod mpoly;

pub use error::{Error, Result};
