pub mod error;
pub mod golod;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod resolution;

pub use error::{Error, Result};
