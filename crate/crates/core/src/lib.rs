pub mod analyzer;
pub mod corpus;
pub mod error;
pub mod evalcore;
pub mod numeric;
pub mod overapprox;
pub mod pseudopoly;
pub mod recdsl;

pub use error::{Error, Result};
