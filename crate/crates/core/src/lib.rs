pub mod chaincx;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod formcore;
pub mod functors;
pub mod random;
pub mod spaces;
pub mod surgery;

pub use error::{Error, Result};
