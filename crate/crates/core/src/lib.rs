pub mod error;
pub mod kernel;

pub use error::{Error, Result};
pub mod boson;
pub mod expr;
pub mod genfun;
pub mod stirling;
pub mod verify;
