pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod habiro;
pub mod homcob;
pub mod jacobi;
pub mod linalg;
pub mod poly;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
