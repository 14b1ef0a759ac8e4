pub mod algebra;
pub mod brauer;
pub mod crossed;
pub mod error;
pub mod extfield;
pub mod fields;
pub mod linalg;
pub mod padic;

pub use error::{Error, Result};
