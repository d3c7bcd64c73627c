pub mod cli;
pub mod error;
pub mod ramsey;
pub mod syndetic;
pub mod suite;
pub mod systems;
pub mod tower;
pub mod uniformity;

mod cover;

pub use error::{Error, Result};
