pub mod cache;
pub mod chartab;
pub mod error;
pub mod f2sym;
pub mod kunneth;
pub mod modp;
pub mod pipeline;
pub mod pointcount;
pub mod report;
pub mod poly;
pub mod strata;
pub mod symmetric;
pub mod verify;

pub use error::{Error, Result};
