pub mod error;
pub mod exact;
pub mod gz;
pub mod harish_chandra;
pub mod mellin_barnes;
pub mod qism;
pub mod report;
pub mod separation;
pub mod special;
pub mod toda_oracle;
pub mod weyl;

pub use error::{Error, Result};
