pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod hwv;
pub mod liealg;
pub mod linalg;
pub mod diagram;
pub mod partitions;
pub mod report;
pub mod rigidity;

pub use error::{Error, Result};
