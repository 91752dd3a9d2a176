//! Exact intersection homology of triangulated stratified pseudomanifolds.

pub mod chain;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gen_position;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod pairing;
pub mod perverse_dga;
pub mod perversity;
pub mod product;
pub mod sign_oracle;
pub mod subdivision;

pub use error::{Error, Result};
