pub mod builders;
pub mod category;
pub mod cyclic;
pub mod dg;
pub mod error;
pub mod fixtures;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod morita;
pub mod report;
pub mod sayd;
pub mod scalar;
pub mod traces;
pub mod vanish;

pub use error::{Error, Result};
pub use scalar::Field;

/// Exact rationals, the default scalar.
pub type Q = num_rational::BigRational;
