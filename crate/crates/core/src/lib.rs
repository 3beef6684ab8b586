//! Exact symbolic computation in the bounded derived category of coherent
//! sheaves on the projective line, its Kronecker-quiver model, and the
//! lattices of thick and cohomological localizing subcategories.

pub mod cli;
pub mod error;
pub mod exact;

pub mod kron;
pub mod lattice;
pub mod pureinj;
pub mod sheaf;
pub mod text;
pub mod tilt;

pub use error::{Error, Result};
