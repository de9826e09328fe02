//! Sparse difference resultants of Laurent difference polynomial systems over Q.

pub mod algsys;
pub mod ansatz;
pub mod diffpoly;
pub mod engine;
pub mod error;
pub mod io;
pub mod jacobi;
pub mod linalg;
pub mod mpoly;
pub mod order;
pub mod reduction;
pub mod support;
pub mod upoly;

pub use error::{Error, Result};
pub use order::Order;
