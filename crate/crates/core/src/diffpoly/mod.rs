//! Laurent difference polynomials over Q with σ acting as the identity on constants.

mod monomial;
mod poly;
mod system;
mod vars;

pub use monomial::LaurentMonomial;
pub use poly::{rational_pow, DiffPoly, OrderStats};
pub use system::GenericSystem;
pub use vars::{coeff_name, parse_coeff_name, ShiftedVar, VarEntry, VarKind, VarTable};
