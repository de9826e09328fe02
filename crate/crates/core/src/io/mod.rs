//! Text and JSON formats for systems and certificates.

pub mod json;
pub mod text;

pub use json::{certificate_to_json, emit_certificate, CertificateFormat};
pub use text::{format_poly, format_system, parse_document, parse_poly, parse_system, SystemDocument};
