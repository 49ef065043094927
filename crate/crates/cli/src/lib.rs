//! Command-line front end and HTTP service for `aflayer`.

pub mod request;
pub mod service;

pub use request::{solve, verify, SolveError, SolveRequest, VerifyReport};

/// Reads a palette override file (TOML, keys as in the document palette).
pub fn load_palette(text: &str) -> Result<aflayer::Palette, toml::de::Error> {
    toml::from_str(text)
}
