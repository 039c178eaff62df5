//! Serialization, fixtures and random network generation.

pub mod fixtures;
mod format;
mod generate;

pub use format::{
    load, parse_graph, save, validate_text, write_graph, LoadError, LoadErrorKind, FORMAT_VERSION,
};
pub use generate::{
    generate, random_division, random_profile, Draws, GenerateError, GeneratorConfig,
};
