//! File formats, rendering and the verification suite around
//! [`rauzy_core`].

pub mod commands;
pub mod config;
pub mod dto;
pub mod error;
pub mod svg;
pub mod verify;

pub use config::{FieldChoice, RunConfig};
pub use error::CliError;
pub use rauzy_core as core;
