//! Command implementations behind the `powsum` binary. Each returns a
//! [`RunReport`] that renders as text or JSON.

pub mod commands;
pub mod error;
pub mod prove;
pub mod report;
pub mod settings;

pub use error::CliError;
pub use report::{RunReport, Verdict};
pub use settings::{Overrides, Settings};
