//! File formats, reports and the command-line front end over `quadcert-core`.

pub mod cli;
pub mod construct;
pub mod formats;
