//! Library half of the command-line interface: output formatting, the
//! subcommand bodies, and the verification suite. The binary adds
//! argument parsing and exit codes on top.

pub mod commands;
pub mod format;
pub mod reference;
pub mod verify;
