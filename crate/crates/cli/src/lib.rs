//! Command-line front end for `congrlat`: a parser for congruences written
//! the usual way (`2x + 7y - 6z ≡ -3 (mod 4)`) and the `check`, `count`,
//! `solve`, `enumerate` and `verify` commands.

pub mod commands;
pub mod parse;

pub use commands::{run, Cli, Io};
pub use parse::{parse_congruence, parse_system, render, ParseError, ParseErrors, ParsedInput};
