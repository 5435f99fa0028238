//! Command-line front end and randomized verification suites for `U_n`.

pub mod commands;
pub mod expr;
pub mod gen;
pub mod suites;
