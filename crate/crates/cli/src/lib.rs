//! Command-line front end for `weylstir-core`: an expression parser, an
//! evaluator into normal forms, output serializers and the subcommands.

pub mod app;
pub mod eval;
pub mod format;
pub mod parse;

pub use app::run;
pub use eval::evaluate;
pub use parse::{parse, Expr, ParseError};
