//! Front end for the jet-tower intersection engine: the expression
//! languages, the golden reference fixtures and the report driver behind
//! the `jetcalc` binary.

pub mod appendix;
pub mod expr;
pub mod fixtures;
pub mod jetexpr;
pub mod lex;

pub use appendix::{run_appendix, AppendixCase, AppendixReport, CheckLine};
pub use lex::ParseError;
