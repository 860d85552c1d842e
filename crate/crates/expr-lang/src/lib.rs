//! The calculator's expression language: a recursive-descent parser for
//! grossnumber expressions and an evaluator folding the syntax tree with
//! exact arithmetic.
//!
//! Grammar (precedence from loosest to tightest):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor | juxtaposed-G-factor)*
//! factor := "-" factor | atom ("^" factor)?
//! atom   := number | "G" | identifier | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus. A factor
//! starting with `G` may directly follow another factor (`12G^12`), which
//! multiplies; the Unicode circled-one is accepted as an alias for `G` on
//! input. Numbers are decimal literals parsed exactly.

mod eval;
mod parser;

pub use eval::{eval, Environment, EvalError, EvalOptions};
pub use parser::{parse, ParseError};

use gross_core::{format_extended, ExtendedValue, FormatMode, Rational};

/// Parsed syntax tree of calculator input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    /// The grossone symbol.
    Gross,
    Variable(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

/// Canonical text for a value; see the display grammar in `gross-core`.
pub fn format_value(value: &ExtendedValue, mode: FormatMode) -> String {
    format_extended(value, mode)
}
