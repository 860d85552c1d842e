//! Session engine behind the `grosscalc` binary: a line-oriented command
//! interpreter over the expression evaluator, set cardinalities, series,
//! and sequence operations. The binary wires it to stdin/stdout; tests
//! drive it directly.

mod session;

pub use session::{parse_format, Outcome, Session};
