//! Exact arithmetic on grossnumbers: numbers written in a positional system
//! whose radix is the infinite unit `G` (grossone), the number of elements of
//! the set of natural numbers.
//!
//! A grossnumber is a finite sum of terms `digit * G^power` where digits are
//! exact rationals and powers are themselves grossnumbers, so a single value
//! can carry infinite, finite, and infinitesimal parts at once. All
//! operations are pure and exact; nothing is ever approximated by floats.
//!
//! Quantities that fall outside the positional form (such as `b^G` with a
//! finite base and infinite exponent) are kept symbolically as power atoms in
//! an [`ExtendedValue`].

mod display;
mod error;
mod extended;
mod number;
mod rational;

pub use display::{format_extended, format_gross, FormatMode};
pub use error::Error;
pub use extended::{rational_pow, EApprox, ExtTerm, ExtendedOrdering, ExtendedValue, PowAtom};
pub use number::{Division, DivisionStep, GrossNumber, NumberClass, Parity, Term};
pub use rational::Rational;
