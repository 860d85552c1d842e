//! Canonical text form for grossnumbers and extended values.
//!
//! The grammar round-trips through the expression parser: terms are sorted
//! by decreasing grosspower and joined with ` + ` / ` - `; a digit prints as
//! its minimal terminating decimal when one exists and as `p/q` otherwise
//! (`p/q` digits attach the denominator after the grossone part, `5G/6`, so
//! the text re-parses to the same value); `G^0` is omitted and `G^1` prints
//! as `G`; non-finite grosspowers are parenthesized recursively; power atoms
//! print as `base^(exponent)`. Zero prints as `0`.

use crate::extended::{EApprox, ExtTerm, ExtendedValue, PowAtom};
use crate::number::{GrossNumber, Term};
use crate::rational::Rational;

/// Output mode: exact digits, or digits rounded to a number of significant
/// decimal digits (display only; values are never changed by formatting).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatMode {
    Exact,
    Decimal(u32),
}

/// How the grossone part of one term prints.
enum GrossPart {
    /// Power zero: the digit stands alone.
    Omitted,
    /// `G` or `G^<rational>`.
    Bare(String),
    /// `G^(<grossnumber>)`.
    Parenthesized(String),
}

fn rational_body(value: &Rational, mode: FormatMode) -> String {
    match mode {
        FormatMode::Exact => value.to_string(),
        FormatMode::Decimal(digits) => value
            .round_significant(digits)
            .to_decimal_string()
            .expect("significant rounding yields a terminating decimal"),
    }
}

fn gross_part(power: &GrossNumber, mode: FormatMode) -> GrossPart {
    if power.is_zero() {
        return GrossPart::Omitted;
    }
    if power.is_one() {
        return GrossPart::Bare("G".to_string());
    }
    if let Some(rational) = power.as_finite_rational() {
        let rendered = rational_body(&rational, mode);
        if rendered.contains('/') {
            return GrossPart::Parenthesized(format!("G^({rendered})"));
        }
        return GrossPart::Bare(format!("G^{rendered}"));
    }
    GrossPart::Parenthesized(format!("G^({})", format_gross(power, mode)))
}

/// Renders one term as (is_negative, body-without-sign).
fn term_piece(term: &Term, mode: FormatMode) -> (bool, String) {
    let negative = term.digit().is_negative();
    let magnitude = term.digit().abs();
    let part = gross_part(term.power(), mode);
    let explicit_one = matches!(part, GrossPart::Parenthesized(_));
    let body = match part {
        GrossPart::Omitted => rational_body(&magnitude, mode),
        GrossPart::Bare(g) | GrossPart::Parenthesized(g) => {
            let digit_text = rational_body(&magnitude, mode);
            match digit_text.split_once('/') {
                // Fraction digits wrap around the grossone part: `5G/6`.
                Some((numer, denom)) => {
                    if numer == "1" && !explicit_one {
                        format!("{g}/{denom}")
                    } else {
                        format!("{numer}{g}/{denom}")
                    }
                }
                None => {
                    if magnitude.is_one() && !explicit_one {
                        g
                    } else {
                        format!("{digit_text}{g}")
                    }
                }
            }
        }
    };
    (negative, body)
}

fn join_pieces(pieces: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (index, (negative, body)) in pieces.into_iter().enumerate() {
        if index == 0 {
            if negative {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

/// Canonical text for a grossnumber.
pub fn format_gross(value: &GrossNumber, mode: FormatMode) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    join_pieces(value.terms().iter().map(|t| term_piece(t, mode)).collect())
}

fn atom_body(atom: &PowAtom, mode: FormatMode) -> String {
    let base = rational_body(atom.base(), mode);
    let base = if base.contains('/') {
        format!("({base})")
    } else {
        base
    };
    format!("{base}^({})", format_gross(atom.exponent(), mode))
}

fn ext_term_pieces(term: &ExtTerm, mode: FormatMode, pieces: &mut Vec<(bool, String)>) {
    if term.atoms().is_empty() {
        pieces.extend(term.coeff().terms().iter().map(|t| term_piece(t, mode)));
        return;
    }
    let atoms = term
        .atoms()
        .iter()
        .map(|a| atom_body(a, mode))
        .collect::<Vec<_>>()
        .join(" * ");
    let coeff = term.coeff();
    let piece = match coeff.terms() {
        [single] => {
            let (negative, body) = term_piece(single, mode);
            if coeff.is_one() || coeff.neg().is_one() {
                (negative, atoms)
            } else {
                (negative, format!("{body} * {atoms}"))
            }
        }
        _ => (false, format!("({}) * {atoms}", format_gross(coeff, mode))),
    };
    pieces.push(piece);
}

fn eapprox_body(record: &EApprox, mode: FormatMode) -> String {
    let inverse = &record.inverse_term;
    let digit = rational_body(inverse.digit(), mode);
    let power = match gross_part(inverse.power(), mode) {
        GrossPart::Omitted => "G^0".to_string(),
        GrossPart::Bare(g) | GrossPart::Parenthesized(g) => g,
    };
    let exponent = if record.exponent == GrossNumber::grossone() {
        "G".to_string()
    } else {
        format!("({})", format_gross(&record.exponent, mode))
    };
    format!("(1G^0 {digit}{power})^{exponent}")
}

/// Canonical text for an extended value.
pub fn format_extended(value: &ExtendedValue, mode: FormatMode) -> String {
    match value {
        ExtendedValue::Sum(terms) => {
            if terms.is_empty() {
                return "0".to_string();
            }
            let mut pieces = Vec::new();
            for term in terms {
                ext_term_pieces(term, mode, &mut pieces);
            }
            join_pieces(pieces)
        }
        ExtendedValue::EApprox(record) => eapprox_body(record, mode),
    }
}
