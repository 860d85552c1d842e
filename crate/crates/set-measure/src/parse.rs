//! Surface syntax for set expressions: `N(k,n)` for progressions,
//! `{a,b,c}` for finite sets, `|` union, `&` intersection, `\` difference,
//! and parentheses. `&` binds tighter than `\`, which binds tighter than
//! `|`; all three associate left.

use std::collections::BTreeSet;
use std::iter::Peekable;
use std::str::CharIndices;

use crate::{Progression, SetError, SetExpr};

struct Cursor<'a> {
    chars: Peekable<CharIndices<'a>>,
    len: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|(_, c)| *c)
    }

    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.chars.peek().map_or(self.len, |(i, _)| *i)
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next().map(|(_, c)| c)
    }

    fn expect(&mut self, wanted: char) -> Result<(), SetError> {
        let pos = self.pos();
        match self.bump() {
            Some(c) if c == wanted => Ok(()),
            got => Err(SetError::Parse(format!(
                "expected '{wanted}' at position {pos}, found {}",
                got.map_or("end of input".to_string(), |c| format!("'{c}'"))
            ))),
        }
    }

    fn integer(&mut self) -> Result<u64, SetError> {
        let pos = self.pos();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap().1);
        }
        digits
            .parse()
            .map_err(|_| SetError::Parse(format!("expected an integer at position {pos}")))
    }
}

/// Parses the set-expression syntax used by the `:card` command.
pub fn parse_set_expr(input: &str) -> Result<SetExpr, SetError> {
    let mut cursor = Cursor {
        chars: input.char_indices().peekable(),
        len: input.len(),
    };
    let expr = parse_union(&mut cursor)?;
    let pos = cursor.pos();
    if cursor.bump().is_some() {
        return Err(SetError::Parse(format!(
            "unexpected trailing input at position {pos}"
        )));
    }
    Ok(expr)
}

fn parse_union(cursor: &mut Cursor) -> Result<SetExpr, SetError> {
    let mut expr = parse_difference(cursor)?;
    while cursor.peek() == Some('|') {
        cursor.bump();
        let rhs = parse_difference(cursor)?;
        expr = SetExpr::Union(Box::new(expr), Box::new(rhs));
    }
    Ok(expr)
}

fn parse_difference(cursor: &mut Cursor) -> Result<SetExpr, SetError> {
    let mut expr = parse_intersection(cursor)?;
    while cursor.peek() == Some('\\') {
        cursor.bump();
        let rhs = parse_intersection(cursor)?;
        expr = SetExpr::Difference(Box::new(expr), Box::new(rhs));
    }
    Ok(expr)
}

fn parse_intersection(cursor: &mut Cursor) -> Result<SetExpr, SetError> {
    let mut expr = parse_atom(cursor)?;
    while cursor.peek() == Some('&') {
        cursor.bump();
        let rhs = parse_atom(cursor)?;
        expr = SetExpr::Intersection(Box::new(expr), Box::new(rhs));
    }
    Ok(expr)
}

fn parse_atom(cursor: &mut Cursor) -> Result<SetExpr, SetError> {
    let pos = cursor.pos();
    match cursor.peek() {
        Some('N') => {
            cursor.bump();
            cursor.expect('(')?;
            let offset = cursor.integer()?;
            cursor.expect(',')?;
            let step = cursor.integer()?;
            cursor.expect(')')?;
            Ok(SetExpr::Progression(Progression::new(offset, step)?))
        }
        Some('{') => {
            cursor.bump();
            let mut values = BTreeSet::new();
            if cursor.peek() == Some('}') {
                cursor.bump();
                return Ok(SetExpr::Finite(values));
            }
            loop {
                values.insert(cursor.integer()?);
                match cursor.bump() {
                    Some(',') => continue,
                    Some('}') => break,
                    _ => {
                        return Err(SetError::Parse(format!(
                            "expected ',' or '}}' in finite set near position {pos}"
                        )))
                    }
                }
            }
            Ok(SetExpr::Finite(values))
        }
        Some('(') => {
            cursor.bump();
            let expr = parse_union(cursor)?;
            cursor.expect(')')?;
            Ok(expr)
        }
        _ => Err(SetError::Parse(format!(
            "expected 'N(k,n)', a finite set, or '(' at position {pos}"
        ))),
    }
}
