use std::fmt;

use gross_core::Rational;

use crate::Expr;

/// A syntax error with the byte position it was detected at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Gross,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    token: Token,
    position: usize,
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn lex(input: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(position, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '①' => Some(Token::Gross),
            _ => None,
        };
        if let Some(token) = simple {
            chars.next();
            tokens.push(Lexed { token, position });
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            let mut seen_dot = false;
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_digit() || (c == '.' && !seen_dot) {
                    seen_dot |= c == '.';
                    text.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            let value = Rational::parse_decimal(&text)
                .ok_or_else(|| err(position, format!("malformed number '{text}'")))?;
            tokens.push(Lexed {
                token: Token::Number(value),
                position,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    name.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            let token = if name == "G" {
                Token::Gross
            } else {
                Token::Ident(name)
            };
            tokens.push(Lexed { token, position });
            continue;
        }
        return Err(err(position, format!("unexpected character '{c}'")));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Lexed>,
    index: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|l| &l.token)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.index)
            .map_or(self.input_len, |l| l.position)
    }

    fn bump(&mut self) -> Option<&Token> {
        let token = self.tokens.get(self.index).map(|l| &l.token);
        if token.is_some() {
            self.index += 1;
        }
        token
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                // Juxtaposed grossone factor: `12G`, `0.7G^-3`.
                Some(Token::Gross) => {
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let exponent = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let position = self.position();
        match self.bump() {
            Some(Token::Number(value)) => Ok(Expr::Number(value.clone())),
            Some(Token::Gross) => Ok(Expr::Gross),
            Some(Token::Ident(name)) => Ok(Expr::Variable(name.clone())),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.position();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(_) => Err(err(position, "expected a number, 'G', a name, or '('")),
            None => Err(err(position, "unexpected end of input")),
        }
    }
}

/// Parses calculator input into a syntax tree.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = lex(input)?;
    let mut parser = Parser {
        tokens,
        index: 0,
        input_len: input.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(err(parser.position(), "unexpected trailing input"));
    }
    Ok(expr)
}
