//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (['*'] factor)*          juxtaposition is a product
//! factor  := '-' factor | power
//! power   := atom ['^' INT]
//! atom    := 'a' | 'ad' | 'N' | 'lambda' | INT | INT '/' INT
//!          | '(' expr ')' | 'ff' '(' expr ',' INT ')'
//! ```
//!
//! `N` is the number operator `ad a`; `ff(e, n)` is the degenerate falling
//! factorial `(e)_{n,λ}`. Whitespace is insignificant and the whole input
//! must be consumed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;
use weylstir_core::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `a`
    Annihilate,
    /// `ad`
    Create,
    /// `N`, shorthand for `ad a`
    Number,
    Lambda,
    Int(BigInt),
    Rational(Rational),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    /// `ff(e, n)`
    DegFall(Box<Expr>, u32),
}

impl Expr {
    fn negated(self) -> Expr {
        match self {
            Expr::Int(n) => Expr::Int(-n),
            Expr::Rational(q) => Expr::Rational(-q),
            other => Expr::Product(vec![Expr::Int(BigInt::from(-1)), other]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected one of: {}", .expected.join(", "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error(
        "non-literal exponent at byte {offset}: exponents must be nonnegative integer literals"
    )]
    NonLiteralExponent { offset: usize },
    #[error("lambda in operator position at byte {offset}: the order of ff(.., n) must be an integer literal")]
    LambdaInOperatorPosition { offset: usize },
    #[error("invalid number at byte {offset}: {reason}")]
    InvalidNumber { offset: usize, reason: &'static str },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::NonLiteralExponent { offset }
            | ParseError::LambdaInOperatorPosition { offset }
            | ParseError::InvalidNumber { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Unknown(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Ratio(p, q) => write!(f, "rational `{p}/{q}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Unknown(c) => write!(f, "character {c:?}"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(input: &str) -> Vec<(usize, Tok)> {
    let bytes: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        while j < bytes.len() && bytes[j].1.is_ascii_digit() {
            j += 1;
        }
        j
    };
    let slice = |from: usize, to: usize| {
        let start = bytes[from].0;
        let end = bytes.get(to).map_or(input.len(), |b| b.0);
        &input[start..end]
    };
    while i < bytes.len() {
        let (at, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let end = digits_from(i);
            let num: BigInt = slice(i, end).parse().expect("digits");
            let is_ratio =
                end + 1 < bytes.len() && bytes[end].1 == '/' && bytes[end + 1].1.is_ascii_digit();
            if is_ratio {
                let den_end = digits_from(end + 1);
                let den: BigInt = slice(end + 1, den_end).parse().expect("digits");
                i = den_end;
                Tok::Ratio(num, den)
            } else {
                i = end;
                Tok::Int(num)
            }
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].1.is_alphanumeric() || bytes[j].1 == '_') {
                j += 1;
            }
            let word = slice(i, j).to_string();
            i = j;
            Tok::Ident(word)
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                other => Tok::Unknown(other),
            }
        };
        out.push((at, tok));
    }
    out.push((input.len(), Tok::Eof));
    out
}

const OPERAND: &str = "operand (a, ad, N, lambda, number, `(`, ff)";

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            found: self.peek().to_string(),
            expected,
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Int(_) | Tok::Ratio(..) | Tok::LParen
        )
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(self.term()?.negated());
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_operand() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.negated());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Power(Box::new(base), small_literal(&n, at)?)),
            _ => Err(ParseError::NonLiteralExponent { offset: at }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ratio(p, q) => {
                self.bump();
                if q.is_zero() {
                    return Err(ParseError::InvalidNumber {
                        offset: at,
                        reason: "zero denominator",
                    });
                }
                let r = Rational::new(p, q);
                Ok(if r.denom().is_one() {
                    Expr::Int(r.to_integer())
                } else {
                    Expr::Rational(r)
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "a" => {
                    self.bump();
                    Ok(Expr::Annihilate)
                }
                "ad" => {
                    self.bump();
                    Ok(Expr::Create)
                }
                "N" => {
                    self.bump();
                    Ok(Expr::Number)
                }
                "lambda" | "λ" => {
                    self.bump();
                    Ok(Expr::Lambda)
                }
                "ff" => {
                    self.bump();
                    self.expect(Tok::LParen, "`(`")?;
                    let base = self.expr()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let order_at = self.offset();
                    let order = match self.bump() {
                        Tok::Int(n) => small_literal(&n, order_at)?,
                        Tok::Ident(s) if s == "lambda" || s == "λ" => {
                            return Err(ParseError::LambdaInOperatorPosition { offset: order_at })
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.error(vec!["integer literal"]));
                        }
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::DegFall(Box::new(base), order))
                }
                _ => Err(self.error(vec![OPERAND])),
            },
            _ => Err(self.error(vec![OPERAND])),
        }
    }
}

fn small_literal(n: &BigInt, offset: usize) -> Result<u32, ParseError> {
    u32::try_from(n).map_err(|_| ParseError::InvalidNumber {
        offset,
        reason: "literal does not fit in 32 bits",
    })
}

/// Parses a whole expression.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(input),
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(vec!["`+`", "`-`", "`*`", OPERAND, "end of input"]));
    }
    Ok(e)
}
