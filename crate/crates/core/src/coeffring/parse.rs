//! Tokenizer shared by the scalar and element grammars, and the scalar parser.
//!
//! Scalars: integers, generators `v v0 a y yb s l1 l2`, `+ - * / ^` with
//! integer exponents, parentheses.

use num_bigint::BigInt;

use super::frac::RatFunc;
use super::poly::Laurent;
use super::rational::Q;
use super::{ExtScalar, Scalar, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: usize,
}

pub struct Lexer {
    tokens: Vec<Token>,
    at: usize,
}

impl Lexer {
    pub fn new(text: &str) -> Result<Lexer> {
        let mut tokens = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let kind = match c {
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                ',' => TokenKind::Comma,
                d if d.is_ascii_digit() => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    // identifiers like `1p` start with a digit
                    if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                        while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                            i += 1;
                        }
                        tokens.push(Token {
                            kind: TokenKind::Ident(text[start..i].to_string()),
                            pos: start,
                        });
                        continue;
                    }
                    let n: BigInt = text[start..i].parse().unwrap();
                    tokens.push(Token { kind: TokenKind::Int(n), pos: start });
                    continue;
                }
                a if a.is_ascii_alphabetic() || a == '_' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    tokens.push(Token {
                        kind: TokenKind::Ident(text[start..i].to_string()),
                        pos: start,
                    });
                    continue;
                }
                other => {
                    return Err(Error::Parse { pos: i, msg: format!("unexpected character '{other}'") })
                }
            };
            tokens.push(Token { kind, pos: i });
            i += 1;
        }
        tokens.push(Token { kind: TokenKind::End, pos: text.len() });
        Ok(Lexer { tokens, at: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    pub fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.at].kind
    }

    pub fn peek_second(&self) -> &TokenKind {
        &self.tokens[(self.at + 1).min(self.tokens.len() - 1)].kind
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token> {
        if self.peek_kind() == kind {
            Ok(self.bump())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.peek().pos, msg: msg.into() }
    }

    pub fn pos(&self) -> usize {
        self.peek().pos
    }

    /// Integer exponent after `^`: `2`, `-1`, `(-3)`.
    pub fn exponent(&mut self) -> Result<i32> {
        let paren = self.eat(&TokenKind::LParen);
        let neg = if self.eat(&TokenKind::Minus) {
            true
        } else {
            self.eat(&TokenKind::Plus);
            false
        };
        let tok = self.bump();
        let n = match tok.kind {
            TokenKind::Int(n) => i32::try_from(n)
                .map_err(|_| Error::Parse { pos: tok.pos, msg: "exponent too large".into() })?,
            _ => return Err(Error::Parse { pos: tok.pos, msg: "expected integer exponent".into() }),
        };
        if paren {
            self.expect(&TokenKind::RParen, "')'")?;
        }
        Ok(if neg { -n } else { n })
    }
}

#[derive(Clone, Copy)]
enum Flavor {
    Base,
    Extended,
}

struct ScalarParser<'a> {
    lex: &'a mut Lexer,
    flavor: Flavor,
}

impl ScalarParser<'_> {
    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.lex.eat(&TokenKind::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.lex.eat(&TokenKind::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.lex.eat(&TokenKind::Star) {
                acc = acc.mul(&self.unary()?);
            } else if matches!(self.lex.peek_kind(), TokenKind::Slash) {
                let pos = self.lex.pos();
                self.lex.bump();
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::Parse { pos, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.lex.eat(&TokenKind::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.lex.eat(&TokenKind::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if matches!(self.lex.peek_kind(), TokenKind::Caret) {
            let pos = self.lex.pos();
            self.lex.bump();
            let e = self.lex.exponent()?;
            return base.pow(e).map_err(|_| Error::Parse { pos, msg: "zero to a negative power".into() });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let tok = self.lex.bump();
        match tok.kind {
            TokenKind::Int(n) => Ok(RatFunc::constant(Q::from(n))),
            TokenKind::Ident(name) => {
                let var = Var::from_name(&name)
                    .ok_or(Error::Parse { pos: tok.pos, msg: format!("unknown generator '{name}'") })?;
                match (self.flavor, var) {
                    (Flavor::Base, Var::S) => Err(Error::Parse {
                        pos: tok.pos,
                        msg: "s is only available in extended scalars".into(),
                    }),
                    (Flavor::Extended, Var::A) => Ok(RatFunc::from_poly(Laurent::monomial(
                        super::Mono::var(Var::S as usize, 2),
                        Q::from_int(-1),
                    ))),
                    _ => Ok(RatFunc::from_poly(Laurent::var(var as usize))),
                }
            }
            TokenKind::LParen => {
                let e = self.expr()?;
                self.lex.expect(&TokenKind::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(Error::Parse { pos: tok.pos, msg: "expected a number, generator or '('".into() }),
        }
    }
}

fn parse_with(text: &str, flavor: Flavor) -> Result<RatFunc> {
    let mut lex = Lexer::new(text)?;
    let mut p = ScalarParser { lex: &mut lex, flavor };
    let r = p.expr()?;
    if !matches!(lex.peek_kind(), TokenKind::End) {
        return Err(lex.error("unexpected trailing input"));
    }
    Ok(r)
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    Scalar::from_ratfunc(parse_with(text, Flavor::Base)?)
}

pub fn parse_ext_scalar(text: &str) -> Result<ExtScalar> {
    ExtScalar::from_ratfunc(parse_with(text, Flavor::Extended)?)
}
