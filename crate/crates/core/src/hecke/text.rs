//! Printing, the element grammar and structured records.
//!
//! Grammar: sums and products of terms such as `(v - v^-1)*T[0,1,0]`, where
//! `T[...]` is the product of the listed generators (`1p` for `t_1'`) and
//! `T[]` is the identity. Scalars use the scalar grammar. Functions:
//! `inv(h)`, `bar(h)`, `i(h)`, `tau(h)` and `pair(h1, h2)`; `h^k` for integer
//! `k` (negative powers of single terms only).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{HeckeAlgebra, HeckeElement};
use crate::coeffring::{Coeff, Lexer, Scalar, TokenKind, Var};
use crate::coxeter::{generator_name, parse_generator, CoxeterType};
use crate::error::{Error, Result};

fn needs_parens(s: &str) -> bool {
    s.contains(' ') || s.contains('/')
}

pub(crate) fn word_label(word: &[u8], ty: CoxeterType) -> String {
    word.iter().map(|&s| generator_name(s, ty)).collect::<Vec<_>>().join(",")
}

impl<R: Coeff> fmt::Display for HeckeElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let g = self.algebra().group();
        let ty = self.algebra().ty();
        let multi = self.len() > 1;
        for (k, (w, c)) in self.terms().iter().enumerate() {
            let cs = c.to_string();
            let body = if *w == 0 {
                if multi && needs_parens(&cs) {
                    format!("({cs})")
                } else {
                    cs
                }
            } else {
                let t = format!("T[{}]", word_label(g.word(*w), ty));
                if cs == "1" {
                    t
                } else if cs == "-1" {
                    format!("-{t}")
                } else if needs_parens(&cs) {
                    format!("({cs})*{t}")
                } else {
                    format!("{cs}*{t}")
                }
            };
            if k == 0 {
                f.write_str(&body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

struct ElementParser<'a> {
    lex: Lexer,
    alg: &'a Arc<HeckeAlgebra<Scalar>>,
}

type Elem = HeckeElement<Scalar>;

impl ElementParser<'_> {
    fn err(&self, pos: usize, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse { pos, msg: other.to_string() },
        }
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        loop {
            let pos = self.lex.pos();
            if self.lex.eat(&TokenKind::Plus) {
                let t = self.term()?;
                acc = acc.add(&t).map_err(|e| self.err(pos, e))?;
            } else if self.lex.eat(&TokenKind::Minus) {
                let t = self.term()?;
                acc = acc.sub(&t).map_err(|e| self.err(pos, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.lex.pos();
            if self.lex.eat(&TokenKind::Star) {
                let t = self.unary()?;
                acc = acc.mul(&t).map_err(|e| self.err(pos, e))?;
            } else if self.lex.eat(&TokenKind::Slash) {
                let d = self.unary()?;
                let c = as_scalar(&d).ok_or(Error::Parse { pos, msg: "division by a non-scalar".into() })?;
                let ci = c.inv().ok_or(Error::Parse { pos, msg: "division by zero".into() })?;
                acc = acc.scale(&ci);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.lex.eat(&TokenKind::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.lex.eat(&TokenKind::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        let pos = self.lex.pos();
        if self.lex.eat(&TokenKind::Caret) {
            let e = self.lex.exponent()?;
            let b = if e < 0 { base.inverse().map_err(|x| self.err(pos, x))? } else { base };
            return Ok(b.pow(e.unsigned_abs()));
        }
        Ok(base)
    }

    fn args(&mut self, n: usize) -> Result<Vec<Elem>> {
        self.lex.expect(&TokenKind::LParen, "'('")?;
        let mut out = vec![self.expr()?];
        while out.len() < n {
            self.lex.expect(&TokenKind::Comma, "','")?;
            out.push(self.expr()?);
        }
        self.lex.expect(&TokenKind::RParen, "')'")?;
        Ok(out)
    }

    fn word(&mut self) -> Result<Vec<u8>> {
        self.lex.expect(&TokenKind::LBracket, "'['")?;
        let ty = self.alg.ty();
        let mut word = Vec::new();
        loop {
            let tok = self.lex.bump();
            let label = match &tok.kind {
                TokenKind::RBracket => return Ok(word),
                TokenKind::Comma if !word.is_empty() => continue,
                TokenKind::Int(n) => n.to_string(),
                TokenKind::Ident(s) => s.clone(),
                _ => return Err(Error::Parse { pos: tok.pos, msg: "expected a generator".into() }),
            };
            let s = parse_generator(&label, ty).map_err(|e| self.err(tok.pos, e))?;
            if !self.alg.ctx().is_generator(s) {
                return Err(Error::Parse {
                    pos: tok.pos,
                    msg: format!("{label} is not a generator of {}", self.alg.ctx()),
                });
            }
            word.push(s);
        }
    }

    fn atom(&mut self) -> Result<Elem> {
        let tok = self.lex.bump();
        let pos = tok.pos;
        match tok.kind {
            TokenKind::Int(n) => Ok(Elem::scalar(self.alg, int_scalar(n))),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.lex.expect(&TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::Ident(name) => match name.as_str() {
                "T" => {
                    let w = self.word()?;
                    Elem::word(self.alg, &w).map_err(|e| self.err(pos, e))
                }
                "inv" => {
                    let a = self.args(1)?;
                    a[0].inverse().map_err(|e| self.err(pos, e))
                }
                "bar" => Ok(self.args(1)?[0].bar()),
                "i" => Ok(self.args(1)?[0].anti_i()),
                "tau" => {
                    let a = self.args(1)?;
                    Ok(Elem::scalar(self.alg, a[0].tau()))
                }
                "pair" => {
                    let a = self.args(2)?;
                    let p = a[0].pairing(&a[1]).map_err(|e| self.err(pos, e))?;
                    Ok(Elem::scalar(self.alg, p))
                }
                _ => match Var::from_name(&name) {
                    Some(Var::S) | Some(Var::L1) | Some(Var::L2) | None => {
                        Err(Error::Parse { pos, msg: format!("unknown name '{name}'") })
                    }
                    Some(v) => Ok(Elem::scalar(self.alg, Scalar::var(v))),
                },
            },
            _ => Err(Error::Parse { pos, msg: "expected a term".into() }),
        }
    }
}

fn int_scalar(n: BigInt) -> Scalar {
    Scalar::from_q(crate::coeffring::Q::from(n))
}

fn as_scalar(h: &Elem) -> Option<Scalar> {
    match h.terms() {
        [] => Some(Scalar::zero()),
        [(0, c)] => Some(c.clone()),
        _ => None,
    }
}

pub fn parse_element(alg: &Arc<HeckeAlgebra<Scalar>>, text: &str) -> Result<HeckeElement<Scalar>> {
    let mut p = ElementParser { lex: Lexer::new(text)?, alg };
    let e = p.expr()?;
    if !matches!(p.lex.peek_kind(), TokenKind::End) {
        return Err(p.lex.error("unexpected trailing input"));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: String,
    pub coeff: String,
}

/// Serialized element: type, rank, parameter mode and terms in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    #[serde(rename = "type")]
    pub ty: CoxeterType,
    pub rank: usize,
    pub mode: String,
    pub terms: Vec<TermRecord>,
}

impl<R: Coeff> HeckeElement<R> {
    pub fn to_record(&self) -> ElementRecord {
        let alg = self.algebra();
        let g = alg.group();
        ElementRecord {
            ty: alg.ty(),
            rank: alg.rank(),
            mode: alg.mode_label().to_string(),
            terms: self
                .terms()
                .iter()
                .map(|(w, c)| TermRecord { word: word_label(g.word(*w), alg.ty()), coeff: c.to_string() })
                .collect(),
        }
    }
}

impl HeckeElement<Scalar> {
    pub fn from_record(alg: &Arc<HeckeAlgebra<Scalar>>, rec: &ElementRecord) -> Result<Self> {
        if rec.ty != alg.ty() || rec.rank != alg.rank() || rec.mode != alg.mode_label() {
            return Err(Error::ContextMismatch(format!(
                "record {}{} {} vs {alg:?}",
                rec.ty, rec.rank, rec.mode
            )));
        }
        let g = alg.group();
        let terms = rec
            .terms
            .iter()
            .map(|t| {
                let word = crate::coxeter::parse_word(&t.word, alg.ty())?;
                let w = g.index_of_word(&word)?;
                if g.length(w) != word.len() {
                    return Err(Error::Domain(format!("word {} is not reduced", t.word)));
                }
                Ok((w, Scalar::parse(&t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(alg, terms))
    }
}
