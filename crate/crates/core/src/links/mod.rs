//! Braid words, their images in Hecke algebras, and normalized invariants
//! of their closures.
//!
//! Text format: whitespace-separated signed indices, `-3` for `sigma_3^-1`,
//! `0` for `sigma_0` (type B) and `0^-1` for its inverse; `e` alone is the
//! empty word. Batches start with a header `strands=<n> type=<A|B>` and
//! hold one word per line; `#` starts a comment.

mod checks;
mod invariant;

pub use checks::{
    annular_move_check, markov_move_check, random_word, skein_batch, skein_check, LinkCheckMode,
};
pub use invariant::{annular_invariant, homfly, Evaluator, Invariant, Normalization};

use std::fmt;
use std::sync::Arc;

use crate::coeffring::Coeff;
use crate::coxeter::CoxeterType;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};

/// `sigma_gen` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u8, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.gen, self.inverse) {
            (0, true) => f.write_str("0^-1"),
            (g, true) => write!(f, "-{g}"),
            (g, false) => write!(f, "{g}"),
        }
    }
}

/// A word in the braid group of type A (`sigma_1 .. sigma_{n-1}`) or type B
/// (`sigma_0 .. sigma_{n-1}`) on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    ty: CoxeterType,
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(ty: CoxeterType, strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if ty == CoxeterType::D {
            return Err(Error::Domain("braid words are of type A or B".into()));
        }
        if strands == 0 {
            return Err(Error::OutOfRange("0 strands".into()));
        }
        let lo = if ty == CoxeterType::A { 1 } else { 0 };
        if let Some(l) = letters.iter().find(|l| (l.gen as usize) < lo || l.gen as usize >= strands) {
            return Err(Error::OutOfRange(format!("generator {} on {strands} strands of type {ty}", l.gen)));
        }
        Ok(BraidWord { ty, strands, letters })
    }

    pub fn parse(text: &str, ty: CoxeterType, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for (pos, tok) in tokens(text) {
            let bad = |msg: String| Error::Parse { pos, msg };
            if tok == "e" {
                continue;
            }
            let (body, inverse) = if let Some(b) = tok.strip_suffix("^-1") {
                (b, true)
            } else if let Some(b) = tok.strip_prefix('-') {
                if b == "0" {
                    return Err(bad("write sigma_0^-1 as 0^-1".into()));
                }
                (b, true)
            } else {
                (tok, false)
            };
            let gen: u8 = body.parse().map_err(|_| bad(format!("bad letter '{tok}'")))?;
            letters.push(Letter { gen, inverse });
        }
        Self::new(ty, strands, letters)
    }

    pub fn ty(&self) -> CoxeterType {
        self.ty
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum over the stabilizable letters: all letters in type A,
    /// letters of index `>= 1` in type B.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().filter(|l| self.ty == CoxeterType::A || l.gen >= 1).map(|l| l.sign()).sum()
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|l| l.inv()).collect();
        BraidWord { letters, ..self.clone() }
    }

    /// `w b w^-1`.
    pub fn conjugate(&self, w: &BraidWord) -> Result<Self> {
        self.same_group(w)?;
        let mut letters = w.letters.clone();
        letters.extend_from_slice(&self.letters);
        letters.extend(w.inverse().letters);
        Ok(BraidWord { letters, ..self.clone() })
    }

    /// `b sigma_n^{+-1}` on `n + 1` strands.
    pub fn stabilize(&self, inverse: bool) -> Self {
        let mut letters = self.letters.clone();
        letters.push(Letter { gen: self.strands as u8, inverse });
        BraidWord { ty: self.ty, strands: self.strands + 1, letters }
    }

    /// The word with `l` inserted before position `pos`.
    pub fn insert(&self, pos: usize, l: Letter) -> Result<Self> {
        if pos > self.letters.len() {
            return Err(Error::OutOfRange(format!("slot {pos} in a word of length {}", self.len())));
        }
        let mut letters = self.letters.clone();
        letters.insert(pos, l);
        Self::new(self.ty, self.strands, letters)
    }

    fn same_group(&self, o: &BraidWord) -> Result<()> {
        if self.ty != o.ty || self.strands != o.strands {
            return Err(Error::ContextMismatch(format!(
                "{}{} vs {}{}",
                self.ty, self.strands, o.ty, o.strands
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut i = 0;
    std::iter::from_fn(move || {
        let start = i + text[i..].find(|c: char| !c.is_whitespace())?;
        let end = text[start..].find(char::is_whitespace).map_or(text.len(), |k| start + k);
        i = end;
        Some((start, &text[start..end]))
    })
}

/// Words of a batch file.
pub fn parse_batch(text: &str) -> Result<Vec<BraidWord>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((_, header)) = lines.next() else { return Ok(Vec::new()) };
    let (mut strands, mut ty) = (None, None);
    for field in header.split_whitespace() {
        let bad = || Error::Parse { pos: 0, msg: format!("bad header field '{field}'") };
        match field.split_once('=').ok_or_else(bad)? {
            ("strands", n) => strands = Some(n.parse::<usize>().map_err(|_| bad())?),
            ("type", t) => ty = Some(t.parse::<CoxeterType>()?),
            _ => return Err(bad()),
        }
    }
    let (Some(strands), Some(ty)) = (strands, ty) else {
        return Err(Error::Parse { pos: 0, msg: "header needs strands=<n> type=<A|B>".into() });
    };
    lines
        .map(|(i, l)| {
            BraidWord::parse(l, ty, strands).map_err(|e| Error::Parse { pos: i + 1, msg: format!("line {}: {e}", i + 1) })
        })
        .collect()
}

/// `sigma_g -> t_g`, `sigma_g^-1 -> t_g^-1` in `alg`, which must be the
/// algebra of the braid's type and strand count.
pub fn braid_to_hecke<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, b: &BraidWord) -> Result<HeckeElement<R>> {
    let ctx = alg.ctx();
    if ctx.ty != b.ty || ctx.rank != b.strands {
        return Err(Error::ContextMismatch(format!("{}{} braid in {ctx}", b.ty, b.strands)));
    }
    let mut h = HeckeElement::one(alg);
    for l in &b.letters {
        h = if l.inverse { h.mul_word_inverse(&[l.gen])? } else { h.mul_word(&[l.gen])? };
    }
    Ok(h)
}

#[cfg(test)]
mod tests;
