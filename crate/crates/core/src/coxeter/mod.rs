//! Coxeter groups of types A, B and D realized as (signed) permutations.
//!
//! Generator labels are small integers. Type A at level `n` (the symmetric
//! group on `n` letters) uses `1..n-1`; `B_n` uses `0..n-1` with `0` the short
//! node; `D_n` uses `0` for the node `1'` (printed `1p`) and `1..n-1`.
//! `D_1` has no generators.

mod element;
mod group;

pub use element::GroupElement;
pub use group::{Group, DEFAULT_BUDGET};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
    D,
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoxeterType::A => "A",
            CoxeterType::B => "B",
            CoxeterType::D => "D",
        })
    }
}

impl FromStr for CoxeterType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CoxeterType::A),
            "B" | "b" => Ok(CoxeterType::B),
            "D" | "d" => Ok(CoxeterType::D),
            _ => Err(Error::Unknown { kind: "type", name: s.into() }),
        }
    }
}

/// A type together with the number `n` of letters the group permutes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CoxeterContext {
    pub ty: CoxeterType,
    pub rank: usize,
}

/// Largest supported rank; windows are stored as `i8`.
pub const MAX_RANK: usize = 12;

impl CoxeterContext {
    pub fn new(ty: CoxeterType, rank: usize) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::OutOfRange(format!("rank {rank} exceeds {MAX_RANK}")));
        }
        Ok(CoxeterContext { ty, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(CoxeterType::A, rank).unwrap()
    }

    pub fn b(rank: usize) -> Self {
        Self::new(CoxeterType::B, rank).unwrap()
    }

    pub fn d(rank: usize) -> Self {
        Self::new(CoxeterType::D, rank).unwrap()
    }

    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Self::new(self.ty, rank)
    }

    /// Generator labels in increasing order.
    pub fn generators(&self) -> Vec<u8> {
        let n = self.rank as u8;
        match self.ty {
            CoxeterType::A => (1..n.max(1)).collect(),
            CoxeterType::B => (0..n).collect(),
            CoxeterType::D if n < 2 => Vec::new(),
            CoxeterType::D => (0..n).collect(),
        }
    }

    pub fn is_generator(&self, s: u8) -> bool {
        self.generators().contains(&s)
    }

    /// The Coxeter matrix entry `m(s, t)`.
    pub fn m(&self, s: u8, t: u8) -> u32 {
        if s == t {
            return 1;
        }
        let (lo, hi) = (s.min(t), s.max(t));
        match self.ty {
            CoxeterType::B if lo == 0 && hi == 1 => 4,
            CoxeterType::D if lo == 0 => {
                if hi == 2 {
                    3
                } else {
                    2
                }
            }
            _ if hi - lo == 1 => 3,
            _ => 2,
        }
    }

    /// `n!`, `2^n n!` or `2^(n-1) n!`.
    pub fn order(&self) -> u64 {
        let fact: u64 = (1..=self.rank as u64).product();
        match self.ty {
            CoxeterType::A => fact,
            CoxeterType::B => fact << self.rank,
            CoxeterType::D => fact << self.rank.saturating_sub(1),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(*self)
    }

    pub fn generator(&self, s: u8) -> Result<GroupElement> {
        GroupElement::generator(*self, s)
    }

    /// Element table, built on first use and shared afterwards.
    pub fn group(&self) -> Result<std::sync::Arc<Group>> {
        Group::cached(*self, DEFAULT_BUDGET)
    }

    pub fn enumerate(&self, budget: u64) -> Result<Vec<GroupElement>> {
        let g = Group::cached(*self, budget)?;
        Ok((0..g.len()).map(|i| g.element(i as u32)).collect())
    }

    pub fn longest_element(&self) -> GroupElement {
        GroupElement::longest(*self)
    }
}

impl fmt::Display for CoxeterContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ty, self.rank)
    }
}

pub fn generator_name(s: u8, ty: CoxeterType) -> String {
    if ty == CoxeterType::D && s == 0 {
        "1p".into()
    } else {
        s.to_string()
    }
}

pub fn parse_generator(tok: &str, ty: CoxeterType) -> Result<u8> {
    if tok == "1p" || tok == "1'" {
        return if ty == CoxeterType::D {
            Ok(0)
        } else {
            Err(Error::Domain(format!("generator {tok} exists only in type D")))
        };
    }
    let s: u8 = tok
        .parse()
        .map_err(|_| Error::Parse { pos: 0, msg: format!("bad generator '{tok}'") })?;
    if ty == CoxeterType::D && s == 0 {
        return Err(Error::Domain("type D has no generator 0; use 1p".into()));
    }
    Ok(s)
}

/// Formats a word as whitespace-separated labels.
pub fn format_word(word: &[u8], ty: CoxeterType) -> String {
    word.iter().map(|&s| generator_name(s, ty)).collect::<Vec<_>>().join(" ")
}

/// Parses whitespace- or comma-separated labels.
pub fn parse_word(text: &str, ty: CoxeterType) -> Result<Vec<u8>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_generator(t, ty))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_is_symmetric() {
        for ctx in [CoxeterContext::a(5), CoxeterContext::b(4), CoxeterContext::d(4)] {
            for &s in &ctx.generators() {
                for &t in &ctx.generators() {
                    assert_eq!(ctx.m(s, t), ctx.m(t, s));
                    assert!(s == t || ctx.m(s, t) >= 2);
                }
            }
        }
        let b = CoxeterContext::b(3);
        assert_eq!(b.m(0, 1), 4);
        assert_eq!(b.m(1, 2), 3);
        assert_eq!(b.m(0, 2), 2);
        let d = CoxeterContext::d(3);
        assert_eq!(d.m(0, 1), 2);
        assert_eq!(d.m(0, 2), 3);
    }

    #[test]
    fn small_rank_generators() {
        assert!(CoxeterContext::a(1).generators().is_empty());
        assert!(CoxeterContext::b(0).generators().is_empty());
        assert!(CoxeterContext::d(1).generators().is_empty());
        assert_eq!(CoxeterContext::d(2).generators(), vec![0, 1]);
        // D_2 is A_1 x A_1
        assert_eq!(CoxeterContext::d(2).m(0, 1), 2);
    }

    #[test]
    fn words_round_trip() {
        let w = parse_word("1p 2, 1", CoxeterType::D).unwrap();
        assert_eq!(w, vec![0, 2, 1]);
        assert_eq!(format_word(&w, CoxeterType::D), "1p 2 1");
        assert!(parse_word("0", CoxeterType::D).is_err());
        assert!(parse_word("1p", CoxeterType::B).is_err());
    }
}
