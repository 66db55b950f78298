use std::fmt;

use super::{CoxeterContext, CoxeterType};
use crate::error::{Error, Result};

/// A signed permutation in window notation: `window[j-1] = w(j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupElement {
    ctx: CoxeterContext,
    window: Vec<i8>,
}

/// Image of a signed value under the window.
#[inline]
fn apply(window: &[i8], x: i8) -> i8 {
    let y = window[x.unsigned_abs() as usize - 1];
    if x < 0 {
        -y
    } else {
        y
    }
}

pub(crate) fn right_mul_gen(ty: CoxeterType, window: &mut [i8], s: u8) {
    match (ty, s) {
        (CoxeterType::B, 0) => window[0] = -window[0],
        (CoxeterType::D, 0) => {
            let (a, b) = (window[0], window[1]);
            window[0] = -b;
            window[1] = -a;
        }
        _ => window.swap(s as usize - 1, s as usize),
    }
}

pub(crate) fn left_mul_gen(ty: CoxeterType, window: &mut [i8], s: u8) {
    let s = s as i8;
    for x in window.iter_mut() {
        let (sign, m) = (x.signum(), x.abs());
        *x = match (ty, s) {
            (CoxeterType::B, 0) if m == 1 => -*x,
            (CoxeterType::D, 0) if m == 1 => -2 * sign,
            (CoxeterType::D, 0) if m == 2 => -sign,
            (_, 0) => *x,
            _ if m == s => sign * (s + 1),
            _ if m == s + 1 => sign * s,
            _ => *x,
        };
    }
}

/// Length from inversion statistics: `inv` for A, `inv + nsp + neg` for B,
/// `inv + nsp` for D.
pub(crate) fn window_length(ty: CoxeterType, w: &[i8]) -> usize {
    let n = w.len();
    let mut inv = 0;
    let mut nsp = 0;
    for i in 0..n {
        for j in i + 1..n {
            if w[i] > w[j] {
                inv += 1;
            }
            if (w[i] as i16) + (w[j] as i16) < 0 {
                nsp += 1;
            }
        }
    }
    let neg = w.iter().filter(|&&x| x < 0).count();
    match ty {
        CoxeterType::A => inv,
        CoxeterType::B => inv + nsp + neg,
        CoxeterType::D => inv + nsp,
    }
}

impl GroupElement {
    pub fn identity(ctx: CoxeterContext) -> Self {
        GroupElement { ctx, window: (1..=ctx.rank as i8).collect() }
    }

    pub fn generator(ctx: CoxeterContext, s: u8) -> Result<Self> {
        if !ctx.is_generator(s) {
            return Err(Error::OutOfRange(format!(
                "{} is not a generator of {ctx}",
                super::generator_name(s, ctx.ty)
            )));
        }
        let mut e = Self::identity(ctx);
        right_mul_gen(ctx.ty, &mut e.window, s);
        Ok(e)
    }

    pub fn from_window(ctx: CoxeterContext, window: Vec<i8>) -> Result<Self> {
        let n = ctx.rank;
        if window.len() != n {
            return Err(Error::Domain(format!("window of length {} in {ctx}", window.len())));
        }
        let mut seen = vec![false; n];
        for &x in &window {
            let m = x.unsigned_abs() as usize;
            if m == 0 || m > n || seen[m - 1] {
                return Err(Error::Domain(format!("{window:?} is not a signed permutation")));
            }
            seen[m - 1] = true;
        }
        let neg = window.iter().filter(|&&x| x < 0).count();
        match ctx.ty {
            CoxeterType::A if neg > 0 => {
                Err(Error::Domain("type A windows have positive entries".into()))
            }
            CoxeterType::D if neg % 2 == 1 => {
                Err(Error::Domain("type D windows have an even number of negative entries".into()))
            }
            _ => Ok(GroupElement { ctx, window }),
        }
    }

    /// Product `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(ctx: CoxeterContext, word: &[u8]) -> Result<Self> {
        let mut e = Self::identity(ctx);
        for &s in word {
            e = e.mul_gen(s)?;
        }
        Ok(e)
    }

    pub fn ctx(&self) -> CoxeterContext {
        self.ctx
    }

    pub fn window(&self) -> &[i8] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i as i8 + 1)
    }

    /// `w(j)` for `1 <= |j| <= n`.
    pub fn apply(&self, j: i8) -> i8 {
        apply(&self.window, j)
    }

    pub fn mul(&self, o: &GroupElement) -> Result<GroupElement> {
        if self.ctx != o.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, o.ctx)));
        }
        let window = o.window.iter().map(|&j| apply(&self.window, j)).collect();
        Ok(GroupElement { ctx: self.ctx, window })
    }

    pub fn inverse(&self) -> GroupElement {
        let mut window = vec![0i8; self.window.len()];
        for (i, &x) in self.window.iter().enumerate() {
            let v = i as i8 + 1;
            window[x.unsigned_abs() as usize - 1] = if x < 0 { -v } else { v };
        }
        GroupElement { ctx: self.ctx, window }
    }

    /// `w s`.
    pub fn mul_gen(&self, s: u8) -> Result<GroupElement> {
        self.check_gen(s)?;
        let mut w = self.clone();
        right_mul_gen(self.ctx.ty, &mut w.window, s);
        Ok(w)
    }

    /// `s w`.
    pub fn gen_mul(&self, s: u8) -> Result<GroupElement> {
        self.check_gen(s)?;
        let mut w = self.clone();
        left_mul_gen(self.ctx.ty, &mut w.window, s);
        Ok(w)
    }

    fn check_gen(&self, s: u8) -> Result<()> {
        if self.ctx.is_generator(s) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("generator {s} in {}", self.ctx)))
        }
    }

    pub fn length(&self) -> usize {
        window_length(self.ctx.ty, &self.window)
    }

    pub fn is_left_descent(&self, s: u8) -> bool {
        let mut w = self.window.clone();
        left_mul_gen(self.ctx.ty, &mut w, s);
        window_length(self.ctx.ty, &w) < self.length()
    }

    pub fn is_right_descent(&self, s: u8) -> bool {
        let mut w = self.window.clone();
        right_mul_gen(self.ctx.ty, &mut w, s);
        window_length(self.ctx.ty, &w) < self.length()
    }

    /// Lexicographically first reduced word.
    pub fn reduced_word(&self) -> Vec<u8> {
        let gens = self.ctx.generators();
        let mut w = self.window.clone();
        let mut len = self.length();
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            for &s in &gens {
                let mut u = w.clone();
                left_mul_gen(self.ctx.ty, &mut u, s);
                let l = window_length(self.ctx.ty, &u);
                if l < len {
                    word.push(s);
                    w = u;
                    len = l;
                    break;
                }
            }
        }
        word
    }

    /// Saturates right multiplication by length-increasing generators.
    pub fn longest(ctx: CoxeterContext) -> GroupElement {
        let gens = ctx.generators();
        let mut w = Self::identity(ctx);
        let mut len = 0;
        'grow: loop {
            for &s in &gens {
                let mut u = w.window.clone();
                right_mul_gen(ctx.ty, &mut u, s);
                let l = window_length(ctx.ty, &u);
                if l > len {
                    w.window = u;
                    len = l;
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// Whether `w` fixes every `j > level`.
    pub fn in_parabolic(&self, level: usize) -> bool {
        self.window.iter().enumerate().skip(level).all(|(i, &x)| x == i as i8 + 1)
    }

    /// Pads the window with fixed points.
    pub fn embed(&self, target: CoxeterContext) -> Result<GroupElement> {
        if target.rank < self.ctx.rank {
            return Err(Error::ContextMismatch(format!("cannot embed {} into {target}", self.ctx)));
        }
        let compatible = target.ty == self.ctx.ty
            || (self.ctx.ty == CoxeterType::D && target.ty == CoxeterType::B);
        if !compatible {
            return Err(Error::ContextMismatch(format!("cannot embed {} into {target}", self.ctx)));
        }
        let mut window = self.window.clone();
        window.extend(self.ctx.rank as i8 + 1..=target.rank as i8);
        Ok(GroupElement { ctx: target, window })
    }

    pub fn parse(ctx: CoxeterContext, text: &str) -> Result<GroupElement> {
        let window = text
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i8>()
                    .map_err(|_| Error::Parse { pos: 0, msg: format!("bad window entry '{t}'") })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_window(ctx, window)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
