//! Randomized identity testing: values of scalars at a random point of the
//! prime field `F_p`, `p = 2^61 - 1`.
//!
//! A [`ZipScalar`] carries the value at a point `P` together with the value at
//! the bar-image point `P̄` (v, v0, a, s inverted; y and yb exchanged). With that
//! pairing the bar involution is simply the swap of the two components, so the
//! Hecke pairing can be evaluated numerically.
//!
//! Schwartz-Zippel: a nonzero polynomial of total degree `D` vanishes at a
//! uniformly random point of `F_p^k` with probability at most `D / p`.

use std::fmt;

use rand::Rng;

use super::poly::NVARS;
use super::Var;

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64) -> u64 {
    let prod = a as u128 * b as u128;
    let lo = (prod as u64) & P;
    let hi = (prod >> 61) as u64;
    add_mod(lo, hi)
}

pub fn pow_mod(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; zero maps to zero.
pub fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

/// A random evaluation point. Coordinates are nonzero so Laurent monomials
/// are always defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZipPoint {
    pub values: [u64; NVARS],
}

impl ZipPoint {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, extended: bool) -> Self {
        let mut values = [0u64; NVARS];
        for x in values.iter_mut() {
            *x = rng.random_range(1..P);
        }
        if extended {
            let s = values[Var::S as usize];
            let a = sub_mod(0, mul_mod(s, s));
            values[Var::A as usize] = a;
        }
        ZipPoint { values }
    }

    /// Fixes selected coordinates, for instance `v0 = 1`.
    pub fn with(mut self, var: Var, value: u64) -> Self {
        self.values[var as usize] = value % P;
        self
    }

    pub fn bar(&self) -> Self {
        let x = &self.values;
        ZipPoint {
            values: [
                inv_mod(x[0]),
                inv_mod(x[1]),
                inv_mod(x[2]),
                x[4],
                x[3],
                inv_mod(x[5]),
                x[6],
                x[7],
            ],
        }
    }
}

/// Value at `P` and at `P̄`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ZipScalar {
    pub at: u64,
    pub at_bar: u64,
}

impl ZipScalar {
    pub const ZERO: ZipScalar = ZipScalar { at: 0, at_bar: 0 };

    pub fn var(var: Var, point: &ZipPoint) -> Self {
        let i = var as usize;
        ZipScalar { at: point.values[i], at_bar: point.bar().values[i] }
    }

    pub fn from_u64(x: u64) -> Self {
        let x = x % P;
        ZipScalar { at: x, at_bar: x }
    }
}

impl fmt::Display for ZipScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | {}>", self.at, self.at_bar)
    }
}
