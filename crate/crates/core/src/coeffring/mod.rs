//! Exact coefficient arithmetic.
//!
//! [`Scalar`] is the fraction field of Laurent polynomials in `v, v0, a, y, yb`
//! over the rationals (plus two bar-fixed auxiliary indeterminates `l1, l2`
//! used for symbolic rescaling checks). [`ExtScalar`] adjoins `s` with
//! `a = -s^2`. [`ZipScalar`] is the randomized stand-in used for identity
//! testing at random points.

mod frac;
mod parse;
mod poly;
mod rational;
pub mod zip;

use std::fmt;

use num_rational::BigRational;

pub use frac::{RatFunc, VAR_NAMES};
pub use parse::{parse_ext_scalar, parse_scalar, Lexer, Token, TokenKind};
pub use poly::{Laurent, Mono, NVARS};
pub use rational::Q;
pub use zip::{ZipPoint, ZipScalar};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    V = 0,
    V0 = 1,
    A = 2,
    Y = 3,
    Yb = 4,
    S = 5,
    L1 = 6,
    L2 = 7,
}

impl Var {
    pub const ALL: [Var; NVARS] =
        [Var::V, Var::V0, Var::A, Var::Y, Var::Yb, Var::S, Var::L1, Var::L2];

    pub fn name(self) -> &'static str {
        VAR_NAMES[self as usize]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

/// Coefficient ring of a Hecke algebra: a commutative ring with the bar
/// involution.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when not invertible.
    fn inv(&self) -> Option<Self>;
    fn bar(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, o: &Self) {
        if !o.is_zero() {
            *self = Coeff::add(self, o);
        }
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            let p = Coeff::mul(a, b);
            self.add_assign(&p);
        }
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Coeff::mul(&Self::from_int(n), &Self::from_int(d).inv().expect("nonzero denominator"))
    }

    fn pow_i(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = Coeff::mul(&acc, &base);
        }
        Some(acc)
    }
}

/// Coefficient rings with symbolic generators.
pub trait Symbolic: Coeff {
    fn var(v: Var) -> Self;
}

impl Symbolic for Scalar {
    fn var(v: Var) -> Self {
        Scalar::var(v)
    }
}

impl Symbolic for ExtScalar {
    fn var(v: Var) -> Self {
        match v {
            Var::A => ExtScalar(minus_s_squared()),
            _ => ExtScalar(var_func(v)),
        }
    }
}

/// Element of `Q(v, v0, a, y, yb)`, kept in reduced canonical form so that
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Scalar(RatFunc);

/// Element of `Q(v, v0, s, y, yb)` where `a` is the alias `-s^2`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtScalar(RatFunc);

/// Images of generators for [`Scalar::specialize`]; unassigned generators are
/// kept.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    images: [Option<RatFunc>; NVARS],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, var: Var, value: impl Into<RatFunc>) -> Self {
        self.images[var as usize] = Some(value.into());
        self
    }

    /// The geometric collapse `v0 -> v`.
    pub fn v0_to_v() -> Self {
        Self::new().set(Var::V0, Scalar::v())
    }
}

impl From<Scalar> for RatFunc {
    fn from(s: Scalar) -> RatFunc {
        s.0
    }
}

impl From<ExtScalar> for RatFunc {
    fn from(s: ExtScalar) -> RatFunc {
        s.0
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> RatFunc {
        RatFunc::constant(Q::from_int(n))
    }
}

impl From<Q> for RatFunc {
    fn from(q: Q) -> RatFunc {
        RatFunc::constant(q)
    }
}

fn var_func(v: Var) -> RatFunc {
    RatFunc::from_poly(Laurent::var(v as usize))
}

/// `-s^2`
fn minus_s_squared() -> RatFunc {
    RatFunc::from_poly(Laurent::monomial(Mono::var(Var::S as usize, 2), Q::from_int(-1)))
}

impl Scalar {
    pub fn var(v: Var) -> Scalar {
        assert!(v != Var::S, "s lives in ExtScalar");
        Scalar(var_func(v))
    }

    pub fn v() -> Scalar {
        Self::var(Var::V)
    }
    pub fn v0() -> Scalar {
        Self::var(Var::V0)
    }
    pub fn a() -> Scalar {
        Self::var(Var::A)
    }
    pub fn y() -> Scalar {
        Self::var(Var::Y)
    }
    pub fn yb() -> Scalar {
        Self::var(Var::Yb)
    }

    /// `v - v^-1`
    pub fn alpha() -> Scalar {
        let v = Self::v();
        v.sub(&v.inv().unwrap())
    }

    /// `v0 - v0^-1`
    pub fn alpha0() -> Scalar {
        let v = Self::v0();
        v.sub(&v.inv().unwrap())
    }

    pub fn from_q(q: Q) -> Scalar {
        Scalar(RatFunc::constant(q))
    }

    pub fn from_ratfunc(r: RatFunc) -> Result<Scalar> {
        if r.uses_var(Var::S as usize) {
            return Err(Error::Domain("s is only available in extended scalars".into()));
        }
        Ok(Scalar(r))
    }

    pub fn inner(&self) -> &RatFunc {
        &self.0
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        self.0.pow(e).map(Scalar)
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        self.0.div(&o.0).map(Scalar)
    }

    pub fn specialize(&self, asg: &Assignment) -> Result<Scalar> {
        Scalar::from_ratfunc(self.0.substitute(&asg.images)?)
    }

    /// Specialization whose images may involve `s`; `a` is then read as `-s^2`
    /// unless the assignment says otherwise.
    pub fn specialize_ext(&self, asg: &Assignment) -> Result<ExtScalar> {
        let mut images = asg.images.clone();
        if images[Var::A as usize].is_none() {
            images[Var::A as usize] = Some(minus_s_squared());
        }
        let r = self.0.substitute(&images)?;
        ExtScalar::from_ratfunc(r)
    }

    /// Embedding `a -> -s^2`.
    pub fn to_ext(&self) -> ExtScalar {
        self.specialize_ext(&Assignment::new()).expect("embedding is total")
    }

    pub fn eval_rational(&self, point: &[BigRational; NVARS]) -> Result<BigRational> {
        self.0.eval_rational(point)
    }

    pub fn eval_zip(&self, point: &ZipPoint) -> Result<ZipScalar> {
        Ok(ZipScalar { at: self.0.eval_mod(point)?, at_bar: self.0.eval_mod(&point.bar())? })
    }

    pub fn uses(&self, v: Var) -> bool {
        self.0.uses_var(v as usize)
    }

    /// Coefficients of `a^0, a^1, ...` when this is a polynomial in `a` with
    /// coefficients free of `a`; `None` otherwise.
    pub fn a_coefficients(&self) -> Option<Vec<Scalar>> {
        let ai = Var::A as usize;
        let den = self.0.den();
        if den.is_some_and(|d| d.uses_var(ai)) {
            return None;
        }
        let num = self.0.num();
        if num.min_exponent(ai).unwrap_or(0) < 0 {
            return None;
        }
        let top = num.max_exponent(ai).unwrap_or(0);
        let mut out = Vec::with_capacity(top as usize + 1);
        for k in 0..=top {
            let c = num.coeff_of(ai, k);
            let r = match den {
                None => RatFunc::from_poly(c),
                Some(d) => RatFunc::new(c, d.clone()).expect("nonzero"),
            };
            out.push(Scalar(r));
        }
        Some(out)
    }

    /// True if every monomial has even degree in `yb`.
    pub fn yb_even(&self) -> bool {
        let i = Var::Yb as usize;
        let even = |p: &Laurent| p.terms().iter().all(|(m, _)| m.0[i] % 2 == 0);
        even(self.0.num()) && self.0.den().is_none_or(even)
    }

    pub fn parse(text: &str) -> Result<Scalar> {
        parse_scalar(text)
    }
}

impl ExtScalar {
    pub fn s() -> ExtScalar {
        ExtScalar(var_func(Var::S))
    }

    pub fn from_ratfunc(r: RatFunc) -> Result<ExtScalar> {
        if r.uses_var(Var::A as usize) {
            let fixed = r.substitute(&{
                let mut im: [Option<RatFunc>; NVARS] = Default::default();
                im[Var::A as usize] = Some(minus_s_squared());
                im
            })?;
            return Ok(ExtScalar(fixed));
        }
        Ok(ExtScalar(r))
    }

    pub fn inner(&self) -> &RatFunc {
        &self.0
    }

    pub fn pow(&self, e: i32) -> Result<ExtScalar> {
        self.0.pow(e).map(ExtScalar)
    }

    pub fn checked_div(&self, o: &ExtScalar) -> Result<ExtScalar> {
        self.0.div(&o.0).map(ExtScalar)
    }

    /// Back to the base ring when only even powers of `s` occur.
    pub fn to_scalar(&self) -> Option<Scalar> {
        let si = Var::S as usize;
        let ai = Var::A as usize;
        let conv = |p: &Laurent| -> Option<Laurent> {
            let mut terms = Vec::with_capacity(p.len());
            for (m, q) in p.terms() {
                let e = m.0[si];
                if e % 2 != 0 {
                    return None;
                }
                let k = e / 2;
                let mut m2 = *m;
                m2.0[si] = 0;
                m2.0[ai] += k;
                let q2 = if k % 2 != 0 { q.neg() } else { q.clone() };
                terms.push((m2, q2));
            }
            Some(Laurent::from_terms(terms))
        };
        let num = conv(self.0.num())?;
        let r = match self.0.den() {
            None => RatFunc::from_poly(num),
            Some(d) => RatFunc::new(num, conv(d)?).ok()?,
        };
        Some(Scalar(r))
    }

    pub fn specialize(&self, asg: &Assignment) -> Result<ExtScalar> {
        ExtScalar::from_ratfunc(self.0.substitute(&asg.images)?)
    }

    pub fn eval_zip(&self, point: &ZipPoint) -> Result<ZipScalar> {
        Ok(ZipScalar { at: self.0.eval_mod(point)?, at_bar: self.0.eval_mod(&point.bar())? })
    }

    pub fn eval_rational(&self, point: &[BigRational; NVARS]) -> Result<BigRational> {
        self.0.eval_rational(point)
    }

    pub fn parse(text: &str) -> Result<ExtScalar> {
        parse_ext_scalar(text)
    }
}

impl From<Scalar> for ExtScalar {
    fn from(s: Scalar) -> ExtScalar {
        s.to_ext()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_scalar() {
            Some(s) => fmt::Display::fmt(&s, f),
            None => fmt::Display::fmt(&self.0, f),
        }
    }
}

macro_rules! ratfunc_coeff {
    ($t:ident) => {
        impl Coeff for $t {
            fn zero() -> Self {
                $t(RatFunc::zero())
            }
            fn one() -> Self {
                $t(RatFunc::one())
            }
            fn from_int(n: i64) -> Self {
                $t(RatFunc::constant(Q::from_int(n)))
            }
            fn from_ratio(n: i64, d: i64) -> Self {
                $t(RatFunc::constant(Q::new(n, d)))
            }
            fn is_zero(&self) -> bool {
                self.0.is_zero()
            }
            fn is_one(&self) -> bool {
                self.0.is_one()
            }
            fn add(&self, o: &Self) -> Self {
                $t(self.0.add(&o.0))
            }
            fn sub(&self, o: &Self) -> Self {
                $t(self.0.sub(&o.0))
            }
            fn mul(&self, o: &Self) -> Self {
                $t(self.0.mul(&o.0))
            }
            fn neg(&self) -> Self {
                $t(self.0.neg())
            }
            fn inv(&self) -> Option<Self> {
                self.0.inv().map($t)
            }
            fn bar(&self) -> Self {
                $t(self.0.bar())
            }
            fn pow_i(&self, e: i32) -> Option<Self> {
                self.0.pow(e).ok().map($t)
            }
        }
    };
}

ratfunc_coeff!(Scalar);
ratfunc_coeff!(ExtScalar);

impl Scalar {
    pub fn add(&self, o: &Scalar) -> Scalar {
        Coeff::add(self, o)
    }
    pub fn sub(&self, o: &Scalar) -> Scalar {
        Coeff::sub(self, o)
    }
    pub fn mul(&self, o: &Scalar) -> Scalar {
        Coeff::mul(self, o)
    }
    pub fn neg(&self) -> Scalar {
        Coeff::neg(self)
    }
    pub fn inv(&self) -> Option<Scalar> {
        Coeff::inv(self)
    }
    pub fn bar(&self) -> Scalar {
        Coeff::bar(self)
    }
    pub fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    pub fn zero() -> Scalar {
        <Scalar as Coeff>::zero()
    }
    pub fn one() -> Scalar {
        <Scalar as Coeff>::one()
    }
    pub fn from_int(n: i64) -> Scalar {
        <Scalar as Coeff>::from_int(n)
    }
}

impl Coeff for ZipScalar {
    fn zero() -> Self {
        ZipScalar::ZERO
    }
    fn one() -> Self {
        ZipScalar { at: 1, at_bar: 1 }
    }
    fn from_int(n: i64) -> Self {
        let x = (n as i128).rem_euclid(zip::P as i128) as u64;
        ZipScalar { at: x, at_bar: x }
    }
    fn is_zero(&self) -> bool {
        self.at == 0 && self.at_bar == 0
    }
    fn add(&self, o: &Self) -> Self {
        ZipScalar { at: zip::add_mod(self.at, o.at), at_bar: zip::add_mod(self.at_bar, o.at_bar) }
    }
    fn sub(&self, o: &Self) -> Self {
        ZipScalar { at: zip::sub_mod(self.at, o.at), at_bar: zip::sub_mod(self.at_bar, o.at_bar) }
    }
    fn mul(&self, o: &Self) -> Self {
        ZipScalar { at: zip::mul_mod(self.at, o.at), at_bar: zip::mul_mod(self.at_bar, o.at_bar) }
    }
    fn neg(&self) -> Self {
        ZipScalar { at: zip::sub_mod(0, self.at), at_bar: zip::sub_mod(0, self.at_bar) }
    }
    fn inv(&self) -> Option<Self> {
        if self.at == 0 || self.at_bar == 0 {
            return None;
        }
        Some(ZipScalar { at: zip::inv_mod(self.at), at_bar: zip::inv_mod(self.at_bar) })
    }
    fn bar(&self) -> Self {
        ZipScalar { at: self.at_bar, at_bar: self.at }
    }
}

macro_rules! std_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                Coeff::add(self, o)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                Coeff::add(&self, &o)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                Coeff::sub(self, o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                Coeff::sub(&self, &o)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                Coeff::mul(self, o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                Coeff::mul(&self, &o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                Coeff::neg(&self)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                Coeff::neg(self)
            }
        }
        /// Panics on division by zero, like integer division.
        impl std::ops::Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                Coeff::mul(&self, &Coeff::inv(&o).expect("division by zero"))
            }
        }
        impl std::ops::Div<&$t> for &$t {
            type Output = $t;
            fn div(self, o: &$t) -> $t {
                Coeff::mul(self, &Coeff::inv(o).expect("division by zero"))
            }
        }
    };
}

std_ops!(Scalar);
std_ops!(ExtScalar);
std_ops!(ZipScalar);
