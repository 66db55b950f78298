//! `I(b) = s^{e-n+1} alpha^{-(n-1)} tr_n(b)` with `s^2 = -a`, where `e` is
//! the writhe and `tr_n` is `tr_{zeta_n}` in type A or `tr_{beta_n(y)}` in
//! type B. Positive stabilization multiplies the trace by `alpha`, negative
//! stabilization by `alpha - alpha (1 + a) = -a alpha = s^2 alpha`, and the
//! power of `s` balances both.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use super::{braid_to_hecke, BraidWord};
use crate::coeffring::{Coeff, ExtScalar, Var, ZipPoint, ZipScalar};
use crate::coxeter::{CoxeterContext, CoxeterType};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement, ParamMode};
use crate::jmtower::{beta, zeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    Closed,
    /// Closed value divided by the unknot value `1 + a`.
    Reduced,
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Normalization::Closed),
            "reduced" => Ok(Normalization::Reduced),
            _ => Err(Error::Unknown { kind: "normalization", name: s.into() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariant<R> {
    pub closed: R,
    pub reduced: R,
}

impl<R: Clone> Invariant<R> {
    pub fn get(&self, n: Normalization) -> R {
        match n {
            Normalization::Closed => self.closed.clone(),
            Normalization::Reduced => self.reduced.clone(),
        }
    }
}

impl<R: fmt::Display> fmt::Display for Invariant<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "closed: {}\nreduced: {}", self.closed, self.reduced)
    }
}

type AlgFn<R> = dyn Fn(CoxeterContext) -> Result<Arc<HeckeAlgebra<R>>> + Send + Sync;

type Slot<R> = (Arc<HeckeAlgebra<R>>, HeckeElement<R>);

/// Evaluates invariants over one coefficient ring, caching the algebra and
/// the trace element per type and strand count.
pub struct Evaluator<R: Coeff> {
    algebra: Box<AlgFn<R>>,
    s: R,
    cache: Mutex<HashMap<CoxeterContext, Slot<R>>>,
}

fn mode_of(ty: CoxeterType) -> ParamMode {
    if ty == CoxeterType::B {
        ParamMode::Unequal
    } else {
        ParamMode::Equal
    }
}

impl Evaluator<ExtScalar> {
    /// Exact symbolic values.
    pub fn exact() -> Self {
        Evaluator {
            algebra: Box::new(|ctx| HeckeAlgebra::symbolic(ctx, mode_of(ctx.ty))),
            s: ExtScalar::s(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl Evaluator<ZipScalar> {
    /// Values at a point with `a = -s^2`.
    pub fn at_point(p: &ZipPoint) -> Self {
        let s = ZipScalar::var(Var::S, p);
        let p = *p;
        Evaluator {
            algebra: Box::new(move |ctx| HeckeAlgebra::at_point(ctx, mode_of(ctx.ty), &p)),
            s,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl<R: Coeff> Evaluator<R> {
    fn setup(&self, ctx: CoxeterContext) -> Result<(Arc<HeckeAlgebra<R>>, HeckeElement<R>)> {
        if let Some(e) = self.cache.lock().unwrap().get(&ctx) {
            return Ok(e.clone());
        }
        let alg = (self.algebra)(ctx)?;
        let z = match ctx.ty {
            CoxeterType::A => zeta(&alg)?,
            CoxeterType::B => beta(&alg)?,
            CoxeterType::D => return Err(Error::Domain("braid words are of type A or B".into())),
        };
        let e = (alg, z);
        self.cache.lock().unwrap().insert(ctx, e.clone());
        Ok(e)
    }

    pub fn s(&self) -> &R {
        &self.s
    }

    /// `(alpha, alpha0)` of the algebra of `b`.
    pub fn alphas(&self, b: &BraidWord) -> Result<(R, R)> {
        let (alg, _) = self.setup(CoxeterContext::new(b.ty(), b.strands())?)?;
        Ok((alg.alpha(), alg.alpha0()))
    }

    /// `tr_n` of the image of `b`.
    pub fn trace(&self, b: &BraidWord) -> Result<R> {
        let (alg, z) = self.setup(CoxeterContext::new(b.ty(), b.strands())?)?;
        z.pairing_by_rows(&braid_to_hecke(&alg, b)?)
    }

    pub fn evaluate(&self, b: &BraidWord) -> Result<Invariant<R>> {
        let (alg, _) = self.setup(CoxeterContext::new(b.ty(), b.strands())?)?;
        let n = b.strands() as i64;
        let s_pow = i32::try_from(b.writhe() - n + 1).map_err(|_| Error::OutOfRange("writhe".into()))?;
        let s_factor = self.s.pow_i(s_pow).ok_or(Error::DivisionByZero)?;
        let a_factor = alg.alpha().pow_i(-(n as i32 - 1)).ok_or(Error::DivisionByZero)?;
        let closed = s_factor.mul(&a_factor).mul(&self.trace(b)?);
        let unknot = R::one().add(&alg.params().a).inv().ok_or(Error::DivisionByZero)?;
        Ok(Invariant { reduced: closed.mul(&unknot), closed })
    }
}

pub(crate) fn global_exact() -> &'static Evaluator<ExtScalar> {
    static EXACT: std::sync::OnceLock<Evaluator<ExtScalar>> = std::sync::OnceLock::new();
    EXACT.get_or_init(Evaluator::exact)
}

/// HOMFLY-PT type invariant of the closure of a type A braid.
pub fn homfly(b: &BraidWord) -> Result<Invariant<ExtScalar>> {
    if b.ty() != CoxeterType::A {
        return Err(Error::TypeMismatch("homfly needs a type A braid".into()));
    }
    global_exact().evaluate(b)
}

/// Invariant of the closure of a type B braid in the solid torus, from
/// `tr_{beta_n(y)}`.
pub fn annular_invariant(b: &BraidWord) -> Result<Invariant<ExtScalar>> {
    if b.ty() != CoxeterType::B {
        return Err(Error::TypeMismatch("the annular invariant needs a type B braid".into()));
    }
    global_exact().evaluate(b)
}
