//! Iwahori-Hecke algebras of types A, B and D.
//!
//! Elements are sparse in the standard basis `t_w`, with the quadratic
//! relation `t_s^2 = 1 + (v_s - v_s^-1) t_s`. In unequal mode the short node
//! `t_0` of type B uses `v0`; the algebra `H_{v,1}(B_n)` is the unequal
//! algebra with `v0 = 1`, where `t_0^2 = 1`.

mod element;
mod text;
mod walk;

pub use element::HeckeElement;
pub use text::{parse_element, ElementRecord, TermRecord};

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coeffring::{Coeff, Symbolic, Var, ZipPoint, ZipScalar};
use crate::coxeter::{CoxeterContext, CoxeterType, Group};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Equal,
    Unequal,
}

impl fmt::Display for ParamMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamMode::Equal => "equal",
            ParamMode::Unequal => "unequal",
        })
    }
}

/// Values of the generators `v, v0, a, y, yb` in the coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Params<R> {
    pub v: R,
    pub v0: R,
    pub a: R,
    pub y: R,
    pub yb: R,
}

impl<R: Symbolic> Params<R> {
    pub fn symbolic() -> Self {
        Params {
            v: R::var(Var::V),
            v0: R::var(Var::V0),
            a: R::var(Var::A),
            y: R::var(Var::Y),
            yb: R::var(Var::Yb),
        }
    }
}

impl Params<ZipScalar> {
    pub fn at_point(p: &ZipPoint) -> Self {
        Params {
            v: ZipScalar::var(Var::V, p),
            v0: ZipScalar::var(Var::V0, p),
            a: ZipScalar::var(Var::A, p),
            y: ZipScalar::var(Var::Y, p),
            yb: ZipScalar::var(Var::Yb, p),
        }
    }
}

impl<R: Coeff> Params<R> {
    pub fn with_v0(mut self, v0: R) -> Self {
        self.v0 = v0;
        self
    }
}

fn alpha_of<R: Coeff>(v: &R) -> R {
    v.sub(&v.inv().expect("parameter is invertible"))
}

pub struct HeckeAlgebra<R: Coeff> {
    group: Arc<Group>,
    mode: ParamMode,
    params: Params<R>,
    alpha: Vec<R>,
    tau: OnceLock<Vec<R>>,
}

impl<R: Coeff> fmt::Debug for HeckeAlgebra<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({}, {})", self.ctx(), self.mode_label())
    }
}

impl<R: Symbolic> HeckeAlgebra<R> {
    pub fn symbolic(ctx: CoxeterContext, mode: ParamMode) -> Result<Arc<Self>> {
        Self::new(ctx, mode, Params::symbolic())
    }

    /// `H_{v,1}(B_n)`.
    pub fn v0_one(rank: usize) -> Result<Arc<Self>> {
        Self::new(CoxeterContext::b(rank), ParamMode::Unequal, Params::symbolic().with_v0(R::one()))
    }
}

impl HeckeAlgebra<ZipScalar> {
    pub fn at_point(ctx: CoxeterContext, mode: ParamMode, point: &ZipPoint) -> Result<Arc<Self>> {
        Self::new(ctx, mode, Params::at_point(point))
    }
}

impl<R: Coeff> HeckeAlgebra<R> {
    pub fn new(ctx: CoxeterContext, mode: ParamMode, params: Params<R>) -> Result<Arc<Self>> {
        Self::with_budget(ctx, mode, params, crate::coxeter::DEFAULT_BUDGET)
    }

    pub fn with_budget(
        ctx: CoxeterContext,
        mode: ParamMode,
        params: Params<R>,
        budget: u64,
    ) -> Result<Arc<Self>> {
        if mode == ParamMode::Unequal && ctx.ty != CoxeterType::B {
            return Err(Error::Domain("unequal parameters exist only in type B".into()));
        }
        let group = Group::cached(ctx, budget)?;
        let alpha_v = alpha_of(&params.v);
        let alpha_v0 = alpha_of(&params.v0);
        let alpha = group
            .gens()
            .iter()
            .map(|&s| {
                if mode == ParamMode::Unequal && s == 0 {
                    alpha_v0.clone()
                } else {
                    alpha_v.clone()
                }
            })
            .collect();
        Ok(Arc::new(HeckeAlgebra { group, mode, params, alpha, tau: OnceLock::new() }))
    }

    /// Same parameters at another rank.
    pub fn at_rank(&self, rank: usize) -> Result<Arc<Self>> {
        Self::new(self.ctx().with_rank(rank)?, self.mode, self.params.clone())
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn ctx(&self) -> CoxeterContext {
        self.group.ctx()
    }

    pub fn rank(&self) -> usize {
        self.ctx().rank
    }

    pub fn ty(&self) -> CoxeterType {
        self.ctx().ty
    }

    pub fn mode(&self) -> ParamMode {
        self.mode
    }

    pub fn params(&self) -> &Params<R> {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.group.len()
    }

    /// `"equal"`, `"unequal"` or `"v0=1"`.
    pub fn mode_label(&self) -> &'static str {
        match self.mode {
            ParamMode::Equal => "equal",
            ParamMode::Unequal if self.params.v0.is_one() => "v0=1",
            ParamMode::Unequal => "unequal",
        }
    }

    pub fn same_as(&self, o: &Self) -> bool {
        std::ptr::eq(self, o)
            || (self.ctx() == o.ctx() && self.mode == o.mode && self.params == o.params)
    }

    pub fn check_same(&self, o: &Self) -> Result<()> {
        if self.same_as(o) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{self:?} vs {o:?}")))
        }
    }

    /// `v_s - v_s^-1` for the generator in `slot`.
    pub fn alpha_slot(&self, slot: usize) -> &R {
        &self.alpha[slot]
    }

    /// `v - v^-1`.
    pub fn alpha(&self) -> R {
        alpha_of(&self.params.v)
    }

    /// Parameter difference of `t_0`: `v0 - v0^-1` in unequal mode, else `v - v^-1`.
    pub fn alpha0(&self) -> R {
        match self.mode {
            ParamMode::Unequal => alpha_of(&self.params.v0),
            ParamMode::Equal => self.alpha(),
        }
    }

    /// `tau(t_w)` for every `w`, by index.
    pub fn tau_vector(&self) -> &[R] {
        self.tau.get_or_init(|| walk::tau_vector(self))
    }
}

#[cfg(test)]
mod tests;
