//! Trace functionals represented by central elements, the Markov axioms,
//! the special properties of `T_n`, `U_n` and the geometric traces.
//!
//! A central `z` represents `tr_z(h) = <z, h>`. The pairing is antilinear in
//! `z`, so coefficients of `z` enter barred: `a^-1` in `zeta_n` contributes
//! `a`, and `yb` in `beta_n(y)` contributes `y`.

mod geometric;
mod verify;

pub use geometric::{
    collapse_check, geometric_coeff_b, geometric_coeff_d, geometric_d_algebra, geometric_trace_b,
    geometric_trace_d, geometric_trace_d_via_eprime, verify_geometric_b, verify_geometric_d,
};
pub use verify::{
    product_value_b, product_value_d, restriction_check, verify_markov, verify_t_property,
    verify_u_property, zip_bound_log2, zip_bound_log2_for_degree, CheckMode, MIN_ZIP_POINTS,
};

use std::sync::{Arc, OnceLock};

use crate::coeffring::Coeff;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::jmtower::{build_in, Family};

pub struct TraceFunctional<R: Coeff> {
    z: HeckeElement<R>,
    label: String,
    values: OnceLock<Vec<R>>,
}

impl<R: Coeff> TraceFunctional<R> {
    /// Fails unless `z` is central.
    pub fn new(z: HeckeElement<R>, label: impl Into<String>) -> Result<Self> {
        if !z.is_central() {
            return Err(Error::Domain(format!("{} is not central", label.into())));
        }
        Ok(TraceFunctional { z, label: label.into(), values: OnceLock::new() })
    }

    pub fn of_family(family: Family, alg: &Arc<HeckeAlgebra<R>>) -> Result<Self> {
        Self::new(build_in(family, alg)?, family.to_string())
    }

    pub fn element(&self) -> &HeckeElement<R> {
        &self.z
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra<R>> {
        self.z.algebra()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `rho = 1 + a`.
    pub fn rho(&self) -> R {
        R::one().add(&self.algebra().params().a)
    }

    /// `mu = v - v^-1`.
    pub fn mu(&self) -> R {
        self.algebra().alpha()
    }

    /// `<z, h>`.
    pub fn eval(&self, h: &HeckeElement<R>) -> Result<R> {
        self.z.pairing_by_rows(h)
    }

    /// `tr(t_w)` for every basis element.
    pub fn values(&self) -> &[R] {
        self.values.get_or_init(|| self.z.pairing_row(None))
    }

    /// `sum_w c_w tr(t_w)`, from the cached values.
    pub fn eval_linear(&self, h: &HeckeElement<R>) -> Result<R> {
        self.algebra().check_same(h.algebra())?;
        let vals = self.values();
        let mut acc = R::zero();
        for (w, c) in h.terms() {
            acc.add_mul(c, &vals[*w as usize]);
        }
        Ok(acc)
    }
}

pub fn tr_eval<R: Coeff>(t: &TraceFunctional<R>, h: &HeckeElement<R>) -> Result<R> {
    t.eval(h)
}

/// `<z, h x>` for every basis `h = t_w` with `w` in `targets`, through
/// `<z, h x> = <z bar(i(x)), h>`.
pub(crate) fn row_with_right_factor<R: Coeff>(
    z: &HeckeElement<R>,
    x: &HeckeElement<R>,
    targets: &[u32],
) -> Result<Vec<R>> {
    let zz = z.mul(&x.anti_i().bar())?;
    Ok(zz.pairing_row(Some(targets)))
}
