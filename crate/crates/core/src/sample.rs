//! Random scalars and elements for property checks.

use std::sync::Arc;

use rand::Rng;

use crate::coeffring::{Coeff, Laurent, Mono, RatFunc, Scalar, Var, NVARS, Q};
use crate::hecke::{HeckeAlgebra, HeckeElement};

const BASE_VARS: [Var; 5] = [Var::V, Var::V0, Var::A, Var::Y, Var::Yb];

/// A short Laurent polynomial in `v, v0, a, y, yb` with small integer
/// coefficients.
pub fn random_laurent<G: Rng + ?Sized>(rng: &mut G, vars: &[Var]) -> Laurent {
    let nterms = rng.random_range(1..=3);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut m = Mono([0; NVARS]);
        for &v in vars {
            if rng.random_bool(0.4) {
                m.0[v as usize] = rng.random_range(-2..=2);
            }
        }
        let mut c = rng.random_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        terms.push((m, Q::from_int(c)));
    }
    Laurent::from_terms(terms)
}

pub fn random_scalar<G: Rng + ?Sized>(rng: &mut G) -> Scalar {
    let num = random_laurent(rng, &BASE_VARS);
    let r = if rng.random_bool(0.15) {
        let den = Laurent::one().add(&random_laurent(rng, &BASE_VARS[..1]));
        RatFunc::new(num.clone(), den).unwrap_or_else(|_| RatFunc::from_poly(num))
    } else {
        RatFunc::from_poly(num)
    };
    Scalar::from_ratfunc(r).expect("no s")
}

/// Scalars in `v` only, so they can be specialized anywhere.
pub fn random_v_scalar<G: Rng + ?Sized>(rng: &mut G) -> Scalar {
    Scalar::from_ratfunc(RatFunc::from_poly(random_laurent(rng, &[Var::V]))).unwrap()
}

pub fn random_index<G: Rng + ?Sized, R: Coeff>(rng: &mut G, alg: &HeckeAlgebra<R>) -> u32 {
    rng.random_range(0..alg.dim() as u32)
}

/// Sum of `nterms` random basis elements with coefficients from `coeff`.
pub fn random_element<G: Rng + ?Sized, R: Coeff>(
    rng: &mut G,
    alg: &Arc<HeckeAlgebra<R>>,
    nterms: usize,
    mut coeff: impl FnMut(&mut G) -> R,
) -> HeckeElement<R> {
    let terms = (0..nterms).map(|_| (random_index(rng, alg), coeff(rng))).collect();
    HeckeElement::from_terms(alg, terms)
}
