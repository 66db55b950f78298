//! Full twists, Jucys-Murphy elements, the elements `j^B_i`, `j^D_i`, `T_n`,
//! `U_n` and the central elements `zeta_n`, `beta_n(y)`, `delta_n(y)`.
//!
//! Ranks follow the Coxeter context: type A at rank `n` is the symmetric
//! group on `n` letters, so `J^A_1 = 1`. Everything at level `i < n` is
//! computed in the level-`i` algebra and embedded.

mod cache;
mod sympoly;

pub use cache::{central_element, CentralCache, CACHE_VERSION};
pub use sympoly::{e_prime, e_prime_explicit, sym_poly_eval, SymPoly};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeffring::{Coeff, Scalar};
use crate::coxeter::{CoxeterContext, CoxeterType};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement, ParamMode};

type Elem<R> = HeckeElement<R>;

fn longest_word<R: Coeff>(alg: &HeckeAlgebra<R>) -> Vec<u8> {
    let g = alg.group();
    g.word(g.w0()).to_vec()
}

/// `S = t_{w0}^-2`; `1` at rank 0.
pub fn full_twist<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Elem<R> {
    let mut w = longest_word(alg);
    w.reverse();
    let twice = [w.as_slice(), w.as_slice()].concat();
    Elem::one(alg).mul_word_inverse(&twice).expect("generators of the algebra")
}

/// `S^-1 = t_{w0}^2`.
pub fn full_twist_inverse<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Elem<R> {
    let w = longest_word(alg);
    let twice = [w.as_slice(), w.as_slice()].concat();
    Elem::one(alg).mul_word(&twice).expect("generators of the algebra")
}

/// Whether `<h1, S h2> = bar(<h2, h1>)`.
pub fn serre_check<R: Coeff>(h1: &Elem<R>, h2: &Elem<R>) -> Result<bool> {
    let s = full_twist(h1.algebra());
    let lhs = h1.pairing(&s.mul(h2)?)?;
    let rhs = h2.pairing(h1)?.bar();
    Ok(lhs == rhs)
}

fn check_index<R: Coeff>(alg: &HeckeAlgebra<R>, i: usize) -> Result<()> {
    if i == 0 || i > alg.rank() {
        return Err(Error::OutOfRange(format!("index {i} at rank {}", alg.rank())));
    }
    Ok(())
}

fn check_type<R: Coeff>(alg: &HeckeAlgebra<R>, ty: CoxeterType) -> Result<()> {
    if alg.ty() != ty {
        return Err(Error::TypeMismatch(format!("expected type {ty}, got {}", alg.ctx())));
    }
    Ok(())
}

/// `J_i = S(X_i)^-1 S(X_{i-1})`, embedded at the rank of `alg`.
pub fn jm_element<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, i: usize) -> Result<Elem<R>> {
    check_index(alg, i)?;
    let level = alg.at_rank(i)?;
    let lower = alg.at_rank(i - 1)?;
    let mut w = longest_word(&lower);
    w.reverse();
    let twice = [w.as_slice(), w.as_slice()].concat();
    let j = full_twist_inverse(&level).mul_word_inverse(&twice)?;
    j.embed(alg)
}

/// `J_1, ..., J_n` at the rank `n` of `alg`.
pub fn jm_elements<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Vec<Elem<R>>> {
    (1..=alg.rank()).map(|i| jm_element(alg, i)).collect()
}

/// Reduced word of `j^B_i = t_{i-1} ... t_1 t_0 t_1 ... t_{i-1}`.
pub fn j_b_word(i: usize) -> Vec<u8> {
    let up: Vec<u8> = (1..i as u8).collect();
    up.iter().rev().copied().chain([0]).chain(up.iter().copied()).collect()
}

/// Reduced word of `j^D_i = t_{i-1} ... t_2 t_1' t_1 t_2 ... t_{i-1}`, empty
/// for `i = 1`.
pub fn j_d_word(i: usize) -> Vec<u8> {
    if i <= 1 {
        return Vec::new();
    }
    let up: Vec<u8> = (2..i as u8).collect();
    up.iter().rev().copied().chain([0, 1]).chain(up.iter().copied()).collect()
}

pub fn jm_j_b<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, i: usize) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::B)?;
    check_index(alg, i)?;
    Elem::word(alg, &j_b_word(i))
}

pub fn jm_j_d<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, i: usize) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::D)?;
    check_index(alg, i)?;
    Elem::word(alg, &j_d_word(i))
}

/// `j^B_1..j^B_n` or `j^D_1..j^D_n` according to the type of `alg`.
pub fn j_elements<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Vec<Elem<R>>> {
    match alg.ty() {
        CoxeterType::B => (1..=alg.rank()).map(|i| jm_j_b(alg, i)).collect(),
        CoxeterType::D => (1..=alg.rank()).map(|i| jm_j_d(alg, i)).collect(),
        CoxeterType::A => Err(Error::TypeMismatch("j-elements exist in types B and D".into())),
    }
}

fn j_words<R: Coeff>(alg: &HeckeAlgebra<R>) -> Result<Vec<Vec<u8>>> {
    match alg.ty() {
        CoxeterType::B => Ok((1..=alg.rank()).map(j_b_word).collect()),
        CoxeterType::D => Ok((1..=alg.rank()).map(j_d_word).collect()),
        CoxeterType::A => Err(Error::TypeMismatch("j-elements exist in types B and D".into())),
    }
}

/// `t_1 t_0 t_1 t_0 = t_0 t_1 t_0 t_1` and `t_i t_0 = t_0 t_i` for `i > 1`.
pub fn affine_relation_check<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<bool> {
    check_type(alg, CoxeterType::B)?;
    let n = alg.rank() as u8;
    if n >= 2 && Elem::word(alg, &[1, 0, 1, 0])? != Elem::word(alg, &[0, 1, 0, 1])? {
        return Ok(false);
    }
    for i in 2..n {
        if Elem::word(alg, &[i, 0])? != Elem::word(alg, &[0, i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn a_inv<R: Coeff>(alg: &HeckeAlgebra<R>) -> Result<R> {
    alg.params().a.inv().ok_or(Error::DivisionByZero)
}

/// `zeta_n = prod_i (1 + a^-1 J_i)` at the rank `n` of `alg`.
pub fn zeta<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Elem<R>> {
    let ai = a_inv(alg)?;
    let mut acc = Elem::one(alg);
    for j in jm_elements(alg)? {
        acc = acc.add(&acc.mul(&j)?.scale(&ai))?;
    }
    Ok(acc)
}

/// `prod_i (1 + c j_i + a^-1 j_i^2)` for the j-elements of `alg`.
fn j_product<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, c: &R) -> Result<Elem<R>> {
    let ai = a_inv(alg)?;
    let mut acc = Elem::one(alg);
    for w in j_words(alg)? {
        let x = acc.mul_word(&w)?;
        let xx = x.mul_word(&w)?;
        acc = acc.add(&x.scale(c))?.add(&xx.scale(&ai))?;
    }
    Ok(acc)
}

/// `beta_n(y) = prod_i (1 + (yb + alpha0) j^B_i + a^-1 J^B_i)`.
pub fn beta<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::B)?;
    j_product(alg, &alg.params().yb.add(&alg.alpha0()))
}

/// `delta_n(y)`: even-degree part of `prod_i (1 + yb x_i + a^-1 x_i^2)` at
/// `x_i = j^D_i`, as the average of the products with `yb` and `-yb`.
pub fn delta<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::D)?;
    let yb = alg.params().yb.clone();
    let plus = j_product(alg, &yb)?;
    let minus = j_product(alg, &yb.neg())?;
    let half = R::from_int(2).inv().ok_or(Error::DivisionByZero)?;
    Ok(plus.add(&minus)?.scale(&half))
}

/// `T_n = t_{n-1} ... t_1 t_0 t_1^-1 ... t_{n-1}^-1` at the rank `n` of `alg`.
pub fn t_element<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::B)?;
    let n = alg.rank() as u8;
    if n == 0 {
        return Err(Error::OutOfRange("T_n needs n >= 1".into()));
    }
    let down: Vec<u8> = (0..n).rev().collect();
    let up: Vec<u8> = (1..n).collect();
    Elem::word(alg, &down)?.mul_word_inverse(&up)
}

/// `U_n = t_{n-1} ... t_2 t_1 t_1'^-1 t_2^-1 ... t_{n-1}^-1`, `U_1 = 1`.
pub fn u_element<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::D)?;
    let n = alg.rank() as u8;
    match n {
        0 => Err(Error::OutOfRange("U_n needs n >= 1".into())),
        1 => Ok(Elem::one(alg)),
        _ => {
            let down: Vec<u8> = (1..n).rev().collect();
            let up: Vec<u8> = [0].into_iter().chain(2..n).collect();
            Elem::word(alg, &down)?.mul_word_inverse(&up)
        }
    }
}

/// `e_k(J_1, ..., J_n)`.
pub fn elementary_jm<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, k: usize) -> Result<Elem<R>> {
    let n = alg.rank();
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} at rank {n}")));
    }
    sym_poly_eval(alg, &SymPoly::elementary(n, k), &jm_elements(alg)?)
}

/// `e'_k(j^D_1, ..., j^D_n; alpha)`.
pub fn e_prime_jm<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>, k: usize) -> Result<Elem<R>> {
    check_type(alg, CoxeterType::D)?;
    let p = e_prime(k, alg.rank(), &alg.alpha())?;
    sym_poly_eval(alg, &p, &j_elements(alg)?)
}

/// Support conditions on `T_n` at the rank `n` of a type B algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TLemmaReport {
    /// `T_n^-1 = T_n - alpha0`.
    pub inverse: bool,
    /// `T_n` is supported on `t_w`, `w` outside `W(B_{n-1})`.
    pub support: bool,
    /// `T_n^-1` is supported on `t_w^-1`, `w` outside `W(B_{n-1})`.
    pub inverse_support: bool,
    /// Same for `(j^B_n)^-1 T_n - 1`.
    pub j_support: bool,
}

impl TLemmaReport {
    pub fn all(&self) -> bool {
        self.inverse && self.support && self.inverse_support && self.j_support
    }
}

pub fn t_lemma_check<R: Coeff>(alg: &Arc<HeckeAlgebra<R>>) -> Result<TLemmaReport> {
    let n = alg.rank();
    let t = t_element(alg)?;
    let g = alg.group().clone();
    let outside = |keys: Vec<u32>| keys.into_iter().all(|w| !g.in_parabolic(w, n - 1));
    let down: Vec<u8> = (1..n as u8).rev().collect();
    let up: Vec<u8> = [0].into_iter().chain(1..n as u8).collect();
    // T_n^-1 = t_{n-1} ... t_1 t_0^-1 t_1^-1 ... t_{n-1}^-1
    let t_inv = Elem::word(alg, &down)?.mul_word_inverse(&up)?;
    let inverse = t.mul(&t_inv)?.sub(&Elem::one(alg))?.is_zero()
        && t_inv == t.add_scalar(&alg.alpha0().neg());
    let support = outside(t.support());
    let inverse_support = outside(t_inv.to_inverse_basis().into_iter().map(|x| x.0).collect());
    let jw = j_b_word(n);
    let j_inv = Elem::word_inverse(alg, &jw.iter().rev().copied().collect::<Vec<_>>())?;
    let r = j_inv.mul(&t)?.sub(&Elem::one(alg))?;
    let j_support = outside(r.to_inverse_basis().into_iter().map(|x| x.0).collect());
    Ok(TLemmaReport { inverse, support, inverse_support, j_support })
}

/// `iota_{D->B}(U_k) = T_k t_0` in `H_{v,1}(B_k)` for `1 <= k <= rank`.
pub fn u_reading_check(rank: usize) -> Result<bool> {
    for k in 1..=rank {
        let d = HeckeAlgebra::<Scalar>::symbolic(CoxeterContext::d(k), ParamMode::Equal)?;
        let b = HeckeAlgebra::<Scalar>::v0_one(k)?;
        let lhs = u_element(&d)?.embed_d_to_b(&b)?;
        let rhs = t_element(&b)?.mul_gen(0)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Element families with a stable text name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    FullTwist,
    FullTwistInverse,
    Zeta,
    Beta,
    Delta,
    /// `e_k(J_1..J_n)`.
    ElemSymJM(usize),
    /// `e'_k(j^D_1..j^D_n; alpha)`.
    EPrimeJ(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FullTwist => f.write_str("full-twist"),
            Family::FullTwistInverse => f.write_str("full-twist-inverse"),
            Family::Zeta => f.write_str("zeta"),
            Family::Beta => f.write_str("beta"),
            Family::Delta => f.write_str("delta"),
            Family::ElemSymJM(k) => write!(f, "e{k}"),
            Family::EPrimeJ(k) => write!(f, "eprime{k}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown { kind: "family", name: s.to_string() };
        Ok(match s {
            "full-twist" | "S" => Family::FullTwist,
            "full-twist-inverse" | "S-inverse" => Family::FullTwistInverse,
            "zeta" => Family::Zeta,
            "beta" => Family::Beta,
            "delta" => Family::Delta,
            _ => {
                if let Some(k) = s.strip_prefix("eprime") {
                    Family::EPrimeJ(k.parse().map_err(|_| unknown())?)
                } else if let Some(k) = s.strip_prefix('e') {
                    Family::ElemSymJM(k.parse().map_err(|_| unknown())?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// Parameter choice of a symbolic algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamChoice {
    Equal,
    Unequal,
    /// `H_{v,1}(B_n)`.
    V0One,
}

impl fmt::Display for ParamChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamChoice::Equal => "equal",
            ParamChoice::Unequal => "unequal",
            ParamChoice::V0One => "v0=1",
        })
    }
}

impl FromStr for ParamChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(ParamChoice::Equal),
            "unequal" => Ok(ParamChoice::Unequal),
            "v0=1" => Ok(ParamChoice::V0One),
            _ => Err(Error::Unknown { kind: "parameter mode", name: s.to_string() }),
        }
    }
}

/// Symbolic algebra for a type, rank and parameter choice.
pub fn symbolic_algebra(
    ty: CoxeterType,
    rank: usize,
    params: ParamChoice,
) -> Result<Arc<HeckeAlgebra<Scalar>>> {
    let ctx = CoxeterContext::new(ty, rank)?;
    match params {
        ParamChoice::Equal => HeckeAlgebra::symbolic(ctx, ParamMode::Equal),
        ParamChoice::Unequal => HeckeAlgebra::symbolic(ctx, ParamMode::Unequal),
        ParamChoice::V0One if ty == CoxeterType::B => HeckeAlgebra::v0_one(rank),
        ParamChoice::V0One => Err(Error::Domain("v0 = 1 exists only in type B".into())),
    }
}

/// A central element: family, type, rank and parameter choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralElementSpec {
    pub family: Family,
    #[serde(rename = "type")]
    pub ty: CoxeterType,
    pub rank: usize,
    pub params: ParamChoice,
}

impl CentralElementSpec {
    pub fn new(family: Family, ty: CoxeterType, rank: usize, params: ParamChoice) -> Result<Self> {
        let spec = CentralElementSpec { family, ty, rank, params };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let need = |ty: CoxeterType| {
            if self.ty == ty {
                Ok(())
            } else {
                Err(Error::TypeMismatch(format!("{} requires type {ty}", self.family)))
            }
        };
        match self.family {
            Family::Beta => need(CoxeterType::B)?,
            Family::Delta | Family::EPrimeJ(_) => need(CoxeterType::D)?,
            _ => {}
        }
        match self.family {
            Family::ElemSymJM(k) | Family::EPrimeJ(k) if k > self.rank => {
                return Err(Error::OutOfRange(format!("k = {k} at rank {}", self.rank)));
            }
            _ => {}
        }
        if self.params != ParamChoice::Equal && self.ty != CoxeterType::B {
            return Err(Error::Domain(format!("parameters {} exist only in type B", self.params)));
        }
        CoxeterContext::new(self.ty, self.rank)?;
        Ok(())
    }

    /// File-name safe key, e.g. `beta-B3-unequal`.
    pub fn key(&self) -> String {
        let p = match self.params {
            ParamChoice::V0One => "v0one".to_string(),
            p => p.to_string(),
        };
        format!("{}-{}{}-{}", self.family, self.ty, self.rank, p)
    }

    pub fn algebra(&self) -> Result<Arc<HeckeAlgebra<Scalar>>> {
        symbolic_algebra(self.ty, self.rank, self.params)
    }

    /// Computes the element without consulting any cache.
    pub fn build(&self) -> Result<HeckeElement<Scalar>> {
        self.validate()?;
        let alg = self.algebra()?;
        build_in(self.family, &alg)
    }
}

/// The element of `family` in an arbitrary algebra of the right type.
pub fn build_in<R: Coeff>(family: Family, alg: &Arc<HeckeAlgebra<R>>) -> Result<Elem<R>> {
    match family {
        Family::FullTwist => Ok(full_twist(alg)),
        Family::FullTwistInverse => Ok(full_twist_inverse(alg)),
        Family::Zeta => zeta(alg),
        Family::Beta => beta(alg),
        Family::Delta => delta(alg),
        Family::ElemSymJM(k) => elementary_jm(alg, k),
        Family::EPrimeJ(k) => e_prime_jm(alg, k),
    }
}

#[cfg(test)]
mod tests;
