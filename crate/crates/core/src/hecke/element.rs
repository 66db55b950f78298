use std::fmt;
use std::sync::Arc;

use super::walk::{self, left_t, right_t, right_t_inv, unit_vector};
use super::{HeckeAlgebra, ParamMode};
use crate::coeffring::Coeff;
use crate::coxeter::{CoxeterType, GroupElement};
use crate::error::{Error, Result};

/// Sparse element `sum c_w t_w`, terms sorted by element index (length, then
/// first reduced word), no zero coefficients.
#[derive(Clone)]
pub struct HeckeElement<R: Coeff> {
    alg: Arc<HeckeAlgebra<R>>,
    terms: Vec<(u32, R)>,
}

impl<R: Coeff> PartialEq for HeckeElement<R> {
    fn eq(&self, o: &Self) -> bool {
        self.alg.same_as(&o.alg) && self.terms == o.terms
    }
}

impl<R: Coeff> fmt::Debug for HeckeElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.alg, self)
    }
}

fn accumulate<R: Coeff>(acc: &mut [R], c: &R, v: &[R]) {
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_mul(c, x);
    }
}

impl<R: Coeff> HeckeElement<R> {
    pub fn zero(alg: &Arc<HeckeAlgebra<R>>) -> Self {
        HeckeElement { alg: alg.clone(), terms: Vec::new() }
    }

    pub fn one(alg: &Arc<HeckeAlgebra<R>>) -> Self {
        Self::scalar(alg, R::one())
    }

    pub fn scalar(alg: &Arc<HeckeAlgebra<R>>, c: R) -> Self {
        Self::from_terms(alg, vec![(0, c)])
    }

    /// `t_w` for the element with index `i`.
    pub fn basis(alg: &Arc<HeckeAlgebra<R>>, i: u32) -> Self {
        HeckeElement { alg: alg.clone(), terms: vec![(i, R::one())] }
    }

    pub fn t(alg: &Arc<HeckeAlgebra<R>>, w: &GroupElement) -> Result<Self> {
        Ok(Self::basis(alg, alg.group().index_of(w)?))
    }

    pub fn generator(alg: &Arc<HeckeAlgebra<R>>, s: u8) -> Result<Self> {
        let slot = alg.group().gen_slot(s)?;
        Ok(Self::basis(alg, alg.group().rmul(0, slot)))
    }

    /// `t_{s1} t_{s2} ... t_{sk}` for an arbitrary word.
    pub fn word(alg: &Arc<HeckeAlgebra<R>>, word: &[u8]) -> Result<Self> {
        let mut c = unit_vector(alg.dim(), 0);
        for &s in word {
            right_t(alg, &mut c, alg.group().gen_slot(s)?);
        }
        Ok(Self::from_dense(alg, c))
    }

    /// `t_{s1}^-1 t_{s2}^-1 ... t_{sk}^-1`.
    pub fn word_inverse(alg: &Arc<HeckeAlgebra<R>>, word: &[u8]) -> Result<Self> {
        let mut c = unit_vector(alg.dim(), 0);
        for &s in word {
            right_t_inv(alg, &mut c, alg.group().gen_slot(s)?);
        }
        Ok(Self::from_dense(alg, c))
    }

    /// `t_w^-1` expanded in the `t` basis.
    pub fn basis_inverse(alg: &Arc<HeckeAlgebra<R>>, i: u32) -> Self {
        Self::from_dense(alg, basis_inverse_dense(alg, i))
    }

    pub fn from_dense(alg: &Arc<HeckeAlgebra<R>>, c: Vec<R>) -> Self {
        let terms = c
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i as u32, x))
            .collect();
        HeckeElement { alg: alg.clone(), terms }
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_terms(alg: &Arc<HeckeAlgebra<R>>, mut terms: Vec<(u32, R)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(u32, R)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some((j, d)) if *j == i => d.add_assign(&c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        HeckeElement { alg: alg.clone(), terms: out }
    }

    pub fn dense(&self) -> Vec<R> {
        let mut c = vec![R::zero(); self.alg.dim()];
        for (i, x) in &self.terms {
            c[*i as usize] = x.clone();
        }
        c
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra<R>> {
        &self.alg
    }

    pub fn terms(&self) -> &[(u32, R)] {
        &self.terms
    }

    pub fn support(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.0).collect()
    }

    pub fn coeff(&self, i: u32) -> R {
        match self.terms.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn merge(&self, o: &Self, sign: bool) -> Result<Self> {
        self.alg.check_same(&o.alg)?;
        let mut terms = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let a = self.terms.get(i);
            let b = o.terms.get(j);
            match (a, b) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let c = if sign { x.1.sub(&y.1) } else { x.1.add(&y.1) };
                    if !c.is_zero() {
                        terms.push((x.0, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    terms.push(x.clone());
                    i += 1;
                }
                (Some(x), None) => {
                    terms.push(x.clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    terms.push((y.0, if sign { y.1.neg() } else { y.1.clone() }));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(HeckeElement { alg: self.alg.clone(), terms })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(i, c)| (*i, c.neg())).collect();
        HeckeElement { alg: self.alg.clone(), terms }
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero(&self.alg);
        }
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (*i, c.mul(k)))
            .filter(|t| !t.1.is_zero())
            .collect();
        HeckeElement { alg: self.alg.clone(), terms }
    }

    pub fn add_scalar(&self, k: &R) -> Self {
        self.add(&Self::scalar(&self.alg, k.clone())).unwrap()
    }

    /// Product, walking the reduced words of the sparser factor.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.alg.check_same(&o.alg)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.alg));
        }
        let alg = &self.alg;
        let g = alg.group();
        let mut acc = vec![R::zero(); alg.dim()];
        if o.len() <= self.len() {
            // h1 t_w: extend along the word of w on the right
            walk::walk(
                g,
                &o.support(),
                self.dense(),
                &|c: &mut Vec<R>, slot| right_t(alg, c, slot),
                &mut |w, c: &Vec<R>| accumulate(&mut acc, &o.coeff(w), c),
            );
        } else {
            // t_w h2 with node u = w^-1: t_{(us)^-1} = t_s t_{u^-1}
            let targets: Vec<u32> = self.terms.iter().map(|t| g.inverse(t.0)).collect();
            walk::walk(
                g,
                &targets,
                o.dense(),
                &|c: &mut Vec<R>, slot| left_t(alg, c, slot),
                &mut |u, c: &Vec<R>| accumulate(&mut acc, &self.coeff(g.inverse(u)), c),
            );
        }
        Ok(Self::from_dense(alg, acc))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..n {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// `h t_s`.
    pub fn mul_gen(&self, s: u8) -> Result<Self> {
        let mut c = self.dense();
        right_t(&self.alg, &mut c, self.alg.group().gen_slot(s)?);
        Ok(Self::from_dense(&self.alg, c))
    }

    /// `h t_{s1} ... t_{sk}`.
    pub fn mul_word(&self, word: &[u8]) -> Result<Self> {
        let g = self.alg.group();
        let mut c = self.dense();
        for &s in word {
            right_t(&self.alg, &mut c, g.gen_slot(s)?);
        }
        Ok(Self::from_dense(&self.alg, c))
    }

    /// `h t_{s1}^-1 ... t_{sk}^-1`.
    pub fn mul_word_inverse(&self, word: &[u8]) -> Result<Self> {
        let g = self.alg.group();
        let mut c = self.dense();
        for &s in word {
            right_t_inv(&self.alg, &mut c, g.gen_slot(s)?);
        }
        Ok(Self::from_dense(&self.alg, c))
    }

    /// `t_s h`.
    pub fn gen_mul(&self, s: u8) -> Result<Self> {
        let mut c = self.dense();
        left_t(&self.alg, &mut c, self.alg.group().gen_slot(s)?);
        Ok(Self::from_dense(&self.alg, c))
    }

    /// Inverse of a single term `c t_w`.
    pub fn inverse(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [(w, c)] => {
                let ci = c.inv().ok_or_else(|| Error::NotInvertible(c.to_string()))?;
                Ok(Self::basis_inverse(&self.alg, *w).scale(&ci))
            }
            _ => Err(Error::NotInvertible("only single-term elements are inverted".into())),
        }
    }

    /// `sum bar(c_w) bar(t_w)` with `bar(t_w) = t_{w^-1}^-1`.
    pub fn bar(&self) -> Self {
        let alg = &self.alg;
        let mut acc = vec![R::zero(); alg.dim()];
        walk::walk(
            alg.group(),
            &self.support(),
            unit_vector::<R>(alg.dim(), 0),
            &|c: &mut Vec<R>, slot| right_t_inv(alg, c, slot),
            &mut |w, c: &Vec<R>| accumulate(&mut acc, &self.coeff(w).bar(), c),
        );
        Self::from_dense(alg, acc)
    }

    /// The anti-involution `t_w -> t_{w^-1}`.
    pub fn anti_i(&self) -> Self {
        let g = self.alg.group();
        let terms = self.terms.iter().map(|(w, c)| (g.inverse(*w), c.clone())).collect();
        Self::from_terms(&self.alg, terms)
    }

    pub fn tau(&self) -> R {
        let tv = self.alg.tau_vector();
        let mut acc = R::zero();
        for (w, c) in &self.terms {
            acc.add_mul(c, &tv[*w as usize]);
        }
        acc
    }

    /// Coefficients `h_x` with `h = sum h_x t_x^-1`, by length-descending
    /// elimination: the leading term of `t_{w^-1}^-1` is `t_w`.
    pub fn to_inverse_basis(&self) -> Vec<(u32, R)> {
        let g = self.alg.group();
        let mut r = self.dense();
        let mut out = Vec::new();
        for w in (0..r.len()).rev() {
            if r[w].is_zero() {
                continue;
            }
            let c = r[w].clone();
            let x = g.inverse(w as u32);
            let b = basis_inverse_dense(&self.alg, x);
            for (ri, bi) in r.iter_mut().zip(&b) {
                if !bi.is_zero() {
                    *ri = ri.sub(&c.mul(bi));
                }
            }
            debug_assert!(r[w].is_zero());
            out.push((x, c));
        }
        out.sort_by_key(|t| t.0);
        out
    }

    /// Same coefficients through `h_x = bar([t_{x^-1}] bar(h))`.
    pub fn inverse_basis_via_bar(&self) -> Vec<(u32, R)> {
        let g = self.alg.group();
        let mut out: Vec<(u32, R)> =
            self.bar().terms.iter().map(|(w, c)| (g.inverse(*w), c.bar())).collect();
        out.sort_by_key(|t| t.0);
        out
    }

    pub fn from_inverse_basis(alg: &Arc<HeckeAlgebra<R>>, coeffs: &[(u32, R)]) -> Self {
        let mut acc = vec![R::zero(); alg.dim()];
        for (x, c) in coeffs {
            accumulate(&mut acc, c, &basis_inverse_dense(alg, *x));
        }
        Self::from_dense(alg, acc)
    }

    /// `<h, h'> = tau(i(bar h) h')`.
    pub fn pairing(&self, o: &Self) -> Result<R> {
        self.alg.check_same(&o.alg)?;
        Ok(self.bar().anti_i().mul(o)?.tau())
    }

    /// `<self, t_w>` for each `w` in `targets` (all elements when `None`);
    /// other entries are zero.
    ///
    /// Uses `<t_x, t_{y^-1}^-1> = delta_{x,y}`: with `t_w = sum_y r_yw t_{y^-1}^-1`
    /// the value is `sum_y bar(c_y) r_yw`. The `r_yw` only involve the
    /// parameters, so the walk stays cheap when `self` has large coefficients.
    pub fn pairing_row(&self, targets: Option<&[u32]>) -> Vec<R> {
        let alg = &self.alg;
        let n = alg.dim();
        let all: Vec<u32>;
        let targets = match targets {
            Some(t) => t,
            None => {
                all = (0..n as u32).collect();
                &all
            }
        };
        let mut barred = vec![R::zero(); n];
        for (w, c) in &self.terms {
            barred[*w as usize] = c.bar();
        }
        let mut out = vec![R::zero(); n];
        walk::walk(
            alg.group(),
            targets,
            unit_vector::<R>(n, 0),
            &|c: &mut Vec<R>, slot| walk::right_t_in_inverse_basis(alg, c, slot),
            &mut |w, c: &Vec<R>| {
                let mut acc = R::zero();
                for (x, r) in barred.iter().zip(c) {
                    acc.add_mul(x, r);
                }
                out[w as usize] = acc;
            },
        );
        out
    }

    /// `<self, o>` from the values of `pairing_row` on the support of `o`.
    pub fn pairing_by_rows(&self, o: &Self) -> Result<R> {
        self.alg.check_same(&o.alg)?;
        let row = self.pairing_row(Some(&o.support()));
        let mut acc = R::zero();
        for (w, c) in &o.terms {
            acc.add_mul(c, &row[*w as usize]);
        }
        Ok(acc)
    }

    pub fn commutes_with(&self, o: &Self) -> Result<bool> {
        Ok(self.mul(o)? == o.mul(self)?)
    }

    /// `h t_s = t_s h` for every generator.
    pub fn is_central(&self) -> bool {
        let alg = &self.alg;
        let c = self.dense();
        (0..alg.group().gens().len()).all(|slot| {
            let mut r = c.clone();
            right_t(alg, &mut r, slot);
            let mut l = c.clone();
            left_t(alg, &mut l, slot);
            r == l
        })
    }

    pub fn in_parabolic(&self, level: usize) -> bool {
        let g = self.alg.group();
        self.terms.iter().all(|(w, _)| g.in_parabolic(*w, level))
    }

    /// Image under the natural embedding into a larger rank.
    pub fn embed(&self, target: &Arc<HeckeAlgebra<R>>) -> Result<Self> {
        let (src, dst) = (self.alg.ctx(), target.ctx());
        if src.ty != dst.ty
            || dst.rank < src.rank
            || self.alg.mode() != target.mode()
            || self.alg.params() != target.params()
        {
            return Err(Error::ContextMismatch(format!("cannot embed {:?} into {target:?}", self.alg)));
        }
        let g = self.alg.group();
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((g.embed_index(*w, target.group())?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(target, terms))
    }

    /// `H(D_n) -> H_{v,1}(B_n)`: `t_1' -> t_0 t_1 t_0`, `t_i -> t_i`.
    pub fn embed_d_to_b(&self, target: &Arc<HeckeAlgebra<R>>) -> Result<Self> {
        let src = self.alg.ctx();
        let dst = target.ctx();
        if src.ty != CoxeterType::D || dst.ty != CoxeterType::B || src.rank != dst.rank {
            return Err(Error::ContextMismatch(format!("{src} does not embed into {dst}")));
        }
        if target.mode() != ParamMode::Unequal || !target.alpha0().is_zero() {
            return Err(Error::ContextMismatch("target must be H_{v,1}(B_n)".into()));
        }
        if self.alg.params().v != target.params().v {
            return Err(Error::ContextMismatch("parameter v differs".into()));
        }
        let sg = self.alg.group();
        let tg = target.group();
        let images: Vec<Vec<usize>> = sg
            .gens()
            .iter()
            .map(|&s| {
                let word: &[u8] = if s == 0 { &[0, 1, 0] } else { std::slice::from_ref(&s) };
                word.iter().map(|&t| tg.gen_slot(t).unwrap()).collect()
            })
            .collect();
        let mut acc = vec![R::zero(); target.dim()];
        walk::walk(
            sg,
            &self.support(),
            unit_vector::<R>(target.dim(), 0),
            &|c: &mut Vec<R>, slot| {
                for &ts in &images[slot] {
                    right_t(target, c, ts);
                }
            },
            &mut |w, c: &Vec<R>| accumulate(&mut acc, &self.coeff(w), c),
        );
        Ok(Self::from_dense(target, acc))
    }

    /// Applies `f` to every coefficient, landing in an algebra over the
    /// same group.
    pub fn map_coeffs<S: Coeff>(
        &self,
        target: &Arc<HeckeAlgebra<S>>,
        f: impl Fn(&R) -> Result<S>,
    ) -> Result<HeckeElement<S>> {
        if self.alg.ctx() != target.ctx() {
            return Err(Error::ContextMismatch(format!("{:?} vs {target:?}", self.alg)));
        }
        let terms = self.terms.iter().map(|(w, c)| Ok((*w, f(c)?))).collect::<Result<Vec<_>>>()?;
        Ok(HeckeElement::from_terms(target, terms))
    }
}

fn basis_inverse_dense<R: Coeff>(alg: &HeckeAlgebra<R>, i: u32) -> Vec<R> {
    let g = alg.group();
    let mut c = unit_vector(alg.dim(), 0);
    for &s in g.word(i).iter().rev() {
        right_t_inv(alg, &mut c, g.gen_slot(s).unwrap());
    }
    c
}
