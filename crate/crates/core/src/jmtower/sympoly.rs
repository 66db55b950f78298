//! Polynomials in commuting variables `x_1..x_n`, and their evaluation on
//! commuting Hecke elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeffring::Coeff;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};

/// Sparse polynomial keyed by exponent vectors of length `nvars`.
#[derive(Clone, PartialEq, Debug)]
pub struct SymPoly<R: Coeff> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Coeff> SymPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, R::one())
    }

    /// `c * x_i^e`.
    pub fn monomial(nvars: usize, i: usize, e: u32, c: R) -> Self {
        let mut m = vec![0; nvars];
        m[i] = e;
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, R)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    /// Elementary symmetric polynomial `e_k(x_1..x_n)`; zero for `k > n`.
    pub fn elementary(nvars: usize, k: usize) -> Self {
        let mut p = Self::zero(nvars);
        if k > nvars {
            return p;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut m = vec![0; nvars];
            for &i in &idx {
                m[i] = 1;
            }
            p.add_term(m, R::one());
            // next k-subset in lexicographic order
            let Some(pos) = (0..k).rev().find(|&j| idx[j] < nvars - k + j) else {
                return p;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn add_term(&mut self, m: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(d) => {
                d.add_assign(&c);
                if d.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.mul(k))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut p = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                p.add_term(m, c1.mul(c2));
            }
        }
        p
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == degree)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Invariance under the transpositions `x_i <-> x_{i+1}`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let swapped = Self::from_terms(
                self.nvars,
                self.terms.iter().map(|(m, c)| {
                    let mut m = m.clone();
                    m.swap(i, i + 1);
                    (m, c.clone())
                }),
            );
            swapped == *self
        })
    }
}

/// Degree `2k` part of `prod_i (1 + alpha x_i - x_i^2)`.
pub fn e_prime<R: Coeff>(k: usize, n: usize, alpha: &R) -> Result<SymPoly<R>> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} with n = {n}")));
    }
    let mut prod = SymPoly::one(n);
    for i in 0..n {
        let factor = SymPoly::one(n)
            .add(&SymPoly::monomial(n, i, 1, alpha.clone()))
            .add(&SymPoly::monomial(n, i, 2, R::one().neg()));
        prod = prod.mul(&factor);
    }
    Ok(prod.homogeneous_part(2 * k as u32))
}

/// `sum_{i+j=2k} (-1)^i v^(j-i) e_i e_j`.
pub fn e_prime_explicit<R: Coeff>(k: usize, n: usize, v: &R) -> Result<SymPoly<R>> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} with n = {n}")));
    }
    let vinv = v.inv().ok_or(Error::DivisionByZero)?;
    let mut out = SymPoly::zero(n);
    for i in 0..=2 * k {
        let j = 2 * k - i;
        let mut c = R::one();
        let d = j as i64 - i as i64;
        for _ in 0..d.unsigned_abs() {
            c = c.mul(if d > 0 { v } else { &vinv });
        }
        if i % 2 == 1 {
            c = c.neg();
        }
        let term = SymPoly::elementary(n, i).mul(&SymPoly::elementary(n, j)).scale(&c);
        out = out.add(&term);
    }
    Ok(out)
}

/// `P(h_1, ..., h_n)` for pairwise commuting elements.
pub fn sym_poly_eval<R: Coeff>(
    alg: &Arc<HeckeAlgebra<R>>,
    p: &SymPoly<R>,
    elements: &[HeckeElement<R>],
) -> Result<HeckeElement<R>> {
    if elements.len() != p.nvars() {
        return Err(Error::OutOfRange(format!(
            "{} elements for {} variables",
            elements.len(),
            p.nvars()
        )));
    }
    for (i, x) in elements.iter().enumerate() {
        for y in &elements[i + 1..] {
            if !x.commutes_with(y)? {
                return Err(Error::NonCommuting(format!("{x} and {y}")));
            }
        }
    }
    let terms: Vec<(&[u32], &R)> = p.terms().map(|(m, c)| (m.as_slice(), c)).collect();
    horner(alg, &terms, elements, elements.len())
}

/// Evaluates the terms in the first `nv` variables, Horner in the last one.
fn horner<R: Coeff>(
    alg: &Arc<HeckeAlgebra<R>>,
    terms: &[(&[u32], &R)],
    elements: &[HeckeElement<R>],
    nv: usize,
) -> Result<HeckeElement<R>> {
    if nv == 0 {
        let mut c = R::zero();
        for (_, x) in terms {
            c.add_assign(x);
        }
        return Ok(HeckeElement::scalar(alg, c));
    }
    let i = nv - 1;
    let Some(deg) = terms.iter().map(|(m, _)| m[i]).max() else {
        return Ok(HeckeElement::zero(alg));
    };
    let mut acc = HeckeElement::zero(alg);
    for d in (0..=deg).rev() {
        if !acc.is_zero() {
            acc = acc.mul(&elements[i])?;
        }
        let part: Vec<(&[u32], &R)> = terms.iter().filter(|(m, _)| m[i] == d).copied().collect();
        if !part.is_empty() {
            acc = acc.add(&horner(alg, &part, elements, i)?)?;
        }
    }
    Ok(acc)
}
