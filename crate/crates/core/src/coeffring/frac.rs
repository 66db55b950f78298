//! Reduced fractions of Laurent polynomials.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{exact_div, poly_gcd, Laurent, Mono, NVARS};
use super::rational::Q;
use super::zip::{self, ZipPoint};
use crate::error::{Error, Result};

pub const VAR_NAMES: [&str; NVARS] = ["v", "v0", "a", "y", "yb", "s", "l1", "l2"];

/// Fraction `num / den` in canonical form: `den` is `None` (meaning one) or a
/// non-constant polynomial with nonnegative exponents, no monomial factor,
/// leading coefficient one, and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatFunc {
    num: Laurent,
    den: Option<Laurent>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Laurent::zero(), den: None }
    }

    pub fn one() -> Self {
        Self::from_poly(Laurent::one())
    }

    pub fn from_poly(p: Laurent) -> Self {
        RatFunc { num: p, den: None }
    }

    pub fn constant(q: Q) -> Self {
        Self::from_poly(Laurent::constant(q))
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> Option<&Laurent> {
        self.den.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_none() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_none()
    }

    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.as_monomial().is_some() {
            return Self::canon(num, den);
        }
        let g = poly_gcd(&num.split_monomial().1, &den.split_monomial().1);
        Self::divide_out(num, den, &g)
    }

    fn divide_out(num: Laurent, den: Laurent, g: &Laurent) -> Self {
        if g.is_one() {
            Self::canon(num, den)
        } else {
            let (nm, n) = num.split_monomial();
            let (dm, d) = den.split_monomial();
            let n = exact_div(&n, g).unwrap().mul_mono(&nm);
            Self::canon(n, exact_div(&d, g).unwrap().mul_mono(&dm))
        }
    }

    /// Canonical form of `num / den` for coprime `num` and `den`.
    fn canon(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (dm, d) = den.split_monomial();
        if let Some((m, c)) = d.as_monomial() {
            let m = dm.mul(&m);
            return Self::from_poly(num.mul_term(&m.inv(), &c.inv().unwrap()));
        }
        let lc_inv = d.leading().unwrap().1.inv().unwrap();
        RatFunc { num: num.mul_term(&dm.inv(), &lc_inv), den: Some(d.scale(&lc_inv)) }
    }

    fn den_or_one(&self) -> Laurent {
        self.den.clone().unwrap_or_else(Laurent::one)
    }

    pub fn add(&self, o: &Self) -> Self {
        match (&self.den, &o.den) {
            (None, None) => Self::from_poly(self.num.add(&o.num)),
            (Some(a), Some(b)) if a == b => Self::normalize(self.num.add(&o.num), a.clone()),
            (None, Some(d)) => Self::canon(self.num.mul(d).add(&o.num), d.clone()),
            (Some(d), None) => Self::canon(self.num.add(&o.num.mul(d)), d.clone()),
            (Some(a), Some(b)) => {
                let g = poly_gcd(a, b);
                if g.is_one() {
                    return Self::canon(self.num.mul(b).add(&o.num.mul(a)), a.mul(b));
                }
                let a1 = exact_div(a, &g).unwrap();
                let b1 = exact_div(b, &g).unwrap();
                let num = self.num.mul(&b1).add(&o.num.mul(&a1));
                if num.is_zero() {
                    return Self::zero();
                }
                let h = poly_gcd(&num.split_monomial().1, &g);
                Self::divide_out(num, a.mul(&b1), &h)
            }
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        // cross-cancel: n1 and n2 are already coprime to their own denominators
        let cancel = |n: &Laurent, d: Option<&Laurent>| -> (Laurent, Laurent) {
            match d {
                None => (n.clone(), Laurent::one()),
                Some(d) => {
                    let g = poly_gcd(&n.split_monomial().1, d);
                    if g.is_one() {
                        (n.clone(), d.clone())
                    } else {
                        let (nm, n) = n.split_monomial();
                        (exact_div(&n, &g).unwrap().mul_mono(&nm), exact_div(d, &g).unwrap())
                    }
                }
            }
        };
        match (&self.den, &o.den) {
            (None, None) => Self::from_poly(self.num.mul(&o.num)),
            _ => {
                let (n1, d2) = cancel(&self.num, o.den.as_ref());
                let (n2, d1) = cancel(&o.num, self.den.as_ref());
                Self::canon(n1.mul(&n2), d1.mul(&d2))
            }
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::canon(self.den_or_one(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv().ok_or(Error::DivisionByZero)? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(match &base.den {
            None => Self::from_poly(base.num.pow(e)),
            Some(d) => RatFunc { num: base.num.pow(e), den: Some(d.pow(e)) },
        })
    }

    /// Applies a monomial automorphism to numerator and denominator.
    pub fn map_monos(&self, f: impl Fn(&Mono) -> Mono + Copy) -> Self {
        let num = self.num.map_monos(f);
        match &self.den {
            None => Self::from_poly(num),
            Some(d) => Self::normalize(num, d.map_monos(f)),
        }
    }

    /// v, v0, a, s inverted; y and yb exchanged; l1, l2 fixed.
    pub fn bar(&self) -> Self {
        self.map_monos(bar_mono)
    }

    /// Ring homomorphism replacing each variable with `Some` image.
    pub fn substitute(&self, images: &[Option<RatFunc>; NVARS]) -> Result<Self> {
        let mut powers: HashMap<(usize, i16), RatFunc> = HashMap::new();
        let num = subst_poly(&self.num, images, &mut powers)?;
        match &self.den {
            None => Ok(num),
            Some(d) => {
                let den = subst_poly(d, images, &mut powers)?;
                if den.is_zero() {
                    return Err(Error::VanishingDenominator);
                }
                num.div(&den)
            }
        }
    }

    pub fn eval_rational(&self, point: &[BigRational; NVARS]) -> Result<BigRational> {
        let ev = |p: &Laurent| -> Result<BigRational> {
            let mut acc = BigRational::zero();
            for (m, q) in p.terms() {
                let mut t = q.to_big();
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if e < 0 && point[i].is_zero() {
                        return Err(Error::NotInvertible(VAR_NAMES[i].into()));
                    }
                    t *= num_traits::pow::Pow::pow(&point[i], e as i32);
                }
                acc += t;
            }
            Ok(acc)
        };
        let n = ev(&self.num)?;
        match &self.den {
            None => Ok(n),
            Some(d) => {
                let dv = ev(d)?;
                if dv.is_zero() {
                    return Err(Error::VanishingDenominator);
                }
                Ok(n / dv)
            }
        }
    }

    /// Evaluation in the prime field at `point`.
    pub fn eval_mod(&self, point: &ZipPoint) -> Result<u64> {
        let n = eval_poly_mod(&self.num, point)?;
        match &self.den {
            None => Ok(n),
            Some(d) => {
                let dv = eval_poly_mod(d, point)?;
                if dv == 0 {
                    return Err(Error::VanishingDenominator);
                }
                Ok(zip::mul_mod(n, zip::inv_mod(dv)))
            }
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.num.uses_var(var) || self.den.as_ref().is_some_and(|d| d.uses_var(var))
    }
}

pub(crate) fn bar_mono(m: &Mono) -> Mono {
    let e = m.0;
    Mono([-e[0], -e[1], -e[2], e[4], e[3], -e[5], e[6], e[7]])
}

fn subst_poly(
    p: &Laurent,
    images: &[Option<RatFunc>; NVARS],
    powers: &mut HashMap<(usize, i16), RatFunc>,
) -> Result<RatFunc> {
    let mut acc = RatFunc::zero();
    for (m, q) in p.terms() {
        let mut kept = Mono::ONE;
        let mut t = RatFunc::constant(q.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match &images[i] {
                None => kept.0[i] = e,
                Some(img) => {
                    let pw = match powers.get(&(i, e)) {
                        Some(pw) => pw.clone(),
                        None => {
                            let pw = img.pow(e as i32).map_err(|_| {
                                Error::NotInvertible(format!("{} (image of {})", img, VAR_NAMES[i]))
                            })?;
                            powers.insert((i, e), pw.clone());
                            pw
                        }
                    };
                    t = t.mul(&pw);
                }
            }
        }
        if !kept.is_one() {
            t = t.mul(&RatFunc::from_poly(Laurent::monomial(kept, Q::ONE)));
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

fn eval_poly_mod(p: &Laurent, point: &ZipPoint) -> Result<u64> {
    let mut acc = 0u64;
    for (m, q) in p.terms() {
        let mut t = q.mod_p(zip::P).ok_or(Error::VanishingDenominator)?;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let x = point.values[i];
            if x == 0 && e < 0 {
                return Err(Error::NotInvertible(VAR_NAMES[i].into()));
            }
            let base = if e < 0 { zip::inv_mod(x) } else { x };
            t = zip::mul_mod(t, zip::pow_mod(base, e.unsigned_abs() as u64));
        }
        acc = zip::add_mod(acc, t);
    }
    Ok(acc)
}

fn fmt_mono(m: &Mono, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(VAR_NAMES[i])?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Prints terms in descending monomial order.
pub(crate) fn fmt_laurent(p: &Laurent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, q)) in p.terms().iter().rev().enumerate() {
        let neg = q.is_negative();
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let a = q.abs();
        if m.is_one() {
            write!(f, "{a}")?;
        } else {
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            fmt_mono(m, f)?;
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            None => fmt_laurent(&self.num, f),
            Some(d) => {
                f.write_str("(")?;
                fmt_laurent(&self.num, f)?;
                f.write_str(")/(")?;
                fmt_laurent(d, f)?;
                f.write_str(")")
            }
        }
    }
}

impl RatFunc {
    /// True when the expression needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        self.den.is_some() || self.num.len() > 1
    }

    pub fn is_negative_monomial(&self) -> bool {
        self.den.is_none()
            && self.num.as_monomial().is_some_and(|(_, q)| q.is_negative())
    }
}
