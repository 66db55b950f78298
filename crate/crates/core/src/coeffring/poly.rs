//! Sparse multivariate Laurent polynomials over `Q`.

use std::cmp::Ordering;

use super::rational::{content, Q};

/// Number of indeterminates: v, v0, a, y, yb, s, l1, l2.
pub const NVARS: usize = 8;

/// Exponent vector. The derived `Ord` is lexicographic in variable order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono(pub [i16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(i: usize, e: i16) -> Mono {
        let mut m = [0; NVARS];
        m[i] = e;
        Mono(m)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Mono(m)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        Mono(m)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.map(|e| -e))
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

/// Sparse Laurent polynomial, terms sorted ascending by monomial, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    terms: Vec<(Mono, Q)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::ONE)
    }

    pub fn constant(q: Q) -> Self {
        Self::monomial(Mono::ONE, q)
    }

    pub fn monomial(m: Mono, q: Q) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(m, q)] }
        }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i, 1), Q::ONE)
    }

    /// Builds from unsorted terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, Q)>) -> Self {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, q) in terms {
            match out.last_mut() {
                Some((lm, lq)) if *lm == m => *lq = lq.add(&q),
                _ => out.push((m, q)),
            }
        }
        out.retain(|(_, q)| !q.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::ZERO),
            [(m, q)] if m.is_one() => Some(q.clone()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(Mono, Q)> {
        match self.terms.as_slice() {
            [(m, q)] => Some((*m, q.clone())),
            _ => None,
        }
    }

    /// Greatest term in lex order.
    pub fn leading(&self) -> Option<&(Mono, Q)> {
        self.terms.last()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.merge(o, true)
    }

    fn merge(&self, o: &Laurent, negate: bool) -> Laurent {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let q = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, q));
                    j += 1;
                }
                Ordering::Equal => {
                    let q = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !q.is_zero() {
                        out.push((a[i].0, q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let q = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, q));
        }
        Laurent { terms: out }
    }

    pub fn neg(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, q)| (*m, q.neg())).collect() }
    }

    pub fn scale(&self, c: &Q) -> Laurent {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Laurent { terms: self.terms.iter().map(|(m, q)| (*m, q.mul(c))).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Laurent {
        // multiplication by a monomial preserves the order
        Laurent { terms: self.terms.iter().map(|(t, q)| (t.mul(m), q.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Q) -> Laurent {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(t, q)| (t.mul(m), q.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if let [(m, c)] = small.terms.as_slice() {
            return big.mul_term(m, c);
        }
        let mut prods = Vec::with_capacity(self.len() * o.len());
        for (ma, qa) in &small.terms {
            for (mb, qb) in &big.terms {
                prods.push((ma.mul(mb), qa.mul(qb)));
            }
        }
        Self::from_terms(prods)
    }

    pub fn pow(&self, mut e: u32) -> Laurent {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Applies a monomial transformation (which need not preserve order).
    pub fn map_monos(&self, f: impl Fn(&Mono) -> Mono) -> Laurent {
        Self::from_terms(self.terms.iter().map(|(m, q)| (f(m), q.clone())).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Laurent {
        Self::from_terms(self.terms.iter().map(|(m, q)| (*m, f(q))).collect())
    }

    /// Componentwise minimum of exponents (the monomial content).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => *m,
            None => return Mono::ONE,
        };
        it.fold(first, |acc, (m, _)| acc.meet(m))
    }

    pub fn max_exponent(&self, var: usize) -> Option<i16> {
        self.terms.iter().map(|(m, _)| m.0[var]).max()
    }

    pub fn min_exponent(&self, var: usize) -> Option<i16> {
        self.terms.iter().map(|(m, _)| m.0[var]).min()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] != 0)
    }

    /// Coefficient of `var^k`, as a polynomial free of `var`.
    pub fn coeff_of(&self, var: usize, k: i16) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[var] == k)
                .map(|(m, q)| {
                    let mut m = *m;
                    m.0[var] = 0;
                    (m, q.clone())
                })
                .collect(),
        }
    }

    /// Rational content, signed so that the leading coefficient of the
    /// primitive part is positive.
    pub fn rational_content(&self) -> Q {
        let refs: Vec<&Q> = self.terms.iter().map(|(_, q)| q).collect();
        let c = content(&refs);
        match self.leading() {
            Some((_, q)) if q.is_negative() => c.neg(),
            _ => c,
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Laurent {
        match self.leading() {
            Some((_, q)) if !q.is_one() => self.scale(&q.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Divides out the monomial content, returning (content, shifted poly)
    /// with all exponents of the shifted poly nonnegative.
    pub fn split_monomial(&self) -> (Mono, Laurent) {
        let m = self.min_mono();
        if m.is_one() {
            (m, self.clone())
        } else {
            (m, self.mul_mono(&m.inv()))
        }
    }

    pub fn total_degree_span(&self) -> i64 {
        let (_, p) = self.split_monomial();
        p.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }
}

/// Exact division of polynomials with nonnegative exponents. Returns `None`
/// when `b` does not divide `a`.
pub fn exact_div(a: &Laurent, b: &Laurent) -> Option<Laurent> {
    assert!(!b.is_zero(), "division by zero polynomial");
    if let Some((m, c)) = b.as_monomial() {
        return Some(a.mul_term(&m.inv(), &c.inv().unwrap()));
    }
    let (lm, lc) = b.leading().cloned().unwrap();
    let lc_inv = lc.inv().unwrap();
    let mut r = a.clone();
    let mut quot = Vec::new();
    while let Some((rm, rc)) = r.leading().cloned() {
        if !lm.divides(&rm) {
            return None;
        }
        let qm = rm.div(&lm);
        let qc = rc.mul(&lc_inv);
        r = r.sub(&b.mul_term(&qm, &qc));
        quot.push((qm, qc));
    }
    Some(Laurent::from_terms(quot))
}

fn primitive_q(p: &Laurent) -> Laurent {
    let c = p.rational_content();
    p.scale(&c.inv().unwrap())
}

/// Content with respect to `var`: the gcd of the coefficients of the powers
/// of `var`.
fn content_in(p: &Laurent, var: usize) -> Laurent {
    let lo = p.min_exponent(var).unwrap_or(0);
    let hi = p.max_exponent(var).unwrap_or(0);
    let mut g = Laurent::zero();
    for k in (lo..=hi).rev() {
        let c = p.coeff_of(var, k);
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn pseudo_rem(a: &Laurent, b: &Laurent, var: usize) -> Laurent {
    let db = b.max_exponent(var).unwrap();
    let lcb = b.coeff_of(var, db);
    let mut r = a.clone();
    while let Some(dr) = r.max_exponent(var) {
        if r.is_zero() || dr < db {
            break;
        }
        let lcr = r.coeff_of(var, dr);
        let shift = Mono::var(var, dr - db);
        r = lcb.mul(&r).sub(&lcr.mul(&b.mul_mono(&shift)));
        if !r.is_zero() {
            r = primitive_q(&r);
        }
    }
    r
}

fn primitive_part_in(p: &Laurent, var: usize) -> Laurent {
    let c = content_in(p, var);
    primitive_q(&exact_div(p, &c).expect("content divides"))
}

/// Greatest common divisor of two polynomials with nonnegative exponents,
/// normalized to leading coefficient one. gcd(0, 0) = 0.
pub fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Laurent::one();
    }
    let (ma, a) = a.split_monomial();
    let (mb, b) = b.split_monomial();
    let mono = ma.meet(&mb);
    let g = gcd_no_monomial(&a, &b);
    g.mul_mono(&mono).monic()
}

fn gcd_no_monomial(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_constant() || b.is_constant() {
        return Laurent::one();
    }
    if a == b {
        return a.monic();
    }
    let (ua, ub) = (var_mask(a), var_mask(b));
    let shared = ua & ub;
    if shared == 0 {
        return Laurent::one();
    }
    let x = shared.trailing_zeros() as usize;
    if coprime_in_var_mod_p(a, b, x) {
        if ua == 1 << x || ub == 1 << x {
            return Laurent::one();
        }
        return poly_gcd(&content_in(a, x), &content_in(b, x));
    }
    if ua & !ub != 0 {
        return gcd_with_coefficients(b, a, ua & !ub);
    }
    if ub & !ua != 0 {
        return gcd_with_coefficients(a, b, ub & !ua);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = poly_gcd(&ca, &cb);
    let mut pa = primitive_q(&exact_div(a, &ca).unwrap());
    let mut pb = primitive_q(&exact_div(b, &cb).unwrap());
    if coprime_in_var_mod_p(&pa, &pb, x) {
        return c.monic();
    }
    if pa.max_exponent(x) < pb.max_exponent(x) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        let r = pseudo_rem(&pa, &pb, x);
        if r.is_zero() {
            break pb;
        }
        if !r.uses_var(x) {
            break Laurent::one();
        }
        pa = pb;
        pb = primitive_part_in(&r, x);
    };
    c.mul(&g).monic()
}

fn var_mask(p: &Laurent) -> u16 {
    (0..NVARS).filter(|&v| p.uses_var(v)).fold(0, |m, v| m | (1 << v))
}

/// gcd of `g` and the coefficients of `p` viewed as a polynomial in the
/// variables of `mask`.
fn gcd_with_coefficients(g: &Laurent, p: &Laurent, mask: u16) -> Laurent {
    let mut groups: std::collections::BTreeMap<Mono, Vec<(Mono, Q)>> = Default::default();
    for (m, q) in p.terms() {
        let mut key = Mono::ONE;
        let mut rest = *m;
        for v in 0..NVARS {
            if mask & (1 << v) != 0 {
                key.0[v] = m.0[v];
                rest.0[v] = 0;
            }
        }
        groups.entry(key).or_default().push((rest, q.clone()));
    }
    let mut g = g.clone();
    for (_, terms) in groups {
        g = poly_gcd(&g, &Laurent::from_terms(terms));
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Exact sufficient test for `gcd(a, b)` having degree zero in `x`: the
/// images at a point of `F_p` in the other variables, with nonvanishing
/// leading coefficients, are coprime. A common factor of positive degree
/// would survive the specialization with its degree intact.
fn coprime_in_var_mod_p(a: &Laurent, b: &Laurent, x: usize) -> bool {
    use super::zip::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod, P};
    const POINT: [u64; NVARS] = [
        0x1d2c_3b4a_5968_7786,
        0x0a1b_2c3d_4e5f_6071,
        0x1234_5678_9abc_def1,
        0x0fed_cba9_8765_4321,
        0x1357_9bdf_0246_8ace,
        0x0246_8ace_1357_9bdf,
        0x1111_2222_3333_4444,
        0x0555_6666_7777_8888,
    ];
    let image = |p: &Laurent| -> Option<Vec<u64>> {
        let deg = p.max_exponent(x)? as usize;
        let mut c = vec![0u64; deg + 1];
        for (m, q) in p.terms() {
            let mut t = q.mod_p(P)?;
            for (v, pt) in POINT.iter().enumerate() {
                if v != x && m.0[v] != 0 {
                    t = mul_mod(t, pow_mod(pt % P, m.0[v] as u64));
                }
            }
            let k = m.0[x] as usize;
            c[k] = add_mod(c[k], t);
        }
        if c[deg] == 0 {
            return None;
        }
        Some(c)
    };
    let (Some(mut f), Some(mut g)) = (image(a), image(b)) else {
        return false;
    };
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    // Euclid over F_p
    loop {
        while g.last() == Some(&0) {
            g.pop();
        }
        if g.is_empty() {
            return f.len() == 1;
        }
        if g.len() == 1 {
            return true;
        }
        let lg = inv_mod(*g.last().unwrap());
        while f.len() >= g.len() {
            let lf = *f.last().unwrap();
            if lf != 0 {
                let k = mul_mod(lf, lg);
                let shift = f.len() - g.len();
                for (i, &gi) in g.iter().enumerate() {
                    f[shift + i] = sub_mod(f[shift + i], mul_mod(k, gi));
                }
            }
            f.pop();
        }
        std::mem::swap(&mut f, &mut g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Laurent {
        Laurent::var(0)
    }
    fn a() -> Laurent {
        Laurent::var(2)
    }
    fn c(n: i64) -> Laurent {
        Laurent::constant(Q::from_int(n))
    }

    #[test]
    fn add_cancels() {
        let p = v().add(&c(3));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn mul_and_exact_div() {
        let p = v().add(&c(1));
        let q = v().sub(&a());
        let pq = p.mul(&q);
        assert_eq!(exact_div(&pq, &p).unwrap(), q);
        assert_eq!(exact_div(&pq, &q).unwrap(), p);
        assert!(exact_div(&pq, &v().add(&c(2))).is_none());
    }

    #[test]
    fn gcd_common_factor() {
        let f = v().add(&a()); // v + a
        let g1 = f.mul(&v().sub(&c(1)));
        let g2 = f.mul(&a().add(&c(2))).mul(&v());
        assert_eq!(poly_gcd(&g1, &g2), f.monic());
    }

    #[test]
    fn gcd_coprime() {
        let p = v().mul(&v()).sub(&c(1));
        let q = a().add(&c(1));
        assert!(poly_gcd(&p, &q).is_one());
    }

    #[test]
    fn gcd_multivariate_square() {
        // (v^2 - 1)(1 + a)^2 and (v - 1)(1 + a)
        let x = v().mul(&v()).sub(&c(1)).mul(&a().add(&c(1)).pow(2));
        let y = v().sub(&c(1)).mul(&a().add(&c(1)));
        let g = poly_gcd(&x, &y);
        assert_eq!(g, y.monic());
    }
}
