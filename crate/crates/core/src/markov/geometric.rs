//! Geometric traces: `tr_{zeta_n}` in type B and `tr_{delta_n}` at
//! `y = s alpha` in type D, both polynomials in `a`, and their
//! a-coefficients as pairings with symmetric functions of JM elements.

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffring::{Assignment, Coeff, ExtScalar, Scalar, Symbolic, Var};
use crate::coxeter::CoxeterType;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement, ParamMode, Params};
use crate::jmtower::{central_element, delta, u_element, CentralElementSpec, Family, ParamChoice};
use crate::report::{Check, VerificationReport};

type Elem = HeckeElement<Scalar>;

fn spec(family: Family, ty: CoxeterType, n: usize, params: ParamChoice) -> Result<CentralElementSpec> {
    CentralElementSpec::new(family, ty, n, params)
}

fn element(family: Family, ty: CoxeterType, n: usize, params: ParamChoice) -> Result<Elem> {
    central_element(&spec(family, ty, n, params)?)
}

/// Coefficients of `a^0 .. a^n`, or an error when `x` is not a polynomial of
/// degree at most `n` in `a`.
fn a_poly(x: &Scalar, n: usize) -> Result<Vec<Scalar>> {
    let mut c = x
        .a_coefficients()
        .ok_or_else(|| Error::Domain(format!("not a polynomial in a: {x}")))?;
    if c.len() > n + 1 {
        return Err(Error::Domain(format!("degree in a exceeds {n}: {x}")));
    }
    c.resize(n + 1, Scalar::zero());
    Ok(c)
}

fn check_algebra(h: &Elem, ty: CoxeterType, n: usize) -> Result<()> {
    let alg = spec(Family::Zeta, ty, n, ParamChoice::Equal)?.algebra()?;
    alg.check_same(h.algebra())
}

/// `tr^B_n(h) = tr_{zeta_n}(h)` for `h` in the equal-parameter `H(B_n)`.
pub fn geometric_trace_b(n: usize, h: &Elem) -> Result<Scalar> {
    check_algebra(h, CoxeterType::B, n)?;
    let x = element(Family::Zeta, CoxeterType::B, n, ParamChoice::Equal)?.pairing_by_rows(h)?;
    a_poly(&x, n)?;
    Ok(x)
}

/// `<e_k(J_1, ..., J_n), h>`.
pub fn geometric_coeff_b(n: usize, k: usize, h: &Elem) -> Result<Scalar> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} at rank {n}")));
    }
    check_algebra(h, CoxeterType::B, n)?;
    element(Family::ElemSymJM(k), CoxeterType::B, n, ParamChoice::Equal)?.pairing_by_rows(h)
}

/// `H(D_n)` over `ExtScalar` with `y = s alpha`, `yb = -alpha s^-1`,
/// `a = -s^2`.
pub fn geometric_d_algebra(n: usize) -> Result<Arc<HeckeAlgebra<ExtScalar>>> {
    let ctx = crate::coxeter::CoxeterContext::new(CoxeterType::D, n)?;
    let v = ExtScalar::var(Var::V);
    let s = ExtScalar::s();
    let alpha = v.sub(&v.inv().ok_or(Error::DivisionByZero)?);
    let s_inv = s.inv().ok_or(Error::DivisionByZero)?;
    let params = Params {
        v: v.clone(),
        v0: v,
        a: s.mul(&s).neg(),
        y: s.mul(&alpha),
        yb: alpha.mul(&s_inv).neg(),
    };
    HeckeAlgebra::new(ctx, ParamMode::Equal, params)
}

fn to_ext(alg: &Arc<HeckeAlgebra<ExtScalar>>, h: &Elem) -> Result<HeckeElement<ExtScalar>> {
    h.map_coeffs(alg, |c| Ok(c.to_ext()))
}

fn from_ext(x: &ExtScalar) -> Result<Scalar> {
    x.to_scalar().ok_or_else(|| Error::Domain(format!("odd power of s in {x}")))
}

/// `tr^D_n(h)`: `tr_{delta_n}` at `y = s alpha`, for `h` in `H(D_n)`.
pub fn geometric_trace_d(n: usize, h: &Elem) -> Result<Scalar> {
    check_algebra(h, CoxeterType::D, n)?;
    let alg = geometric_d_algebra(n)?;
    let x = from_ext(&delta(&alg)?.pairing_by_rows(&to_ext(&alg, h)?)?)?;
    a_poly(&x, n)?;
    Ok(x)
}

/// `(-1)^k <e'_k(j^D_1, ..., j^D_n; alpha), h>`.
pub fn geometric_coeff_d(n: usize, k: usize, h: &Elem) -> Result<Scalar> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} at rank {n}")));
    }
    check_algebra(h, CoxeterType::D, n)?;
    let x = element(Family::EPrimeJ(k), CoxeterType::D, n, ParamChoice::Equal)?.pairing_by_rows(h)?;
    Ok(if k % 2 == 1 { x.neg() } else { x })
}

/// `sum_k a^k geometric_coeff_d(n, k, h)`.
pub fn geometric_trace_d_via_eprime(n: usize, h: &Elem) -> Result<Scalar> {
    let a = Scalar::a();
    let mut acc = Scalar::zero();
    let mut ak = Scalar::one();
    for k in 0..=n {
        acc = acc.add(&ak.mul(&geometric_coeff_d(n, k, h)?));
        ak = ak.mul(&a);
    }
    Ok(acc)
}

/// `beta_n(y)` at `v0 = v`, `yb = -alpha` equals `zeta_n`.
pub fn collapse_check(n: usize) -> Result<bool> {
    let b = element(Family::Beta, CoxeterType::B, n, ParamChoice::Unequal)?;
    let z = element(Family::Zeta, CoxeterType::B, n, ParamChoice::Equal)?;
    let asg = Assignment::v0_to_v().set(Var::Yb, Scalar::alpha().neg());
    Ok(b.map_coeffs(z.algebra(), |c| c.specialize(&asg))? == z)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn basis_label(alg: &HeckeAlgebra<Scalar>, w: u32) -> String {
    let g = alg.group();
    format!("t[{}]", crate::coxeter::format_word(g.word(w), g.ctx().ty))
}

/// Polynomiality of `tr_{zeta_n}` in `a`, its a-coefficients against
/// `<e_k(J), h>` and, for `k = n`, against `<S^-1, h>`, the value at `h = 1`,
/// the collapse of `beta_n`, and the anchor `tr^B_1(t_0) = alpha`. With
/// `sample = Some((seed, m))` only `m` random basis elements are checked.
pub fn verify_geometric_b(
    ranks: RangeInclusive<usize>,
    sample: Option<(u64, usize)>,
) -> Result<VerificationReport> {
    let ty = CoxeterType::B;
    let mode = if sample.is_some() { "sampled" } else { "exact" };
    let mut report = VerificationReport::new();
    for n in ranks {
        let alg = spec(Family::Zeta, ty, n, ParamChoice::Equal)?.algebra()?;
        let targets: Vec<u32> = match sample {
            None => (0..alg.dim() as u32).collect(),
            Some((seed, m)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
                let mut t: Vec<u32> = (0..m).map(|_| rng.random_range(0..alg.dim() as u32)).collect();
                t.push(0);
                t.sort_unstable();
                t.dedup();
                t
            }
        };
        let zrow = element(Family::Zeta, ty, n, ParamChoice::Equal)?.pairing_row(Some(&targets));
        let erows = (0..=n)
            .map(|k| Ok(element(Family::ElemSymJM(k), ty, n, ParamChoice::Equal)?.pairing_row(Some(&targets))))
            .collect::<Result<Vec<_>>>()?;
        let srow = element(Family::FullTwistInverse, ty, n, ParamChoice::Equal)?.pairing_row(Some(&targets));

        let c = |ax: &str| Check::new(ax, "zeta", ty, n, mode);
        let (mut poly, mut coeff, mut top, mut unit) =
            (c("geometric-B-poly"), c("geometric-B-coeff"), c("geometric-B-top"), c("geometric-B-unit"));
        for &w in &targets {
            let x = &zrow[w as usize];
            let name = || basis_label(&alg, w);
            let cs = match a_poly(x, n) {
                Ok(cs) => {
                    poly.holds(name, true);
                    cs
                }
                Err(_) => {
                    poly.case(name, &x.to_string(), &format!("polynomial of degree <= {n} in a"));
                    continue;
                }
            };
            for (k, ck) in cs.iter().enumerate() {
                coeff.case(|| format!("{}, k = {k}", name()), ck, &erows[k][w as usize]);
            }
            top.case(name, &cs[n], &srow[w as usize]);
            if w == 0 {
                for (k, ck) in cs.iter().enumerate() {
                    unit.case(|| format!("h = 1, k = {k}"), ck, &Scalar::from_int(binomial(n, k)));
                }
            }
        }
        report.extend(VerificationReport {
            records: vec![poly.finish(), coeff.finish(), top.finish(), unit.finish()],
        });
        let mut col = Check::new("collapse", "beta", ty, n, "exact");
        col.holds(|| "v0 -> v, yb -> -alpha".into(), collapse_check(n)?);
        report.push(col.finish());
    }
    let alg1 = spec(Family::Zeta, ty, 1, ParamChoice::Equal)?.algebra()?;
    let mut anchor = Check::new("geometric-B-anchor", "zeta", ty, 1, "exact");
    anchor.case(
        || "t[0]".into(),
        &geometric_trace_b(1, &HeckeElement::generator(&alg1, 0)?)?,
        &Scalar::alpha(),
    );
    report.push(anchor.finish());
    Ok(report)
}

/// The two computations of `tr^D_n` agree on every basis element of
/// `H(D_n)`; `delta_n` has only even powers of `yb`; rank-2 anchors.
pub fn verify_geometric_d(ranks: RangeInclusive<usize>) -> Result<VerificationReport> {
    let ty = CoxeterType::D;
    let mut report = VerificationReport::new();
    for n in ranks {
        if n < 2 {
            return Err(Error::OutOfRange("geometric type D traces start at rank 2".into()));
        }
        let alg = spec(Family::Delta, ty, n, ParamChoice::Equal)?.algebra()?;
        let ext = geometric_d_algebra(n)?;
        let route1 = delta(&ext)?.pairing_row(None);
        let route2 = (0..=n)
            .map(|k| {
                let row = element(Family::EPrimeJ(k), ty, n, ParamChoice::Equal)?.pairing_row(None);
                Ok(if k % 2 == 1 { row.iter().map(|x| x.neg()).collect() } else { row })
            })
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        let c = |ax: &str| Check::new(ax, "delta", ty, n, "exact");
        let (mut poly, mut dual) = (c("geometric-D-poly"), c("geometric-D-dual"));
        for w in 0..alg.dim() as u32 {
            let name = || basis_label(&alg, w);
            let cs = match from_ext(&route1[w as usize]).and_then(|x| a_poly(&x, n)) {
                Ok(cs) => {
                    poly.holds(name, true);
                    cs
                }
                Err(e) => {
                    poly.case(name, &e.to_string(), &format!("polynomial of degree <= {n} in a"));
                    continue;
                }
            };
            for (k, ck) in cs.iter().enumerate() {
                dual.case(|| format!("{}, k = {k}", name()), ck, &route2[k][w as usize]);
            }
        }
        let mut even = c("delta-yb-even");
        let d = element(Family::Delta, ty, n, ParamChoice::Equal)?;
        for (w, x) in d.terms() {
            even.holds(|| basis_label(&alg, *w), x.yb_even());
        }
        report.extend(VerificationReport { records: vec![poly.finish(), dual.finish(), even.finish()] });
    }
    report.push(d_anchors()?);
    Ok(report)
}

fn d_anchors() -> Result<crate::report::CheckRecord> {
    let alg = spec(Family::Delta, CoxeterType::D, 2, ParamChoice::Equal)?.algebra()?;
    let alpha = Scalar::alpha();
    let a = Scalar::a();
    let rho = Scalar::one().add(&a);
    let mut c = Check::new("geometric-D-anchor", "delta", CoxeterType::D, 2, "exact");
    let cases: [(&str, Elem, Scalar); 4] = [
        ("t[1]", HeckeElement::generator(&alg, 1)?, alpha.mul(&rho)),
        ("t[1p]", HeckeElement::generator(&alg, 0)?, alpha.mul(&rho)),
        ("t[1 1p]", HeckeElement::word(&alg, &[1, 0])?, alpha.mul(&alpha)),
        ("U_1 U_2", u_element(&alg)?, alpha.mul(&alpha).mul(&a).neg()),
    ];
    for (name, h, want) in cases {
        c.case(|| name.into(), &geometric_trace_d(2, &h)?, &want);
    }
    Ok(c.finish())
}
