//! Markov axioms and the special properties of `T_n` and `U_n`.

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{row_with_right_factor, TraceFunctional};
use crate::coeffring::{Coeff, Scalar, Var, ZipPoint, ZipScalar};
use crate::coxeter::{format_word, CoxeterContext, CoxeterType, Group};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement, ParamMode, Params};
use crate::jmtower::{
    beta, build_in, delta, symbolic_algebra, t_element, u_element, CentralElementSpec, Family,
    ParamChoice,
};
use crate::report::{Check, CheckRecord, VerificationReport};

/// Number of independent random points below which a randomized check is
/// refused.
pub const MIN_ZIP_POINTS: usize = 3;

/// Basis pairs per rank for the direct `tr(xy) = tr(yx)` check.
const TRACE_PAIRS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    /// `points` random parameter points, `samples` random basis elements of
    /// the smaller algebra at each point.
    Zip { seed: u64, points: usize, samples: usize },
}

impl CheckMode {
    fn label(&self) -> &'static str {
        match self {
            CheckMode::Exact => "exact",
            CheckMode::Zip { .. } => "zip",
        }
    }
}

/// Upper bound on the total degree, after clearing the denominators of the
/// `v, v0, a, y, yb` monomials, of a trace identity at rank `n`.
fn degree_bound(rank: usize) -> f64 {
    // `P` and its bar image are tied by inversion, which doubles the degree.
    2.0 * (8 * rank * rank + 8) as f64
}

/// `log2` of the probability that `points` independent points all miss a
/// false identity of total degree at most `degree`.
pub fn zip_bound_log2_for_degree(degree: f64, points: usize) -> f64 {
    let p = crate::coeffring::zip::P as f64;
    points as f64 * (degree.log2() - p.log2())
}

/// The same for a trace identity at rank `n`.
pub fn zip_bound_log2(rank: usize, points: usize) -> f64 {
    zip_bound_log2_for_degree(degree_bound(rank), points)
}

fn basis_name(g: &Group, w: u32) -> String {
    let word = g.word(w);
    if word.is_empty() {
        "t_e".into()
    } else {
        format!("t[{}]", format_word(word, g.ctx().ty))
    }
}

/// Smallest rank `n` at which `X_{n-1} -> X_n` is checked.
fn min_step_rank(ty: CoxeterType) -> usize {
    match ty {
        CoxeterType::A | CoxeterType::B => 2,
        CoxeterType::D => 3,
    }
}

struct RankChecks {
    m1: Check,
    m1_pairs: Check,
    step: Option<StepChecks>,
}

struct StepChecks {
    u1: Check,
    m2: Check,
    u1_scaled: Check,
    m2_scaled: Check,
}

impl RankChecks {
    fn new(family: Family, ty: CoxeterType, rank: usize, mode: &str, step: bool) -> Self {
        let f = family.to_string();
        let c = |ax: &str| Check::new(ax, &f, ty, rank, mode);
        RankChecks {
            m1: c("M1"),
            m1_pairs: c("M1-pairs"),
            step: step.then(|| StepChecks {
                u1: c("U1"),
                m2: c("M2"),
                u1_scaled: c("U1-rescaled"),
                m2_scaled: c("M2-rescaled"),
            }),
        }
    }

    fn finish(self, bound: Option<f64>) -> Vec<CheckRecord> {
        let mut out = vec![self.m1, self.m1_pairs];
        if let Some(s) = self.step {
            out.extend([s.u1, s.m2, s.u1_scaled, s.m2_scaled]);
        }
        out.into_iter()
            .map(|c| match bound {
                Some(b) => c.with_bound(b).finish(),
                None => c.finish(),
            })
            .collect()
    }
}

/// Values of `tr_{z_n}` at `i(w)` and `i(w) t_{n-1}`, and of `tr_{z_{n-1}}`
/// at `w`, for the basis elements `ws` of the smaller algebra.
struct StepRows<R> {
    idx: Vec<(u32, u32, u32)>,
    up: Vec<R>,
    low: Vec<R>,
}

fn step_rows<R: Coeff>(
    upper: &HeckeElement<R>,
    lower: &HeckeElement<R>,
    ws: &[u32],
) -> Result<StepRows<R>> {
    let ug = upper.algebra().group();
    let lg = lower.algebra().group();
    let top = upper.algebra().rank() as u8 - 1;
    let slot = ug.gen_slot(top)?;
    let idx = ws
        .iter()
        .map(|&w| {
            let e = lg.embed_index(w, ug)?;
            Ok((w, e, ug.rmul(e, slot)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut targets: Vec<u32> = idx.iter().flat_map(|&(_, e, es)| [e, es]).collect();
    targets.sort_unstable();
    targets.dedup();
    Ok(StepRows { idx, up: upper.pairing_row(Some(&targets)), low: lower.pairing_row(Some(ws)) })
}

/// (U1) and (M2) for `phi_n = c_n tr_{z_n}` against
/// `phi_{n-1} = c_{n-1} tr_{z_{n-1}}` with constants `rho` and `mu`.
#[allow(clippy::too_many_arguments)]
fn check_step<R: Coeff>(
    rows: &StepRows<R>,
    lg: &Group,
    scale: (&R, &R),
    rho: &R,
    mu: &R,
    u1: &mut Check,
    m2: &mut Check,
    tag: &str,
) {
    let (cu, cl) = scale;
    for &(w, e, es) in &rows.idx {
        let rhs = cl.mul(&rows.low[w as usize]);
        let input = || format!("{tag}h = {}", basis_name(lg, w));
        u1.case(input, &cu.mul(&rows.up[e as usize]), &rho.mul(&rhs));
        m2.case(input, &cu.mul(&rows.up[es as usize]), &mu.mul(&rhs));
    }
}

fn trace_pairs<R: Coeff>(
    z: &HeckeElement<R>,
    rng: &mut ChaCha8Rng,
    check: &mut Check,
    tag: &str,
) -> Result<()> {
    let alg = z.algebra();
    let g = alg.group();
    for _ in 0..TRACE_PAIRS {
        let x = rng.random_range(0..alg.dim() as u32);
        let y = rng.random_range(0..alg.dim() as u32);
        let (hx, hy) = (HeckeElement::basis(alg, x), HeckeElement::basis(alg, y));
        let lhs = z.pairing_by_rows(&hx.mul(&hy)?)?;
        let rhs = z.pairing_by_rows(&hy.mul(&hx)?)?;
        check.case(|| format!("{tag}x = {}, y = {}", basis_name(g, x), basis_name(g, y)), &lhs, &rhs);
    }
    Ok(())
}

/// All checks at one rank in one algebra tower. `l1`, `l2` are the rescaling
/// constants.
#[allow(clippy::too_many_arguments)]
fn rank_checks<R: Coeff>(
    family: Family,
    upper: &Arc<HeckeAlgebra<R>>,
    lower: Option<&Arc<HeckeAlgebra<R>>>,
    samples: Option<usize>,
    l1: &R,
    l2: &R,
    rng: &mut ChaCha8Rng,
    checks: &mut RankChecks,
    tag: &str,
) -> Result<()> {
    let z = build_in(family, upper)?;
    checks.m1.holds(|| format!("{tag}z = {family}"), z.is_central());
    trace_pairs(&z, rng, &mut checks.m1_pairs, tag)?;
    let (Some(lower), Some(step)) = (lower, checks.step.as_mut()) else { return Ok(()) };
    let zl = build_in(family, lower)?;
    let ws: Vec<u32> = match samples {
        None => (0..lower.dim() as u32).collect(),
        Some(k) => (0..k).map(|_| rng.random_range(0..lower.dim() as u32)).collect(),
    };
    let rho = R::one().add(&upper.params().a);
    let mu = upper.alpha();
    let rows = step_rows(&z, &zl, &ws)?;
    let lg = lower.group();
    let one = R::one();
    check_step(&rows, lg, (&one, &one), &rho, &mu, &mut step.u1, &mut step.m2, tag);
    // lambda1 lambda2^n phi_n with constants lambda2 rho, lambda2 mu
    let n = upper.rank() as i32;
    let cu = l1.mul(&l2.pow_i(n).expect("nonnegative power"));
    let cl = l1.mul(&l2.pow_i(n - 1).expect("nonnegative power"));
    let (rho2, mu2) = (l2.mul(&rho), l2.mul(&mu));
    check_step(&rows, lg, (&cu, &cl), &rho2, &mu2, &mut step.u1_scaled, &mut step.m2_scaled, tag);
    Ok(())
}

fn markov_family_check(family: Family, ty: CoxeterType, params: ParamChoice) -> Result<()> {
    match family {
        Family::Zeta | Family::Beta | Family::Delta => {}
        f => return Err(Error::Domain(format!("{f} does not represent a Markov trace family"))),
    }
    CentralElementSpec::new(family, ty, min_step_rank(ty), params).map(|_| ())
}

fn zip_params(p: &ZipPoint, params: ParamChoice) -> (ParamMode, Params<ZipScalar>) {
    let base = Params::at_point(p);
    match params {
        ParamChoice::Equal => (ParamMode::Equal, base),
        ParamChoice::Unequal => (ParamMode::Unequal, base),
        ParamChoice::V0One => (ParamMode::Unequal, base.with_v0(ZipScalar::one())),
    }
}

/// (M1), (U1), (M2) and the rescaling property for the traces of `family`
/// at every rank in `ranks`. At rank `n` the step `X_{n-1} -> X_n` is
/// checked; (M2) uses the generator `t_{n-1}`, the one outside the image of
/// the embedding.
pub fn verify_markov(
    family: Family,
    ty: CoxeterType,
    ranks: RangeInclusive<usize>,
    params: ParamChoice,
    mode: &CheckMode,
) -> Result<VerificationReport> {
    markov_family_check(family, ty, params)?;
    let label = mode.label();
    let mut report = VerificationReport::new();
    for n in ranks {
        let step = n >= min_step_rank(ty);
        let mut checks = RankChecks::new(family, ty, n, label, step);
        match *mode {
            CheckMode::Exact => {
                let upper = symbolic_algebra(ty, n, params)?;
                let lower = if step { Some(symbolic_algebra(ty, n - 1, params)?) } else { None };
                let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
                let (l1, l2) = (Scalar::var(Var::L1), Scalar::var(Var::L2));
                rank_checks(family, &upper, lower.as_ref(), None, &l1, &l2, &mut rng, &mut checks, "")?;
                report.extend(VerificationReport { records: checks.finish(None) });
            }
            CheckMode::Zip { seed, points, samples } => {
                if points < MIN_ZIP_POINTS {
                    return Err(Error::Domain(format!(
                        "randomized mode needs at least {MIN_ZIP_POINTS} points"
                    )));
                }
                let ctx = CoxeterContext::new(ty, n)?;
                let per_point: Vec<RankChecks> = (0..points)
                    .into_par_iter()
                    .map(|i| -> Result<RankChecks> {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ i as u64);
                        let p = ZipPoint::random(&mut rng, false);
                        let (pm, prm) = zip_params(&p, params);
                        let upper = HeckeAlgebra::new(ctx, pm, prm.clone())?;
                        let lower = if step {
                            Some(HeckeAlgebra::new(ctx.with_rank(n - 1)?, pm, prm)?)
                        } else {
                            None
                        };
                        let (l1, l2) = (ZipScalar::var(Var::L1, &p), ZipScalar::var(Var::L2, &p));
                        let mut c = RankChecks::new(family, ty, n, label, step);
                        let tag = format!("seed {seed}, point {i}: ");
                        rank_checks(family, &upper, lower.as_ref(), Some(samples), &l1, &l2, &mut rng, &mut c, &tag)?;
                        Ok(c)
                    })
                    .collect::<Result<_>>()?;
                for c in per_point {
                    merge(&mut checks.m1, c.m1);
                    merge(&mut checks.m1_pairs, c.m1_pairs);
                    if let (Some(s), Some(t)) = (checks.step.as_mut(), c.step) {
                        merge(&mut s.u1, t.u1);
                        merge(&mut s.m2, t.m2);
                        merge(&mut s.u1_scaled, t.u1_scaled);
                        merge(&mut s.m2_scaled, t.m2_scaled);
                    }
                }
                report.extend(VerificationReport {
                    records: checks.finish(Some(zip_bound_log2(n, points))),
                });
            }
        }
    }
    Ok(report)
}

fn merge(into: &mut Check, from: Check) {
    into.absorb(from.finish());
}

fn b_algebra(rank: usize) -> Result<Arc<HeckeAlgebra<Scalar>>> {
    symbolic_algebra(CoxeterType::B, rank, ParamChoice::Unequal)
}

fn d_algebra(rank: usize) -> Result<Arc<HeckeAlgebra<Scalar>>> {
    symbolic_algebra(CoxeterType::D, rank, ParamChoice::Equal)
}

/// `tr_{beta_n}(T_1 ... T_n)` in the unequal algebra of `B_n`.
pub fn product_value_b(n: usize) -> Result<Scalar> {
    let alg = b_algebra(n)?;
    let mut prod = HeckeElement::one(&alg);
    for k in 1..=n {
        prod = prod.mul(&t_element(&b_algebra(k)?)?.embed(&alg)?)?;
    }
    beta(&alg)?.pairing_by_rows(&prod)
}

/// `tr_{delta_n}(U_1 ... U_n)` in `H(D_n)`.
pub fn product_value_d(n: usize) -> Result<Scalar> {
    let alg = d_algebra(n)?;
    let mut prod = HeckeElement::one(&alg);
    for k in 2..=n {
        prod = prod.mul(&u_element(&d_algebra(k)?)?.embed(&alg)?)?;
    }
    delta(&alg)?.pairing_by_rows(&prod)
}

/// `tr_{beta_n}(i(h) T_n) = y tr_{beta_{n-1}}(h)` for every basis `h` of
/// `H(B_{n-1})`, and `tr_{beta_n}(T_1 ... T_n) = y^n`.
pub fn verify_t_property(ranks: RangeInclusive<usize>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let y = Scalar::y();
    for n in ranks {
        if n == 0 {
            return Err(Error::OutOfRange("T_n needs n >= 1".into()));
        }
        let upper = b_algebra(n)?;
        let lower = b_algebra(n - 1)?;
        let (ug, lg) = (upper.group(), lower.group());
        let zu = beta(&upper)?;
        let zl = beta(&lower)?;
        let tn = t_element(&upper)?;
        let ws: Vec<u32> = (0..lower.dim() as u32).collect();
        let emb = ws.iter().map(|&w| lg.embed_index(w, ug)).collect::<Result<Vec<_>>>()?;
        let row = row_with_right_factor(&zu, &tn, &emb)?;
        let low = zl.pairing_row(None);
        let mut c = Check::new("T-property", "beta", CoxeterType::B, n, "exact");
        for (&w, &e) in ws.iter().zip(&emb) {
            c.case(|| format!("h = {}", basis_name(lg, w)), &row[e as usize], &y.mul(&low[w as usize]));
        }
        report.push(c.finish());

        // the same values as tau(i(bar z) h T_n), on a few basis elements
        let zi = zu.bar().anti_i();
        let mut d = Check::new("T-property-direct", "beta", CoxeterType::B, n, "exact");
        for (&w, &e) in ws.iter().zip(&emb).take(4) {
            let h = HeckeElement::basis(&upper, e).mul(&tn)?;
            d.case(|| format!("h = {}", basis_name(lg, w)), &zi.mul(&h)?.tau(), &row[e as usize]);
        }
        report.push(d.finish());

        let mut p = Check::new("T-product", "beta", CoxeterType::B, n, "exact");
        p.case(|| format!("T_1 ... T_{n}"), &product_value_b(n)?, &y.pow_i(n as i32).expect("nonnegative power"));
        report.push(p.finish());
    }
    Ok(report)
}

/// `tr_{delta_2m}(i^2(h) U_{2m-1} U_{2m}) = y^2 tr_{delta_{2m-2}}(h)` for every
/// basis `h` of `H(D_{2m-2})`, and `tr_{delta_2m}(U_1 ... U_2m) = y^2m`.
pub fn verify_u_property(m: usize) -> Result<VerificationReport> {
    if m == 0 {
        return Err(Error::OutOfRange("U-property needs m >= 1".into()));
    }
    let n = 2 * m;
    let y2 = Scalar::y().pow_i(2).expect("nonnegative power");
    let upper = d_algebra(n)?;
    let ug = upper.group();
    let zu = delta(&upper)?;
    let x = u_element(&d_algebra(n - 1)?)?.embed(&upper)?.mul(&u_element(&upper)?)?;
    // D_0 and D_1 are trivial, with tr(1) = 1
    let (lower_dim, low, names, emb): (usize, Vec<Scalar>, Vec<String>, Vec<u32>) = if n - 2 < 2 {
        (1, vec![Scalar::one()], vec!["t_e".into()], vec![0])
    } else {
        let lower = d_algebra(n - 2)?;
        let lg = lower.group();
        let ws: Vec<u32> = (0..lower.dim() as u32).collect();
        let emb = ws.iter().map(|&w| lg.embed_index(w, ug)).collect::<Result<Vec<_>>>()?;
        let names = ws.iter().map(|&w| basis_name(lg, w)).collect();
        (lower.dim(), delta(&lower)?.pairing_row(None), names, emb)
    };
    let row = row_with_right_factor(&zu, &x, &emb)?;
    let mut report = VerificationReport::new();
    let mut c = Check::new("U-property", "delta", CoxeterType::D, n, "exact");
    for i in 0..lower_dim {
        c.case(|| format!("h = {}", names[i]), &row[emb[i] as usize], &y2.mul(&low[i]));
    }
    report.push(c.finish());
    let mut p = Check::new("U-product", "delta", CoxeterType::D, n, "exact");
    p.case(|| format!("U_1 ... U_{n}"), &product_value_d(n)?, &Scalar::y().pow_i(n as i32).expect("nonnegative power"));
    report.push(p.finish());
    Ok(report)
}

/// `tr_{delta_n}(h) = <beta_n(y) at v0 = 1, embed(h)>` for every basis `h` of
/// `H(D_n)`.
pub fn restriction_check(n: usize) -> Result<VerificationReport> {
    let d = d_algebra(n)?;
    let b = symbolic_algebra(CoxeterType::B, n, ParamChoice::V0One)?;
    let td = TraceFunctional::new(delta(&d)?, "delta")?;
    let tb = TraceFunctional::new(beta(&b)?, "beta")?;
    let mut c = Check::new("restriction", "delta", CoxeterType::D, n, "exact");
    let g = d.group();
    for w in 0..d.dim() as u32 {
        let h = HeckeElement::basis(&d, w);
        let lhs = td.values()[w as usize].clone();
        let rhs = tb.eval_linear(&h.embed_d_to_b(&b)?)?;
        c.case(|| format!("h = {}", basis_name(g, w)), &lhs, &rhs);
    }
    let mut report = VerificationReport::new();
    report.push(c.finish());
    Ok(report)
}

#[cfg(test)]
mod negative {
    use super::*;
    use crate::report::Status;

    #[test]
    fn wrong_constants_are_caught() {
        let upper = symbolic_algebra(CoxeterType::B, 2, ParamChoice::Equal).unwrap();
        let lower = symbolic_algebra(CoxeterType::B, 1, ParamChoice::Equal).unwrap();
        let z = build_in(Family::Zeta, &upper).unwrap();
        let zl = build_in(Family::Zeta, &lower).unwrap();
        let rows = step_rows(&z, &zl, &[0, 1]).unwrap();
        let one = Scalar::one();
        let (mut u1, mut m2) = (Check::new("U1", "zeta", "B", 2, "exact"), Check::new("M2", "zeta", "B", 2, "exact"));
        let rho = one.add(&Scalar::a());
        check_step(&rows, lower.group(), (&one, &one), &rho, &rho, &mut u1, &mut m2, "");
        assert_eq!(u1.finish().status, Status::Pass);
        let m2 = m2.finish();
        assert_eq!(m2.status, Status::Fail);
        assert_eq!(m2.witness.unwrap().input, "h = t_e");
    }

    #[test]
    fn e1_is_not_a_markov_trace() {
        let upper = symbolic_algebra(CoxeterType::B, 2, ParamChoice::Equal).unwrap();
        let lower = symbolic_algebra(CoxeterType::B, 1, ParamChoice::Equal).unwrap();
        let mut checks = RankChecks::new(Family::ElemSymJM(1), CoxeterType::B, 2, "exact", true);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let l = Scalar::var(Var::L1);
        rank_checks(Family::ElemSymJM(1), &upper, Some(&lower), None, &l, &l, &mut rng, &mut checks, "")
            .unwrap();
        let recs = checks.finish(None);
        assert_eq!(recs[0].status, Status::Pass);
        assert!(recs.iter().any(|r| r.status == Status::Fail));
    }

    #[test]
    fn bound_is_below_threshold() {
        assert!(zip_bound_log2(5, MIN_ZIP_POINTS) < -30.0);
        assert!(zip_bound_log2(5, 1) < 0.0);
    }
}
