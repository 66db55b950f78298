//! Markov-move invariance and the skein relation, on random braid words.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::invariant::global_exact;
use super::{BraidWord, Evaluator, Letter};
use crate::coeffring::{Coeff, ZipPoint, ZipScalar};
use crate::coxeter::CoxeterType;
use crate::error::{Error, Result};
use crate::markov::{zip_bound_log2_for_degree, MIN_ZIP_POINTS};
use crate::report::{Check, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkCheckMode {
    Exact,
    /// Each identity is tested at `points` random points.
    Zip { points: usize },
}

impl LinkCheckMode {
    fn label(&self) -> &'static str {
        match self {
            LinkCheckMode::Exact => "exact",
            LinkCheckMode::Zip { .. } => "zip",
        }
    }
}

/// Values of one quantity at every evaluation point.
#[derive(Clone, PartialEq)]
struct Values<R>(Vec<R>);

impl<R: fmt::Display> fmt::Display for Values<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Total degree bound for an invariant identity between words on at most
/// `n` strands of length at most `len`.
fn link_degree(n: usize, len: usize) -> f64 {
    2.0 * (8 * n * n + 8 + 2 * len + 2 * n) as f64
}

/// A random word of length `0..=max_len` on `strands` strands.
pub fn random_word<G: Rng + ?Sized>(rng: &mut G, ty: CoxeterType, strands: usize, max_len: usize) -> BraidWord {
    let lo = if ty == CoxeterType::A { 1 } else { 0 };
    let len = if strands > lo { rng.random_range(0..=max_len) } else { 0 };
    let letters = (0..len)
        .map(|_| Letter::new(rng.random_range(lo..strands) as u8, rng.random_bool(0.5)))
        .collect();
    BraidWord::new(ty, strands, letters).expect("letters in range")
}

fn zip_evaluators(seed: u64, points: usize) -> Result<Vec<Evaluator<ZipScalar>>> {
    if points < MIN_ZIP_POINTS {
        return Err(Error::Domain(format!("randomized mode needs at least {MIN_ZIP_POINTS} points")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c69_6e6b);
    Ok((0..points).map(|_| Evaluator::at_point(&ZipPoint::random(&mut rng, true))).collect())
}

fn closed_values<R: Coeff>(evals: &[&Evaluator<R>], b: &BraidWord) -> Result<Values<R>> {
    evals.iter().map(|e| Ok(e.evaluate(b)?.closed)).collect::<Result<_>>().map(Values)
}

/// One randomly generated move: the original and the moved word.
struct MovePair {
    kind: usize,
    before: BraidWord,
    after: BraidWord,
}

const MOVE_NAMES: [&str; 3] = ["conjugation", "stabilization+", "stabilization-"];

fn random_moves(ty: CoxeterType, trials: usize, max_strands: usize, max_len: usize, seed: u64) -> Vec<MovePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = if ty == CoxeterType::A { 2 } else { 1 };
    (0..trials)
        .map(|i| {
            let kind = i % 3;
            let n = rng.random_range(lo.min(max_strands)..=max_strands);
            if kind == 0 {
                let k = rng.random_range(1..=2.min(max_len / 2).max(1));
                let b = random_word(&mut rng, ty, n, max_len.saturating_sub(2 * k));
                let mut w = random_word(&mut rng, ty, n, k);
                while w.is_empty() && n > 1 {
                    w = random_word(&mut rng, ty, n, k);
                }
                let after = b.conjugate(&w).expect("same group");
                MovePair { kind, before: b, after }
            } else {
                let b = random_word(&mut rng, ty, n, max_len.saturating_sub(1));
                let after = b.stabilize(kind == 2);
                MovePair { kind, before: b, after }
            }
        })
        .collect()
}

fn move_checks<R: Coeff>(
    evals: &[&Evaluator<R>],
    moves: &[MovePair],
    family: &str,
    ty: CoxeterType,
    max_strands: usize,
    mode: &str,
    bound: Option<f64>,
) -> Result<VerificationReport> {
    let results: Vec<(usize, String, Values<R>, Values<R>)> = moves
        .par_iter()
        .map(|m| {
            let lhs = closed_values(evals, &m.before)?;
            let rhs = closed_values(evals, &m.after)?;
            Ok((m.kind, format!("{} | {}", m.before, m.after), lhs, rhs))
        })
        .collect::<Result<_>>()?;
    let mut checks: Vec<Check> = MOVE_NAMES
        .iter()
        .map(|name| {
            let c = Check::new(name, family, ty, max_strands, mode);
            match bound {
                Some(b) => c.with_bound(b),
                None => c,
            }
        })
        .collect();
    for (kind, input, lhs, rhs) in results {
        checks[kind].case(|| input, &lhs, &rhs);
    }
    Ok(VerificationReport { records: checks.into_iter().map(Check::finish).collect() })
}

fn run_moves(
    ty: CoxeterType,
    family: &str,
    trials: usize,
    max_strands: usize,
    max_len: usize,
    mode: LinkCheckMode,
    seed: u64,
) -> Result<VerificationReport> {
    let moves = random_moves(ty, trials, max_strands, max_len, seed);
    match mode {
        LinkCheckMode::Exact => {
            move_checks(&[global_exact()], &moves, family, ty, max_strands, mode.label(), None)
        }
        LinkCheckMode::Zip { points } => {
            let evals = zip_evaluators(seed, points)?;
            let refs: Vec<&Evaluator<ZipScalar>> = evals.iter().collect();
            let bound = zip_bound_log2_for_degree(link_degree(max_strands + 1, max_len), points);
            move_checks(&refs, &moves, family, ty, max_strands, mode.label(), Some(bound))
        }
    }
}

/// Conjugation and positive and negative stabilization leave the type A
/// invariant unchanged, on `trials` random words with at most `max_strands`
/// strands and `max_len` letters.
pub fn markov_move_check(
    trials: usize,
    max_strands: usize,
    max_len: usize,
    mode: LinkCheckMode,
    seed: u64,
) -> Result<VerificationReport> {
    run_moves(CoxeterType::A, "homfly", trials, max_strands, max_len, mode, seed)
}

/// The same for type B words and the annular invariant; `sigma_0` is never
/// stabilized.
pub fn annular_move_check(
    trials: usize,
    max_strands: usize,
    max_len: usize,
    mode: LinkCheckMode,
    seed: u64,
) -> Result<VerificationReport> {
    run_moves(CoxeterType::B, "annular", trials, max_strands, max_len, mode, seed)
}

/// Both sides of the skein relation at a slot: `s^-1 I(L+) - s I(L-)` and
/// `alpha I(L0)`; for `sigma_0` in type B, `I(L+) - I(L-)` and
/// `alpha0 I(L0)`.
fn skein_sides<R: Coeff>(ev: &Evaluator<R>, b: &BraidWord, pos: usize, gen: u8) -> Result<(R, R)> {
    let plus = b.insert(pos, Letter::new(gen, false))?;
    let minus = b.insert(pos, Letter::new(gen, true))?;
    let (alpha, alpha0) = ev.alphas(b)?;
    let (ip, im, i0) = (ev.evaluate(&plus)?.closed, ev.evaluate(&minus)?.closed, ev.evaluate(b)?.closed);
    if b.ty() == CoxeterType::B && gen == 0 {
        return Ok((ip.sub(&im), alpha0.mul(&i0)));
    }
    let s = ev.s();
    let s_inv = s.inv().ok_or(Error::DivisionByZero)?;
    Ok((s_inv.mul(&ip).sub(&s.mul(&im)), alpha.mul(&i0)))
}

/// `s^-1 I(L+) - s I(L-) = alpha I(L0)` where `L+`, `L-` insert
/// `sigma_gen^{+-1}` before position `pos` of `b` and `L0 = b`.
pub fn skein_check(b: &BraidWord, pos: usize, gen: u8, mode: LinkCheckMode, seed: u64) -> Result<bool> {
    match mode {
        LinkCheckMode::Exact => {
            let (l, r) = skein_sides(global_exact(), b, pos, gen)?;
            Ok(l == r)
        }
        LinkCheckMode::Zip { points } => {
            for ev in zip_evaluators(seed, points)? {
                let (l, r) = skein_sides(&ev, b, pos, gen)?;
                if l != r {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn skein_cases<R: Coeff>(
    evals: &[&Evaluator<R>],
    cases: &[(BraidWord, usize, u8)],
    check: &mut Check,
) -> Result<()> {
    let results: Vec<(String, Values<R>, Values<R>)> = cases
        .par_iter()
        .map(|(b, pos, gen)| {
            let mut l = Vec::with_capacity(evals.len());
            let mut r = Vec::with_capacity(evals.len());
            for ev in evals {
                let (x, y) = skein_sides(ev, b, *pos, *gen)?;
                l.push(x);
                r.push(y);
            }
            Ok((format!("{b} | slot {pos}, generator {gen}"), Values(l), Values(r)))
        })
        .collect::<Result<_>>()?;
    for (input, l, r) in results {
        check.case(|| input, &l, &r);
    }
    Ok(())
}

/// The skein relation on `trials` random type A words and slots.
pub fn skein_batch(
    trials: usize,
    max_strands: usize,
    max_len: usize,
    mode: LinkCheckMode,
    seed: u64,
) -> Result<VerificationReport> {
    if max_strands < 2 {
        return Err(Error::OutOfRange("the skein relation needs 2 strands".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(BraidWord, usize, u8)> = (0..trials)
        .map(|_| {
            let n = rng.random_range(2..=max_strands);
            let b = random_word(&mut rng, CoxeterType::A, n, max_len.saturating_sub(1));
            let pos = rng.random_range(0..=b.len());
            (b, pos, rng.random_range(1..n) as u8)
        })
        .collect();
    let mut check = Check::new("skein", "homfly", CoxeterType::A, max_strands, mode.label());
    match mode {
        LinkCheckMode::Exact => skein_cases(&[global_exact()], &cases, &mut check)?,
        LinkCheckMode::Zip { points } => {
            let evals = zip_evaluators(seed, points)?;
            let refs: Vec<&Evaluator<ZipScalar>> = evals.iter().collect();
            skein_cases(&refs, &cases, &mut check)?;
            check = check.with_bound(zip_bound_log2_for_degree(link_degree(max_strands, max_len), points));
        }
    }
    let mut report = VerificationReport::new();
    report.push(check.finish());
    Ok(report)
}
