//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exact checks compare canonical forms, so their tolerance is zero.
//! Randomized checks must certify a failure probability below
//! `2^MAX_BOUND_LOG2`. Time limits are in seconds.

use std::collections::HashMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use jmtrace::coeffring::{Coeff, ExtScalar, Scalar, ZipPoint, ZipScalar};
use jmtrace::coxeter::{CoxeterContext, CoxeterType};
use jmtrace::hecke::{HeckeAlgebra, HeckeElement, ParamMode};
use jmtrace::jmtower::{full_twist, CentralElementSpec, Family, ParamChoice};
use jmtrace::markov::TraceFunctional;
use jmtrace::links::{homfly, BraidWord};
use jmtrace::report::{CheckRecord, Status, VerificationReport};
use jmtrace::suites::{run_suite, Suite, SuiteConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_BOUND_LOG2: f64 = -30.0;
const ORTHOGONALITY_SECS: f64 = 120.0;
const EPRIME_SECS: f64 = 60.0;
const BETA4_SECS: f64 = 10.0;
const FULL_SUITE_SECS: f64 = 600.0;
const MODE_AGREEMENT_MIN: usize = 50;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

fn cfg(ty: CoxeterType, rank: usize) -> SuiteConfig {
    SuiteConfig { ty: Some(ty), rank: Some(rank), ..SuiteConfig::default() }
}

fn run(suite: Suite, c: &SuiteConfig) -> VerificationReport {
    match run_suite(suite, c) {
        Ok(r) => r,
        Err(e) => {
            // an error is a failed record, not a crash of the whole run
            let mut r = VerificationReport::new();
            r.push(CheckRecord {
                axiom: format!("{suite} did not run"),
                family: String::new(),
                ty: c.ty.map(|t| t.to_string()).unwrap_or_default(),
                rank: c.rank.unwrap_or(0),
                mode: if c.zip { "zip" } else { "exact" }.into(),
                status: Status::Fail,
                witness: Some(jmtrace::report::Witness { input: e.to_string(), lhs: String::new(), rhs: String::new() }),
                cases: 0,
                bound_log2: None,
            });
            r
        }
    }
}

fn select<'a>(r: &'a VerificationReport, axioms: &[&str]) -> Vec<&'a CheckRecord> {
    r.records.iter().filter(|c| axioms.contains(&c.axiom.as_str())).collect()
}

fn first_failure(recs: &[&CheckRecord]) -> Option<String> {
    recs.iter().find(|c| c.status == Status::Fail).map(|c| c.to_string())
}

/// All records pass, none is empty, and `axioms` are all present.
fn all_pass(r: &VerificationReport, axioms: &[&str]) -> Result<usize, String> {
    for a in axioms {
        if !r.records.iter().any(|c| c.axiom == *a) {
            return Err(format!("no record for {a}"));
        }
    }
    let recs: Vec<&CheckRecord> = r.records.iter().collect();
    if let Some(f) = first_failure(&recs) {
        return Err(f);
    }
    if let Some(c) = r.records.iter().find(|c| c.cases == 0 && c.axiom != "J-commute" && c.axiom != "J-centralizer") {
        return Err(format!("{} checked no cases", c));
    }
    Ok(r.records.iter().map(|c| c.cases).sum())
}

fn bounds_ok(r: &VerificationReport) -> Result<f64, String> {
    let mut worst = f64::NEG_INFINITY;
    for c in r.records.iter().filter(|c| c.mode == "zip") {
        match c.bound_log2 {
            Some(b) if b < MAX_BOUND_LOG2 => worst = worst.max(b),
            _ => return Err(format!("{c}: bound not below 2^{MAX_BOUND_LOG2}")),
        }
    }
    Ok(worst)
}

fn cases_of(r: &VerificationReport, axiom: &str, ty: &str) -> usize {
    r.records.iter().filter(|c| c.axiom == axiom && c.ty == ty).map(|c| c.cases).sum()
}

struct Defaults {
    reports: HashMap<Suite, (VerificationReport, Duration)>,
    total: Duration,
}

/// Every suite at its default ranks, exact mode.
fn default_suites() -> Defaults {
    let mut reports = HashMap::new();
    let mut total = Duration::ZERO;
    for s in Suite::ALL {
        let (r, d) = timed(|| run(s, &SuiteConfig::default()));
        eprintln!("  suite {s}: {:.1} s, {}", secs(d), if r.passed() { "pass" } else { "FAIL" });
        total += d;
        reports.insert(s, (r, d));
    }
    Defaults { reports, total }
}

fn c1(d: &Defaults) -> Outcome {
    let (r, t) = &d.reports[&Suite::Pairing];
    let orth = select(r, &["orthogonality"]);
    let (b, dd) = (cases_of(r, "orthogonality", "B"), cases_of(r, "orthogonality", "D"));
    let ok = first_failure(&orth).is_none() && b == 48 * 48 && dd == 24 * 24 && secs(*t) < ORTHOGONALITY_SECS;
    outcome(ok, format!("B3 {b} pairs, D3 {dd} pairs, pairing suite {:.1} s (limit {ORTHOGONALITY_SECS} s)", secs(*t)))
}

fn c2(d: &Defaults) -> Outcome {
    let (r, _) = &d.reports[&Suite::Pairing];
    let a = run(Suite::Pairing, &SuiteConfig { trials: Some(200), ..cfg(CoxeterType::A, 3) });
    let axioms = ["tau-trace", "adjunction-right", "adjunction-left"];
    let mut recs = select(r, &axioms);
    recs.extend(select(&a, &axioms));
    let enough = recs.len() == 9 && recs.iter().all(|c| c.cases >= 200);
    match first_failure(&recs) {
        None if enough => outcome(true, "200 random pairs and triples in each of A3, B3, D3"),
        None => outcome(false, "missing records or fewer than 200 cases"),
        Some(f) => outcome(false, f),
    }
}

fn c3(d: &Defaults) -> Outcome {
    let (r, _) = &d.reports[&Suite::Serre];
    let recs = select(r, &["serre"]);
    let shape: Vec<String> = recs.iter().map(|c| format!("{}{}:{}", c.ty, c.rank, c.cases)).collect();
    let ok = first_failure(&recs).is_none() && shape == ["A4:200", "B3:200", "D4:200"];
    outcome(ok, format!("basis pairs {}", shape.join(", ")))
}

/// The jm suite at every rank up to the budget; `unequal` for type B.
fn jm_ranks() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for (ty, lo, hi) in [(CoxeterType::A, 1, 5), (CoxeterType::B, 1, 4), (CoxeterType::D, 2, 4)] {
        for n in lo..=hi {
            out.push(run(Suite::Jm, &cfg(ty, n)));
            if ty == CoxeterType::B {
                out.push(run(Suite::Jm, &SuiteConfig { unequal: true, ..cfg(ty, n) }));
            }
        }
    }
    out
}

fn c4(jm: &[VerificationReport]) -> Outcome {
    let recs: Vec<&CheckRecord> = jm.iter().flat_map(|r| select(r, &["central"])).collect();
    let n = recs.iter().map(|c| c.cases).sum::<usize>();
    match first_failure(&recs) {
        None if recs.len() == 16 => outcome(true, format!("S, zeta, beta, delta, e_k(J) central: {n} elements at A1-5, B1-4, D2-4")),
        None => outcome(false, format!("{} centrality records", recs.len())),
        Some(f) => outcome(false, f),
    }
}

fn c5(jm: &[VerificationReport], d: &Defaults) -> Outcome {
    let axioms = ["J-commute", "J-centralizer", "J-product", "j-square"];
    let mut recs: Vec<&CheckRecord> =
        jm.iter().flat_map(|r| select(r, &axioms)).filter(|c| c.rank <= 4).collect();
    let (affine, _) = &d.reports[&Suite::AffineRel];
    recs.extend(affine.records.iter());
    let squares = recs.iter().filter(|c| c.axiom == "j-square").count();
    match first_failure(&recs) {
        None if squares > 0 && !affine.records.is_empty() => {
            outcome(true, format!("{} records at rank <= 4, affine relations at B2-4", recs.len()))
        }
        None => outcome(false, "missing records"),
        Some(f) => outcome(false, f),
    }
}

fn c6(d: &Defaults) -> Outcome {
    let mut notes = Vec::new();
    for s in [Suite::MarkovZeta, Suite::MarkovBeta, Suite::MarkovDelta] {
        let (r, _) = &d.reports[&s];
        if let Err(e) = all_pass(r, &["M1", "U1", "M2"]) {
            return outcome(false, e);
        }
        let tops: Vec<String> = ["A", "B", "D"]
            .iter()
            .filter_map(|t| r.records.iter().filter(|c| c.ty == *t).map(|c| c.rank).max().map(|m| format!("{t}{m}")))
            .collect();
        notes.push(format!("{s} exact to {}", tops.join("/")));
    }
    for s in [Suite::MarkovZeta, Suite::MarkovBeta] {
        let z = run(s, &SuiteConfig { zip: true, ..cfg(CoxeterType::B, 5) });
        let worst = match all_pass(&z, &["U1", "M2"]).and_then(|_| bounds_ok(&z)) {
            Ok(w) => w,
            Err(e) => return outcome(false, e),
        };
        if !z.records.iter().any(|c| c.rank == 5 && c.mode == "zip") {
            return outcome(false, "no randomized record at B5");
        }
        notes.push(format!("{s} zip at B5 bound 2^{worst:.0}"));
    }
    outcome(true, notes.join("; "))
}

fn simple(d: &Defaults, s: Suite, axioms: &[&str], what: &str) -> Outcome {
    let (r, t) = &d.reports[&s];
    match all_pass(r, axioms) {
        Ok(n) => outcome(true, format!("{what}: {n} cases, {:.1} s", secs(*t))),
        Err(e) => outcome(false, e),
    }
}

fn c10(d: &Defaults) -> Outcome {
    let b = simple(d, Suite::GeometricB, &["geometric-B-coeff", "geometric-B-anchor"], "B1-3 exhaustive, B4 sampled");
    let dd = simple(d, Suite::GeometricD, &["geometric-D-dual", "geometric-D-anchor"], "D2-3 exhaustive");
    let sampled = d.reports[&Suite::GeometricB].0.records.iter().any(|c| c.rank == 4 && c.mode == "sampled");
    outcome(b.ok && dd.ok && sampled, format!("{}; {}", b.detail, dd.detail))
}

fn c11(d: &Defaults) -> Outcome {
    let (r, t) = &d.reports[&Suite::EPrime];
    let dual = select(r, &["eprime-dual"]);
    // (n + 1)(n + 2)/2 pairs (k, n) with k <= n <= 6
    let ok = first_failure(&dual).is_none() && dual.iter().map(|c| c.cases).sum::<usize>() == 28 && secs(*t) < EPRIME_SECS;
    outcome(ok, format!("all k at n <= 6 in {:.2} s (limit {EPRIME_SECS} s)", secs(*t)))
}

fn word(text: &str, n: usize) -> BraidWord {
    BraidWord::parse(text, CoxeterType::A, n).expect("valid word")
}

fn c12() -> Outcome {
    let ext = |s: &str| ExtScalar::parse(s).expect("valid scalar");
    let reduced = |w: &str, n: usize| homfly(&word(w, n)).map(|i| i.reduced);
    let mut bad = Vec::new();
    for (w, n, expect) in [
        ("", 1, ext("1")),
        ("1 1 1", 2, ext("-a*(v^2 + v^-2 + a)")),
        ("1 1", 2, ext("s*((v - v^-1)^2 + 1 + a)/(v - v^-1)")),
    ] {
        match reduced(w, n) {
            Ok(x) if x == expect => {}
            Ok(x) => bad.push(format!("'{w}': {x} != {expect}")),
            Err(e) => bad.push(format!("'{w}': {e}")),
        }
    }
    if !bad.is_empty() {
        return outcome(false, bad.join("; "));
    }
    let r = run(Suite::Links, &SuiteConfig { zip: true, ty: Some(CoxeterType::A), rank: Some(4), ..SuiteConfig::default() });
    let moves: usize = select(&r, &["conjugation", "stabilization+", "stabilization-"]).iter().map(|c| c.cases).sum();
    let skein: usize = select(&r, &["skein"]).iter().map(|c| c.cases).sum();
    match all_pass(&r, &["skein"]).and_then(|_| bounds_ok(&r)) {
        Ok(w) if moves == 500 && skein == 100 => {
            outcome(true, format!("unknot, trefoil, Hopf; {moves} move pairs and {skein} skein triples, bound 2^{w:.0}"))
        }
        Ok(_) => outcome(false, format!("{moves} move pairs, {skein} skein triples")),
        Err(e) => outcome(false, e),
    }
}

// ---- mode agreement ----------------------------------------------------

/// Statements that must fail in every ring; a randomized check that
/// accepts one of them would disagree with exact arithmetic.
fn false_identities<R: Coeff>(b2: &Arc<HeckeAlgebra<R>>, a3: &Arc<HeckeAlgebra<R>>) -> Vec<(String, bool)> {
    let g = |alg: &Arc<HeckeAlgebra<R>>, s: u8| HeckeElement::generator(alg, s).expect("generator");
    let w = |alg: &Arc<HeckeAlgebra<R>>, word: &[u8]| HeckeElement::word(alg, word).expect("word");
    let one_b = HeckeElement::one(b2);
    let (t0, t1) = (g(b2, 0), g(b2, 1));
    let (s1, s2) = (g(a3, 1), g(a3, 2));
    let z = TraceFunctional::of_family(Family::Zeta, a3).expect("zeta");
    let tr = |h: &HeckeElement<R>| z.eval(h).expect("trace");
    vec![
        ("t_1^2 = 1".into(), t1.mul(&t1).unwrap() == one_b),
        ("tau(t_1) = 0".into(), t1.tau().is_zero()),
        ("<t_1, t_1^-1> = 0".into(), t1.pairing(&t1.inverse().unwrap()).unwrap().is_zero()),
        ("t_0 t_1 = t_1 t_0".into(), w(b2, &[0, 1]) == w(b2, &[1, 0])),
        ("bar(t_1) = t_1".into(), t1.bar() == t1),
        ("i(t_0 t_1) = t_0 t_1".into(), w(b2, &[0, 1]).anti_i() == w(b2, &[0, 1])),
        ("S = 1 in B2".into(), full_twist(b2) == one_b),
        ("tr(t_1) = tr(1)".into(), tr(&s1) == tr(&HeckeElement::one(a3))),
        ("tr(t_1 t_2) = tr(t_1) tr(t_2)".into(), tr(&s1.mul(&s2).unwrap()) == tr(&s1).mul(&tr(&s2))),
        ("t_0 central".into(), t0.is_central()),
    ]
}

fn key(c: &CheckRecord) -> (String, String, String, usize) {
    (c.axiom.clone(), c.family.clone(), c.ty.clone(), c.rank)
}

fn c13() -> Outcome {
    let runs: [(Suite, CoxeterType, usize); 12] = [
        (Suite::Pairing, CoxeterType::B, 2),
        (Suite::Pairing, CoxeterType::D, 3),
        (Suite::Serre, CoxeterType::A, 3),
        (Suite::Serre, CoxeterType::B, 2),
        (Suite::Jm, CoxeterType::A, 3),
        (Suite::Jm, CoxeterType::B, 3),
        (Suite::Jm, CoxeterType::D, 3),
        (Suite::LemmaT, CoxeterType::B, 3),
        (Suite::EPrime, CoxeterType::D, 5),
        (Suite::MarkovZeta, CoxeterType::A, 3),
        (Suite::MarkovBeta, CoxeterType::B, 2),
        (Suite::MarkovDelta, CoxeterType::D, 3),
    ];
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for (s, ty, n) in runs {
        let base = SuiteConfig { trials: Some(10), ..cfg(ty, n) };
        let exact = run(s, &base);
        let zip = run(s, &SuiteConfig { zip: true, ..base });
        let zmap: HashMap<_, _> = zip.records.iter().map(|c| (key(c), c.status)).collect();
        for c in &exact.records {
            if let Some(st) = zmap.get(&key(c)) {
                compared += 1;
                if *st != c.status {
                    disagreements.push(format!("{s}: {}", c.axiom));
                }
            }
        }
    }
    let b2 = HeckeAlgebra::<Scalar>::symbolic(CoxeterContext::b(2), ParamMode::Equal).expect("B2");
    let a3 = HeckeAlgebra::<Scalar>::symbolic(CoxeterContext::a(3), ParamMode::Equal).expect("A3");
    let exact_false = false_identities(&b2, &a3);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let p = ZipPoint::random(&mut rng, false);
    let zb2 = HeckeAlgebra::<ZipScalar>::at_point(CoxeterContext::b(2), ParamMode::Equal, &p).expect("B2");
    let za3 = HeckeAlgebra::<ZipScalar>::at_point(CoxeterContext::a(3), ParamMode::Equal, &p).expect("A3");
    let zip_false = false_identities(&zb2, &za3);
    for ((name, e), (_, z)) in exact_false.iter().zip(&zip_false) {
        compared += 1;
        if e != z || *e {
            disagreements.push(format!("{name}: exact {e}, zip {z}"));
        }
    }
    let ok = disagreements.is_empty() && compared >= MODE_AGREEMENT_MIN;
    let detail = if disagreements.is_empty() {
        format!("{compared} identities agree ({} false in both modes)", exact_false.len())
    } else {
        disagreements.join("; ")
    };
    outcome(ok, detail)
}

fn c14(d: &Defaults) -> Outcome {
    let spec = CentralElementSpec::new(Family::Beta, CoxeterType::B, 4, ParamChoice::Unequal).expect("spec");
    let (built, t) = timed(|| spec.build());
    let ok = built.is_ok() && secs(t) < BETA4_SECS && secs(d.total) < FULL_SUITE_SECS;
    outcome(
        ok,
        format!(
            "beta_4 built in {:.2} s (limit {BETA4_SECS} s); default exact suites {:.1} s (limit {FULL_SUITE_SECS} s)",
            secs(t),
            secs(d.total)
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let d = default_suites();
    let jm = jm_ranks();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "orthogonality", c1(&d)),
        (2, "trace and adjunction", c2(&d)),
        (3, "Serre property", c3(&d)),
        (4, "centrality", c4(&jm)),
        (5, "Jucys-Murphy structure", c5(&jm, &d)),
        (6, "Markov axioms", c6(&d)),
        (7, "T_n support lemma", simple(&d, Suite::LemmaT, &["T-inverse", "T-support", "T-inverse-support", "j-inverse-T-support"], "B1-4")),
        (8, "property (B)", simple(&d, Suite::PropertyB, &["T-property", "T-product"], "B1-4")),
        (9, "property (D)", simple(&d, Suite::PropertyD, &["U-property", "U-product", "restriction"], "D2 and D4, restriction D2-4")),
        (10, "geometric traces", c10(&d)),
        (11, "e'_k dual formula", c11(&d)),
        (12, "link invariants", c12()),
        (13, "mode agreement", c13()),
        (14, "performance", c14(&d)),
    ];
    let mut failed = 0;
    for (n, name, o) in &results {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("criterion {n:>2} {tag}  {name}: {}", o.detail);
    }
    println!("{} of {} criteria pass ({:.1} s)", results.len() - failed, results.len(), secs(started.elapsed()));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
