use super::*;
use crate::coeffring::{ExtScalar, Scalar};
use crate::hecke::ParamMode;
use crate::coxeter::CoxeterContext;
use crate::report::Status;

fn word(text: &str, ty: CoxeterType, n: usize) -> BraidWord {
    BraidWord::parse(text, ty, n).unwrap()
}

fn ext(text: &str) -> ExtScalar {
    ExtScalar::parse(text).unwrap()
}

#[test]
fn parse_and_display() {
    let b = word("1 -2 1", CoxeterType::A, 3);
    assert_eq!(b.letters(), &[Letter::new(1, false), Letter::new(2, true), Letter::new(1, false)]);
    assert_eq!(b.to_string(), "1 -2 1");
    assert_eq!(b.writhe(), 1);
    let c = word("0 1 0^-1", CoxeterType::B, 2);
    assert_eq!(c.to_string(), "0 1 0^-1");
    assert_eq!(c.writhe(), 1);
    assert_eq!(word("e", CoxeterType::A, 2).len(), 0);
    assert_eq!(word("", CoxeterType::A, 2).to_string(), "e");
    assert!(BraidWord::parse("-0", CoxeterType::B, 2).is_err());
    assert!(BraidWord::parse("0", CoxeterType::A, 2).is_err());
    assert!(BraidWord::parse("3", CoxeterType::A, 3).is_err());
    assert!(matches!(BraidWord::parse("1 x", CoxeterType::A, 3), Err(Error::Parse { pos: 2, .. })));
}

#[test]
fn batch_files() {
    let text = "# trefoil and friends\nstrands=3 type=A\n1 1 1\n\n1 -2 # comment\ne\n";
    let ws = parse_batch(text).unwrap();
    assert_eq!(ws.len(), 3);
    assert_eq!(ws[1].to_string(), "1 -2");
    assert!(ws[2].is_empty());
    assert!(parse_batch("strands=2\n1").is_err());
    assert!(parse_batch("strands=2 type=A\n2").is_err());
}

#[test]
fn moves_on_words() {
    let b = word("1 1 1", CoxeterType::A, 2);
    let w = word("1", CoxeterType::A, 2);
    assert_eq!(b.conjugate(&w).unwrap().to_string(), "1 1 1 1 -1");
    assert_eq!(b.stabilize(true).to_string(), "1 1 1 -2");
    assert_eq!(b.stabilize(false).strands(), 3);
    assert_eq!(b.insert(0, Letter::new(1, true)).unwrap().to_string(), "-1 1 1 1");
    assert!(b.insert(5, Letter::new(1, true)).is_err());
    assert_eq!(b.inverse().to_string(), "-1 -1 -1");
}

#[test]
fn hecke_images() {
    let alg = HeckeAlgebra::<Scalar>::symbolic(CoxeterContext::a(2), ParamMode::Equal).unwrap();
    let one = HeckeElement::one(&alg);
    assert_eq!(braid_to_hecke(&alg, &word("", CoxeterType::A, 2)).unwrap(), one);
    assert_eq!(braid_to_hecke(&alg, &word("1 -1", CoxeterType::A, 2)).unwrap(), one);
    let t1 = HeckeElement::generator(&alg, 1).unwrap();
    let sq = one.add(&t1.scale(&Scalar::alpha())).unwrap();
    assert_eq!(braid_to_hecke(&alg, &word("1 1", CoxeterType::A, 2)).unwrap(), sq);
    assert!(braid_to_hecke(&alg, &word("1", CoxeterType::A, 3)).is_err());
}

#[test]
fn homfly_values() {
    let unknot = homfly(&word("", CoxeterType::A, 1)).unwrap();
    assert_eq!(unknot.reduced, ExtScalar::one());
    assert_eq!(unknot.closed, ext("1 + a"));
    let trefoil = homfly(&word("1 1 1", CoxeterType::A, 2)).unwrap();
    assert_eq!(trefoil.reduced, ext("-a*(v^2 + v^-2 + a)"));
    let hopf = homfly(&word("1 1", CoxeterType::A, 2)).unwrap();
    assert_eq!(hopf.reduced, ext("s*((v - v^-1)^2 + 1 + a)/(v - v^-1)"));
    assert!(homfly(&word("0", CoxeterType::B, 1)).is_err());
}

#[test]
fn homfly_under_explicit_moves() {
    let trefoil = homfly(&word("1 1 1", CoxeterType::A, 2)).unwrap();
    for other in [("1 1 1 1 -1", 2), ("1 1 1 2", 3), ("1 1 1 -2", 3)] {
        assert_eq!(homfly(&word(other.0, CoxeterType::A, other.1)).unwrap(), trefoil, "{}", other.0);
    }
    // a stabilized unknot is the unknot
    let u = homfly(&word("-1 2", CoxeterType::A, 3)).unwrap();
    assert_eq!(u.reduced, ExtScalar::one());
}

#[test]
fn annular_values() {
    let y = ExtScalar::from(Scalar::y());
    assert_eq!(annular_invariant(&word("0", CoxeterType::B, 1)).unwrap().closed, y);
    let empty = annular_invariant(&word("", CoxeterType::B, 2)).unwrap();
    assert_eq!(empty.closed, ext("(1 + a)^2/(v - v^-1)/s"));
    // T_1 T_2 = t_0 . t_1 t_0 t_1^-1, writhe 0
    let tt = annular_invariant(&word("0 1 0 -1", CoxeterType::B, 2)).unwrap();
    assert_eq!(tt.closed, ext("y^2/(v - v^-1)/s"));
}

#[test]
fn markov_moves_random() {
    let r = markov_move_check(30, 3, 8, LinkCheckMode::Exact, 1).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.records.iter().map(|c| c.cases).sum::<usize>(), 30);
    let z = markov_move_check(60, 4, 12, LinkCheckMode::Zip { points: 3 }, 2).unwrap();
    assert!(z.passed(), "{z}");
    assert!(z.records.iter().all(|c| c.bound_log2.unwrap() < -30.0));
    assert!(markov_move_check(3, 3, 4, LinkCheckMode::Zip { points: 1 }, 0).is_err());
}

#[test]
fn annular_moves_random() {
    let r = annular_move_check(30, 3, 8, LinkCheckMode::Zip { points: 3 }, 5).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn stabilizing_sigma0_is_not_a_move() {
    // sigma_0 adds a twist around the core: the invariant changes
    let a = annular_invariant(&word("1", CoxeterType::B, 2)).unwrap();
    let b = annular_invariant(&word("1 0", CoxeterType::B, 2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn skein() {
    // unknot with a kink: L0 is two unlinked circles
    assert!(skein_check(&word("", CoxeterType::A, 2), 0, 1, LinkCheckMode::Exact, 0).unwrap());
    // trefoil, Hopf link and unknot
    assert!(skein_check(&word("1 1", CoxeterType::A, 2), 2, 1, LinkCheckMode::Exact, 0).unwrap());
    assert!(skein_check(&word("0 1", CoxeterType::B, 2), 1, 0, LinkCheckMode::Exact, 0).unwrap());
    let r = skein_batch(20, 4, 10, LinkCheckMode::Zip { points: 3 }, 9).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.records[0].cases, 20);
}

#[test]
fn wrong_normalization_is_caught() {
    // without the s-power, negative stabilization is not invariant
    let ev = Evaluator::exact();
    let b = word("1 1 1", CoxeterType::A, 2);
    let c = b.stabilize(true);
    let alpha = ExtScalar::from(Scalar::alpha());
    let lhs = ev.trace(&b).unwrap();
    let rhs = ev.trace(&c).unwrap().mul(&alpha.inv().unwrap());
    assert_ne!(lhs, rhs);
    assert_eq!(ev.evaluate(&b).unwrap(), ev.evaluate(&c).unwrap());
    let status = markov_move_check(6, 3, 6, LinkCheckMode::Exact, 3).unwrap().records[2].status;
    assert_eq!(status, Status::Pass);
}

