use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coeffring::{Assignment, Var};
use crate::sample::{random_element, random_scalar};

type H = HeckeElement<Scalar>;

fn sym(ty: CoxeterType, rank: usize) -> Arc<HeckeAlgebra<Scalar>> {
    symbolic_algebra(ty, rank, ParamChoice::Equal).unwrap()
}

fn unequal_b(rank: usize) -> Arc<HeckeAlgebra<Scalar>> {
    symbolic_algebra(CoxeterType::B, rank, ParamChoice::Unequal).unwrap()
}

fn elem(alg: &Arc<HeckeAlgebra<Scalar>>, text: &str) -> H {
    crate::hecke::parse_element(alg, text).unwrap()
}

#[test]
fn full_twist_b1() {
    let b1 = unequal_b(1);
    let a0 = Scalar::alpha0();
    let expected = H::one(&b1).scale(&Scalar::one().add(&a0.mul(&a0))).sub(&elem(&b1, "T[0]").scale(&a0)).unwrap();
    assert_eq!(full_twist(&b1), expected);
    assert_eq!(full_twist(&b1).mul(&full_twist_inverse(&b1)).unwrap(), H::one(&b1));
}

#[test]
fn full_twist_rank_zero_is_one() {
    for ty in [CoxeterType::A, CoxeterType::B, CoxeterType::D] {
        let a = sym(ty, 0);
        assert_eq!(full_twist(&a), H::one(&a));
        assert_eq!(full_twist_inverse(&a), H::one(&a));
    }
}

#[test]
fn full_twist_is_central() {
    for a in [sym(CoxeterType::A, 4), unequal_b(3), sym(CoxeterType::D, 4)] {
        let s = full_twist(&a);
        assert!(s.is_central(), "{a:?}");
        assert!(full_twist_inverse(&a).is_central());
        assert_eq!(s.mul(&full_twist_inverse(&a)).unwrap(), H::one(&a));
    }
}

#[test]
fn serre_property() {
    let a = sym(CoxeterType::A, 3);
    assert!(serre_check(&H::one(&a), &H::one(&a)).unwrap());
    let b3 = unequal_b(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let x = H::basis(&b3, rng.random_range(0..48));
        let y = H::basis(&b3, rng.random_range(0..48));
        assert!(serre_check(&x, &y).unwrap());
    }
    let d3 = sym(CoxeterType::D, 3);
    for _ in 0..5 {
        let x = random_element(&mut rng, &d3, 3, random_scalar);
        let y = random_element(&mut rng, &d3, 3, random_scalar);
        assert!(serre_check(&x, &y).unwrap());
    }
}

#[test]
fn jm_base_cases_and_type_a_words() {
    let b3 = unequal_b(3);
    assert_eq!(jm_element(&b3, 1).unwrap(), elem(&b3, "T[0]*T[0]"));
    let a4 = sym(CoxeterType::A, 4);
    assert_eq!(jm_element(&a4, 1).unwrap(), H::one(&a4));
    for i in 2..=4u8 {
        let down: Vec<u8> = (1..i).rev().collect();
        let up: Vec<u8> = (1..i).collect();
        let w = [down, up].concat();
        assert_eq!(jm_element(&a4, i as usize).unwrap(), H::word(&a4, &w).unwrap());
    }
    let d3 = sym(CoxeterType::D, 3);
    assert_eq!(jm_element(&d3, 1).unwrap(), H::one(&d3));
    assert!(jm_element(&d3, 0).is_err());
    assert!(jm_element(&d3, 4).is_err());
}

#[test]
fn jm_elements_commute_and_centralize() {
    for a in [unequal_b(3), sym(CoxeterType::D, 3), sym(CoxeterType::A, 4)] {
        let js = jm_elements(&a).unwrap();
        for x in &js {
            for y in &js {
                assert!(x.commutes_with(y).unwrap());
            }
        }
        let n = a.rank();
        let last = &js[n - 1];
        let g = a.group();
        for w in 0..g.len() as u32 {
            if g.in_parabolic(w, n - 1) {
                assert!(last.commutes_with(&H::basis(&a, w)).unwrap(), "{a:?} {w}");
            }
        }
    }
}

#[test]
fn j_squares_are_jm_elements() {
    let b3 = unequal_b(3);
    assert_eq!(jm_j_b(&b3, 1).unwrap(), elem(&b3, "T[0]"));
    for i in 1..=3 {
        let j = jm_j_b(&b3, i).unwrap();
        assert_eq!(j.mul(&j).unwrap(), jm_element(&b3, i).unwrap());
    }
    let d3 = sym(CoxeterType::D, 3);
    assert_eq!(jm_j_d(&d3, 1).unwrap(), H::one(&d3));
    for i in 1..=3 {
        let j = jm_j_d(&d3, i).unwrap();
        assert_eq!(j.mul(&j).unwrap(), jm_element(&d3, i).unwrap());
    }
    let js = j_elements(&d3).unwrap();
    for x in &js {
        for y in &js {
            assert!(x.commutes_with(y).unwrap());
        }
    }
    assert!(jm_j_b(&d3, 1).is_err());
    assert!(j_elements(&sym(CoxeterType::A, 3)).is_err());
}

#[test]
fn j_words_are_reduced() {
    let b4 = unequal_b(4);
    for i in 1..=4 {
        let w = j_b_word(i);
        assert_eq!(w.len(), 2 * i - 1);
        assert_eq!(b4.group().length(b4.group().index_of_word(&w).unwrap()), w.len());
    }
    let d4 = sym(CoxeterType::D, 4);
    for i in 2..=4 {
        let w = j_d_word(i);
        assert_eq!(d4.group().length(d4.group().index_of_word(&w).unwrap()), w.len());
    }
}

#[test]
fn affine_relations() {
    for n in 1..=4 {
        assert!(affine_relation_check(&unequal_b(n)).unwrap());
    }
    assert!(affine_relation_check(&sym(CoxeterType::A, 3)).is_err());
}

#[test]
fn zeta_small_cases() {
    let a0 = sym(CoxeterType::A, 0);
    assert_eq!(zeta(&a0).unwrap(), H::one(&a0));
    let a1 = sym(CoxeterType::A, 1);
    assert_eq!(zeta(&a1).unwrap().to_string(), "1 + a^-1");
    let b3 = sym(CoxeterType::B, 3);
    let z = zeta(&b3).unwrap();
    assert!(z.is_central());
    assert!(z.terms().iter().all(|(_, c)| c.inner().is_poly()));
}

#[test]
fn beta_first_factor_and_collapse() {
    let b1 = unequal_b(1);
    let expected = elem(&b1, "1 + (yb + v0 - v0^-1)*T[0] + a^-1*T[0]*T[0]");
    assert_eq!(beta(&b1).unwrap(), expected);
    for n in 1..=3 {
        let b = unequal_b(n);
        let asg = Assignment::new().set(Var::Yb, Scalar::alpha0().neg().inner().clone());
        let collapsed = beta(&b).unwrap().map_coeffs(&b, |c| c.specialize(&asg)).unwrap();
        assert_eq!(collapsed, zeta(&b).unwrap(), "n = {n}");
    }
    assert!(beta(&unequal_b(3)).unwrap().is_central());
    assert!(beta(&sym(CoxeterType::D, 2)).is_err());
}

#[test]
fn delta_small_cases() {
    let d1 = sym(CoxeterType::D, 1);
    assert_eq!(delta(&d1).unwrap().to_string(), "1 + a^-1");
    for n in 2..=3 {
        let d = sym(CoxeterType::D, n);
        let x = delta(&d).unwrap();
        assert!(x.is_central());
        assert!(x.terms().iter().all(|(_, c)| c.yb_even()));
    }
    assert!(delta(&unequal_b(2)).is_err());
}

#[test]
fn t_and_u_elements() {
    let b1 = unequal_b(1);
    assert_eq!(t_element(&b1).unwrap(), elem(&b1, "T[0]"));
    let d1 = sym(CoxeterType::D, 1);
    assert_eq!(u_element(&d1).unwrap(), H::one(&d1));
    let b2 = unequal_b(2);
    let t2 = t_element(&b2).unwrap();
    assert_eq!(t2, elem(&b2, "T[1]*T[0]*inv(T[1])"));
    for n in 1..=3 {
        let r = t_lemma_check(&unequal_b(n)).unwrap();
        assert!(r.all(), "n = {n}: {r:?}");
    }
    assert!(t_element(&d1).is_err());
}

#[test]
fn u_reading_matches_t() {
    assert!(u_reading_check(4).unwrap());
    // the other reading t_1' t_1^-1 does not satisfy the identity
    let d2 = sym(CoxeterType::D, 2);
    let b2 = HeckeAlgebra::<Scalar>::v0_one(2).unwrap();
    let other = elem(&d2, "T[1p]*inv(T[1])").embed_d_to_b(&b2).unwrap();
    assert_ne!(other, t_element(&b2).unwrap().mul_gen(0).unwrap());
}

#[test]
fn elementary_symmetric_in_jm() {
    for a in [sym(CoxeterType::A, 3), unequal_b(3), sym(CoxeterType::D, 3)] {
        let n = a.rank();
        assert_eq!(elementary_jm(&a, n).unwrap(), full_twist_inverse(&a), "{a:?}");
        assert_eq!(elementary_jm(&a, 0).unwrap(), H::one(&a));
    }
    let b2 = unequal_b(2);
    let js = jm_elements(&b2).unwrap();
    assert_eq!(elementary_jm(&b2, 1).unwrap(), js[0].add(&js[1]).unwrap());
}

#[test]
fn e_prime_routes_agree() {
    let v = Scalar::v();
    let alpha = Scalar::alpha();
    for n in 0..=4 {
        for k in 0..=n {
            let p = e_prime(k, n, &alpha).unwrap();
            assert!(p.is_symmetric());
            assert_eq!(p, e_prime_explicit(k, n, &v).unwrap(), "k = {k}, n = {n}");
        }
    }
    assert_eq!(e_prime(0, 3, &alpha).unwrap(), SymPoly::one(3));
    let minus_x2 = SymPoly::monomial(1, 0, 2, Scalar::from_int(-1));
    assert_eq!(e_prime(1, 1, &alpha).unwrap(), minus_x2);
    assert!(e_prime(3, 2, &alpha).is_err());
}

#[test]
fn sym_poly_eval_rejects_non_commuting() {
    let a3 = sym(CoxeterType::A, 3);
    let xs = [elem(&a3, "T[1]"), elem(&a3, "T[2]")];
    let p = SymPoly::elementary(2, 1);
    assert!(matches!(sym_poly_eval(&a3, &p, &xs), Err(Error::NonCommuting(_))));
    let ys = [elem(&a3, "T[1]"), elem(&a3, "T[1]*T[1]")];
    let e2 = sym_poly_eval(&a3, &SymPoly::elementary(2, 2), &ys).unwrap();
    assert_eq!(e2, elem(&a3, "T[1]^3"));
}

#[test]
fn family_names_and_validation() {
    for f in [
        Family::FullTwist,
        Family::FullTwistInverse,
        Family::Zeta,
        Family::Beta,
        Family::Delta,
        Family::ElemSymJM(2),
        Family::EPrimeJ(1),
    ] {
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }
    assert!("gamma".parse::<Family>().is_err());
    assert!(CentralElementSpec::new(Family::Beta, CoxeterType::D, 3, ParamChoice::Equal).is_err());
    assert!(CentralElementSpec::new(Family::Delta, CoxeterType::B, 3, ParamChoice::Equal).is_err());
    assert!(CentralElementSpec::new(Family::Zeta, CoxeterType::A, 3, ParamChoice::Unequal).is_err());
    assert!(CentralElementSpec::new(Family::ElemSymJM(4), CoxeterType::A, 3, ParamChoice::Equal).is_err());
    let s = CentralElementSpec::new(Family::Beta, CoxeterType::B, 2, ParamChoice::V0One).unwrap();
    assert_eq!(s.key(), "beta-B2-v0one");
}

#[test]
fn cache_round_trip_and_version() {
    let dir = tempfile::tempdir().unwrap();
    let spec = CentralElementSpec::new(Family::Beta, CoxeterType::B, 2, ParamChoice::Unequal).unwrap();
    let fresh = spec.build().unwrap();
    let c1 = CentralCache::with_dir(dir.path());
    assert!(c1.lookup(&spec).unwrap().is_none());
    assert_eq!(c1.get(&spec).unwrap(), fresh);
    let file = dir.path().join("beta-B2-unequal.json");
    assert!(file.exists());
    let c2 = CentralCache::with_dir(dir.path());
    assert_eq!(c2.lookup(&spec).unwrap(), Some(fresh.clone()));
    let stale = std::fs::read_to_string(&file).unwrap().replacen("\"version\":1", "\"version\":0", 1);
    std::fs::write(&file, stale).unwrap();
    let c3 = CentralCache::with_dir(dir.path());
    assert!(c3.lookup(&spec).unwrap().is_none());
    assert_eq!(c3.get(&spec).unwrap(), fresh);
    assert_eq!(central_element(&spec).unwrap(), fresh);
}
