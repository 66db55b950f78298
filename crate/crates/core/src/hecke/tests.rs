use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coeffring::{Assignment, Scalar};
use crate::coxeter::GroupElement;
use crate::sample::{random_element, random_scalar};

type H = HeckeElement<Scalar>;

fn alg(ctx: CoxeterContext, mode: ParamMode) -> Arc<HeckeAlgebra<Scalar>> {
    HeckeAlgebra::symbolic(ctx, mode).unwrap()
}

fn b3() -> Arc<HeckeAlgebra<Scalar>> {
    alg(CoxeterContext::b(3), ParamMode::Unequal)
}

fn algebras() -> Vec<Arc<HeckeAlgebra<Scalar>>> {
    vec![
        alg(CoxeterContext::a(4), ParamMode::Equal),
        alg(CoxeterContext::b(3), ParamMode::Equal),
        b3(),
        alg(CoxeterContext::d(3), ParamMode::Equal),
    ]
}

fn rand_elem(rng: &mut ChaCha8Rng, a: &Arc<HeckeAlgebra<Scalar>>, n: usize) -> H {
    random_element(rng, a, n, random_scalar)
}

#[test]
fn quadratic_relation() {
    for a in algebras() {
        for (slot, &s) in a.group().gens().iter().enumerate() {
            let t = H::generator(&a, s).unwrap();
            let vs = if a.mode() == ParamMode::Unequal && s == 0 { Scalar::alpha0() } else { Scalar::alpha() };
            assert_eq!(a.alpha_slot(slot), &vs);
            let expect = t.scale(&vs).add_scalar(&Scalar::one());
            assert_eq!(t.mul(&t).unwrap(), expect, "{a:?} s={s}");
        }
    }
}

#[test]
fn generator_square_prints() {
    let a = alg(CoxeterContext::a(3), ParamMode::Equal);
    let t = parse_element(&a, "T[1] * T[1]").unwrap();
    assert_eq!(t.to_string(), "1 + (v - v^-1)*T[1]");
    let p = parse_element(&a, "(T[1]*T[2])*T[1]").unwrap();
    assert_eq!(p, H::t(&a, &GroupElement::from_word(a.ctx(), &[1, 2, 1]).unwrap()).unwrap());
    assert_eq!(p.len(), 1);
}

#[test]
fn basis_inverse_and_tau() {
    let a = b3();
    let g = a.group().clone();
    for w in 0..a.dim() as u32 {
        let p = H::basis(&a, w).mul(&H::basis_inverse(&a, w)).unwrap();
        assert_eq!(p, H::one(&a));
    }
    let s = g.rmul(0, 1);
    let ts = H::basis(&a, s);
    assert_eq!(H::basis_inverse(&a, s), ts.sub(&H::scalar(&a, Scalar::alpha())).unwrap());
    assert_eq!(ts.to_inverse_basis(), vec![(0, Scalar::alpha()), (s, Scalar::one())]);
    assert_eq!(H::one(&a).tau(), Scalar::one());
    assert_eq!(ts.tau(), Scalar::alpha());
    assert!(H::basis_inverse(&a, s).tau().is_zero());
    assert_eq!(H::one(&a).to_inverse_basis(), vec![(0, Scalar::one())]);
    let b2 = alg(CoxeterContext::b(2), ParamMode::Unequal);
    for w in 0..b2.dim() as u32 {
        assert_eq!(H::basis_inverse(&b2, w).to_inverse_basis(), vec![(w, Scalar::one())]);
    }
}

#[test]
fn bar_examples() {
    let a = b3();
    assert_eq!(H::one(&a).bar(), H::one(&a));
    let t1 = H::generator(&a, 1).unwrap();
    assert_eq!(t1.bar(), t1.sub(&H::scalar(&a, Scalar::alpha())).unwrap());
    let t0 = H::generator(&a, 0).unwrap();
    assert_eq!(t0.bar(), t0.sub(&H::scalar(&a, Scalar::alpha0())).unwrap());
}

#[test]
fn anti_involution_examples() {
    let a = alg(CoxeterContext::a(3), ParamMode::Equal);
    assert_eq!(H::one(&a).anti_i(), H::one(&a));
    let t12 = H::word(&a, &[1, 2]).unwrap();
    assert_eq!(t12.anti_i(), H::word(&a, &[2, 1]).unwrap());
}

#[test]
fn pairing_examples() {
    let a = b3();
    let ainv = Scalar::a().inv().unwrap();
    assert_eq!(H::scalar(&a, ainv).pairing(&H::one(&a)).unwrap(), Scalar::a());
    let t1 = H::generator(&a, 1).unwrap();
    assert_eq!(H::one(&a).pairing(&t1).unwrap(), Scalar::alpha());
}

#[test]
fn orthogonality_small() {
    for a in [alg(CoxeterContext::b(2), ParamMode::Unequal), alg(CoxeterContext::d(3), ParamMode::Equal)] {
        let g = a.group().clone();
        for w1 in 0..a.dim() as u32 {
            let row = H::basis(&a, w1);
            for w2 in 0..a.dim() as u32 {
                let p = row.pairing(&H::basis_inverse(&a, w2)).unwrap();
                let expect = if w1 == g.inverse(w2) { Scalar::one() } else { Scalar::zero() };
                assert_eq!(p, expect);
            }
        }
    }
}

#[test]
fn pairing_row_matches_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = b3();
    let z = rand_elem(&mut rng, &a, 4);
    let row = z.pairing_row(None);
    for w in 0..a.dim() as u32 {
        assert_eq!(row[w as usize], z.pairing(&H::basis(&a, w)).unwrap());
    }
}

#[test]
fn inverse_basis_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in algebras() {
        for _ in 0..3 {
            let h = rand_elem(&mut rng, &a, 5);
            let elim = h.to_inverse_basis();
            assert_eq!(elim, h.inverse_basis_via_bar());
            assert_eq!(H::from_inverse_basis(&a, &elim), h);
            let tau = elim.iter().find(|t| t.0 == 0).map(|t| t.1.clone()).unwrap_or_else(Scalar::zero);
            assert_eq!(tau, h.tau());
        }
    }
}

#[test]
fn centrality_examples() {
    let a = alg(CoxeterContext::a(3), ParamMode::Equal);
    assert!(H::one(&a).is_central());
    assert!(!H::generator(&a, 1).unwrap().is_central());
}

#[test]
fn embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let small = alg(CoxeterContext::b(2), ParamMode::Unequal);
    let big = b3();
    assert_eq!(H::one(&small).embed(&big).unwrap(), H::one(&big));
    for _ in 0..5 {
        let x = rand_elem(&mut rng, &small, 3);
        let y = rand_elem(&mut rng, &small, 3);
        let lhs = x.mul(&y).unwrap().embed(&big).unwrap();
        let rhs = x.embed(&big).unwrap().mul(&y.embed(&big).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.in_parabolic(2));
    }
    let rank0 = alg(CoxeterContext::b(0), ParamMode::Unequal);
    assert_eq!(H::one(&rank0).embed(&big).unwrap(), H::one(&big));
    assert!(H::one(&small).embed(&alg(CoxeterContext::b(3), ParamMode::Equal)).is_err());
}

#[test]
fn d_into_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let d = alg(CoxeterContext::d(3), ParamMode::Equal);
    let b = HeckeAlgebra::<Scalar>::v0_one(3).unwrap();
    let t1 = H::generator(&d, 1).unwrap();
    assert_eq!(t1.embed_d_to_b(&b).unwrap(), H::generator(&b, 1).unwrap());
    let tp = H::generator(&d, 0).unwrap();
    let img = tp.embed_d_to_b(&b).unwrap();
    assert_eq!(img, H::word(&b, &[0, 1, 0]).unwrap());
    let sq = tp.mul(&tp).unwrap();
    assert_eq!(img.mul(&img).unwrap(), sq.embed_d_to_b(&b).unwrap());
    for _ in 0..5 {
        let x = rand_elem(&mut rng, &d, 3);
        let y = rand_elem(&mut rng, &d, 3);
        let lhs = x.mul(&y).unwrap().embed_d_to_b(&b).unwrap();
        let rhs = x.embed_d_to_b(&b).unwrap().mul(&y.embed_d_to_b(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(tp.embed_d_to_b(&b3()).is_err());
}

#[test]
fn v0_one_is_specialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let generic = b3();
    let one = HeckeAlgebra::<Scalar>::v0_one(3).unwrap();
    let asg = Assignment::new().set(Var::V0, 1);
    for _ in 0..5 {
        let x = random_element(&mut rng, &generic, 3, crate::sample::random_v_scalar);
        let y = random_element(&mut rng, &generic, 3, crate::sample::random_v_scalar);
        let spec = x.mul(&y).unwrap().map_coeffs(&one, |c| c.specialize(&asg)).unwrap();
        let xs = x.map_coeffs(&one, |c| c.specialize(&asg)).unwrap();
        let ys = y.map_coeffs(&one, |c| c.specialize(&asg)).unwrap();
        assert_eq!(xs.mul(&ys).unwrap(), spec);
    }
    let t0 = H::generator(&one, 0).unwrap();
    assert_eq!(t0.mul(&t0).unwrap(), H::one(&one));
}

#[test]
fn zip_agrees_with_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let point = ZipPoint::random(&mut rng, false);
    let exact = b3();
    let zip = HeckeAlgebra::at_point(exact.ctx(), ParamMode::Unequal, &point).unwrap();
    for _ in 0..5 {
        let x = rand_elem(&mut rng, &exact, 4);
        let y = rand_elem(&mut rng, &exact, 4);
        let ev = |h: &H| h.map_coeffs(&zip, |c| c.eval_zip(&point)).unwrap();
        assert_eq!(ev(&x.mul(&y).unwrap()), ev(&x).mul(&ev(&y)).unwrap());
        assert_eq!(ev(&x.bar()), ev(&x).bar());
        assert_eq!(x.pairing(&y).unwrap().eval_zip(&point).unwrap(), ev(&x).pairing(&ev(&y)).unwrap());
    }
}

#[test]
fn parabolic_corollary_b3() {
    // x, y in the level-2 parabolic, z = t_w (resp. t_w^-1) with w outside
    let a = b3();
    let g = a.group().clone();
    let inside: Vec<u32> = (0..a.dim() as u32).filter(|&w| g.in_parabolic(w, 2)).collect();
    let outside: Vec<u32> = (0..a.dim() as u32).filter(|&w| !g.in_parabolic(w, 2)).collect();
    for &x in &inside {
        let hx = H::basis(&a, x);
        for &w in &outside {
            let z = H::basis(&a, w);
            let zi = H::basis_inverse(&a, w);
            let xz = hx.mul(&z).unwrap();
            let zx = z.mul(&hx).unwrap();
            let row_xz = xz.pairing_row(Some(&inside));
            let row_zx = zx.pairing_row(Some(&inside));
            for &y in &inside {
                assert!(row_xz[y as usize].is_zero());
                assert!(row_zx[y as usize].is_zero());
                let hy = H::basis(&a, y);
                assert!(hx.pairing(&hy.mul(&zi).unwrap()).unwrap().is_zero());
                assert!(hx.pairing(&zi.mul(&hy).unwrap()).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn text_and_records_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for a in algebras() {
        let h = rand_elem(&mut rng, &a, 4);
        let back = parse_element(&a, &h.to_string()).unwrap();
        assert_eq!(back, h, "{h}");
        let rec = h.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let rec2: ElementRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(H::from_record(&a, &rec2).unwrap(), h);
    }
    let d = alg(CoxeterContext::d(3), ParamMode::Equal);
    let h = parse_element(&d, "T[1p,2] - 2*T[]").unwrap();
    assert_eq!(h.to_string(), "-2 + T[1p,2]");
    let a3 = alg(CoxeterContext::a(3), ParamMode::Equal);
    assert_eq!(parse_element(&a3, "tau(T[])").unwrap().to_string(), "1");
    assert_eq!(parse_element(&a3, "pair(T[1], inv(T[1]))").unwrap().to_string(), "1");
    assert_eq!(parse_element(&a3, "T[1]^-1").unwrap().to_string(), "(-v + v^-1) + T[1]");
    assert!(matches!(parse_element(&a3, "T[3]"), Err(Error::Parse { pos: 2, .. })));
    assert!(matches!(parse_element(&a3, "T[1] +"), Err(Error::Parse { pos: 6, .. })));
    assert!(parse_element(&a3, "T[1] / T[2]").is_err());
}

#[test]
fn mode_checks() {
    assert!(HeckeAlgebra::<Scalar>::symbolic(CoxeterContext::d(3), ParamMode::Unequal).is_err());
    let x = H::one(&b3());
    let y = H::one(&alg(CoxeterContext::b(3), ParamMode::Equal));
    assert!(matches!(x.mul(&y), Err(Error::ContextMismatch(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &algebras()[which];
        let x = rand_elem(&mut rng, a, 3);
        let y = rand_elem(&mut rng, a, 3);
        let z = rand_elem(&mut rng, a, 3);
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn bar_is_involutive_ring_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = b3();
        let x = rand_elem(&mut rng, &a, 4);
        let y = rand_elem(&mut rng, &a, 3);
        prop_assert_eq!(x.bar().bar(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().bar(), x.bar().mul(&y.bar()).unwrap());
    }

    #[test]
    fn trace_and_adjunction(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &algebras()[which];
        let h1 = rand_elem(&mut rng, a, 3);
        let h2 = rand_elem(&mut rng, a, 3);
        let h3 = rand_elem(&mut rng, a, 3);
        prop_assert_eq!(h1.mul(&h2).unwrap().tau(), h2.mul(&h1).unwrap().tau());
        prop_assert_eq!(h1.mul(&h2).unwrap().anti_i(), h2.anti_i().mul(&h1.anti_i()).unwrap());
        let lhs = h1.mul(&h2).unwrap().pairing(&h3).unwrap();
        let mid = h1.pairing(&h3.mul(&h2.bar().anti_i()).unwrap()).unwrap();
        let rhs = h2.pairing(&h1.bar().anti_i().mul(&h3).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &mid);
        prop_assert_eq!(&lhs, &rhs);
    }
}

