mod common;

use common::q;
use gradus::poly::{Family, PolyRing, Polynomial};
use gradus::random::{random_poly, stream};
use gradus::{PrimeField, Rationals};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// `G(d/dx) F` by repeated differentiation, one dual term at a time.
fn apply_operator(ring: &PolyRing<Rationals>, f: &Polynomial<BigRational>, g: &Polynomial<BigRational>) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in g.terms() {
        let mut d = f.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                d = ring.partial(&d, i).unwrap();
            }
        }
        let value = ring.evaluate(&d, &vec![q(0, 1); ring.nvars()]).unwrap();
        acc += c * value;
    }
    acc
}

#[test]
fn pairing_examples() {
    let r = PolyRing::new(Rationals, 5);
    let x = |s: &str| r.parse(s, Family::Primal, None).unwrap();
    let y = |s: &str| r.parse(s, Family::Dual, None).unwrap();
    assert_eq!(r.polar_pair(&x("x0^3"), &y("y0^3")).unwrap(), q(6, 1));
    assert_eq!(r.polar_pair(&x("x0^2*x1"), &y("y0*y1^2")).unwrap(), q(0, 1));
    assert!(r.polar_pair(&y("y0"), &y("y0")).is_err());
}

#[test]
fn parse_examples() {
    let r = PolyRing::new(Rationals, 5);
    let p = r.parse("x0*x1*x2 - 2*x3^2*x4", Family::Primal, Some(3)).unwrap();
    assert_eq!(p.num_terms(), 2);
    assert_eq!(r.format(&p), "x0*x1*x2 + -2*x3^2*x4");
    assert!(r.parse("x0^2 + x1^3", Family::Primal, Some(3)).is_err());
    let d = r.partial(&r.parse("x0^3", Family::Primal, None).unwrap(), 0).unwrap();
    assert_eq!(r.format(&d), "3*x0^2");
    let e = r.partial(&r.parse("x0^3", Family::Primal, None).unwrap(), 1).unwrap();
    assert!(e.is_zero());
    let a = r.parse("x0 + x1", Family::Primal, None).unwrap();
    let b = r.parse("x0 - x1", Family::Primal, None).unwrap();
    assert_eq!(r.format(&r.mul(&a, &b)), "x0^2 + -1*x1^2");
}

#[test]
fn unit_bound_draws_signs() {
    let r = PolyRing::new(Rationals, 5);
    let p = random_poly(&r, &mut stream(3), 4, 1);
    for (_, c) in p.terms() {
        assert!(*c == q(1, 1) || *c == q(-1, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pairing_matches_differential_operator(seed in any::<u64>(), n in 2usize..5, k in 1u32..6) {
        let r = PolyRing::new(Rationals, n);
        let mut rng = stream(seed);
        let f = r.random_homogeneous(&mut rng, k, 5, Family::Primal);
        let g = r.random_homogeneous(&mut rng, k, 5, Family::Dual);
        prop_assert_eq!(r.polar_pair(&f, &g).unwrap(), apply_operator(&r, &f, &g));
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), n in 1usize..5, a in 0u32..4, b in 0u32..4) {
        let r = PolyRing::new(Rationals, n);
        let mut rng = stream(seed);
        let p = r.random_homogeneous(&mut rng, a, 6, Family::Primal);
        let s = r.random_homogeneous(&mut rng, b, 6, Family::Primal);
        for i in 0..n {
            let lhs = r.partial(&r.mul(&p, &s), i).unwrap();
            let rhs = r.add(
                &r.mul(&r.partial(&p, i).unwrap(), &s),
                &r.mul(&p, &r.partial(&s, i).unwrap()),
            );
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>(), n in 1usize..6, k in 0u32..5, dual in any::<bool>()) {
        let fam = if dual { Family::Dual } else { Family::Primal };
        let r = PolyRing::new(Rationals, n);
        let mut rng = stream(seed);
        let a = r.random_homogeneous(&mut rng, k, 7, fam);
        let b = r.random_homogeneous(&mut rng, k, 3, fam);
        // Non-integer coefficients too.
        let p = r.add(&a, &r.scale(&q(1, 3), &b));
        let text = r.format(&p);
        let back = r.parse(&text, fam, None).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(r.format(&back), text);

        let fp = PolyRing::new(PrimeField::new(10007).unwrap(), n);
        let c = fp.random_homogeneous(&mut rng, k, 10, fam);
        let t = fp.format(&c);
        prop_assert_eq!(fp.parse(&t, fam, None).unwrap(), c);
    }
}
