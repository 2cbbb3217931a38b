use proptest::prelude::*;

use qdiff::algebra::Algebra;
use qdiff::catalog::{aiii, fq};
use qdiff::dual::{star_poly, PolyRep, RepScheme};
use qdiff::qsym::q_symmetrize;
use qdiff::{QCoeff, Rational, TensorElement, Word};

fn laurent() -> impl Strategy<Value = QCoeff> {
    prop::collection::vec((-3i64..=3, -4i64..=4, 1i64..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(QCoeff::zero(), |acc, (e, n, d)| {
            &acc + &QCoeff::monomial(Rational::new(n, d), e)
        })
    })
}

/// Laurent polynomials and quotients of them.
fn coeff() -> impl Strategy<Value = QCoeff> {
    (laurent(), laurent(), any::<bool>()).prop_map(|(a, b, div)| {
        if div && !b.is_zero() {
            a.checked_div(&b).unwrap()
        } else {
            a
        }
    })
}

fn tensor(n_gens: u8, max_len: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(1..=n_gens, 0..=max_len), laurent()), 0..4).prop_map(|terms| {
        let mut t = TensorElement::zero();
        for (w, c) in terms {
            t.add_term(Word::new(&w), &c);
        }
        t
    })
}

fn homogeneous(n_gens: u8, len: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(1..=n_gens, len), laurent()), 1..4).prop_map(|terms| {
        let mut t = TensorElement::zero();
        for (w, c) in terms {
            t.add_term(Word::new(&w), &c);
        }
        t
    })
}

fn poly(n_vars: usize, max_deg: u32) -> impl Strategy<Value = PolyRep> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n_vars), laurent()), 0..3).prop_map(move |terms| {
        let mut p = PolyRep::zero(n_vars);
        for (e, c) in terms {
            let total: u32 = e.iter().sum();
            if total <= max_deg {
                p.add_term(e, &c);
            }
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_field_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn coefficient_text_round_trip(a in coeff()) {
        let back: QCoeff = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn invert_q_is_an_involutive_homomorphism(a in coeff(), b in coeff()) {
        prop_assert_eq!(a.invert_q().invert_q(), a.clone());
        prop_assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
        prop_assert_eq!((&a + &b).invert_q(), &a.invert_q() + &b.invert_q());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), n in 1i64..5, d in 1i64..4) {
        let q = Rational::new(n, d);
        let (x, y) = (a.eval(&q).unwrap(), b.eval(&q).unwrap());
        prop_assert_eq!((&a * &b).eval(&q).unwrap(), &x * &y);
        prop_assert_eq!((&a + &b).eval(&q).unwrap(), &x + &y);
    }

    #[test]
    fn tensor_text_round_trip(t in tensor(4, 4)) {
        let back: TensorElement = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn poly_text_round_trip(p in poly(4, 3)) {
        prop_assert_eq!(PolyRep::parse(&p.to_string(), 4).unwrap(), p);
    }

    #[test]
    fn normal_form_is_sorted_idempotent_and_linear(s in tensor(4, 4), t in tensor(4, 4), c in laurent()) {
        for spec in [aiii(2), fq(2)] {
            let alg = Algebra::new(spec).unwrap();
            let ns = alg.normal_form(&s);
            prop_assert!(ns.iter().all(|(w, _)| w.is_sorted()));
            prop_assert_eq!(alg.normal_form(&ns), ns.clone());
            let lhs = alg.normal_form(&s.add(&t.scale(&c)));
            prop_assert_eq!(lhs, ns.add(&alg.normal_form(&t).scale(&c)));
        }
    }

    #[test]
    fn normal_form_kills_the_ideal(pre in prop::collection::vec(1u8..=4, 0..2), suf in prop::collection::vec(1u8..=4, 0..2), k in 2usize..=4, l in 1usize..=3) {
        prop_assume!(l < k);
        let alg = Algebra::new(aiii(2)).unwrap();
        let u = TensorElement::from_word(Word::new(&pre))
            .concat(&alg.relation_element(k, l))
            .concat(&TensorElement::from_word(Word::new(&suf)));
        prop_assert!(alg.normal_form(&u).is_zero());
        prop_assert!(q_symmetrize(&alg, &u).unwrap().is_zero());
    }

    #[test]
    fn projection_is_idempotent_and_preserves_normal_form(t in homogeneous(4, 3)) {
        let alg = Algebra::new(aiii(2)).unwrap();
        let p = q_symmetrize(&alg, &t).unwrap();
        prop_assert_eq!(q_symmetrize(&alg, &p).unwrap(), p.clone());
        // P only changes t by an element of the ideal
        prop_assert_eq!(alg.normal_form(&p), alg.normal_form(&t));
    }

    #[test]
    fn star_product_has_unit_and_is_bilinear(f in poly(4, 2), g in poly(4, 2), c in laurent()) {
        let alg = Algebra::new(aiii(2)).unwrap();
        let one = PolyRep::constant(4, QCoeff::one());
        let star = |a: &PolyRep, b: &PolyRep| star_poly(&alg, a, b, RepScheme::F2).unwrap();
        prop_assert_eq!(star(&one, &f), f.clone());
        prop_assert_eq!(star(&f, &one), f.clone());
        let h = PolyRep::var(4, 2);
        prop_assert_eq!(star(&f.add(&g.scale(&c)), &h), star(&f, &h).add(&star(&g, &h).scale(&c)));
    }
}
