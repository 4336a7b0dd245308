//! Properties of matrices, words, Ford data and the normal form.

use fourps_core::algorithm::build_ford_certificate;
use fourps_core::canonical::{normalize, ParabolicTriple};
use fourps_core::ford::{ford_data, jorgensen_sum, verify_pingpong};
use fourps_core::moebius::{evaluate_word, nielsen_move, Gen, IsometryClass, Matrix, NielsenMove, ProjectiveMap, Word};
use fourps_core::oracle::{enumerate_words, jorgensen_scan};
use fourps_core::{Rational, Scalar};

use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo * 12..=hi * 12, 1..=12i64).prop_map(|(n, d)| q(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1..=48i64, 1..=24i64).prop_map(|(n, d)| q(n, d))
}

fn sl2() -> impl Strategy<Value = Matrix<Rational>> {
    (rational(-3, 3), rational(-3, 3), rational(-3, 3)).prop_filter("a != 0", |(a, _, _)| *a != q(0, 1)).prop_map(
        |(a, b, c)| {
            let d = (Rational::one() + b.clone() * c.clone()) / a.clone();
            Matrix::new(a, b, c, d).unwrap()
        },
    )
}

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..3, prop_oneof![Just(-1i64), Just(1)]), 0..8)
        .prop_map(|v| Word::from_syllables(v.into_iter().map(|(g, e)| (Gen::from_index(g).unwrap(), e))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_stay_unimodular(g in sl2(), h in sl2()) {
        prop_assert_eq!(g.mul(&h).det(), q(1, 1));
        prop_assert_eq!(g.inverse().mul(&g), Matrix::identity());
    }

    #[test]
    fn conjugation_keeps_the_class(g in sl2(), x in sl2()) {
        let c = g.conjugate(&x);
        prop_assert_eq!(c.trace(), g.trace());
        prop_assert_eq!(c.classify().unwrap(), g.classify().unwrap());
    }

    #[test]
    fn translation_shifts_trace(g in sl2(), n in -50i64..=50) {
        let m = Matrix::translation(q(2 * n, 1)).mul(&g);
        prop_assert_eq!(m.trace(), g.trace() + q(2 * n, 1) * g.c().clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(), v in word(), x in positive(), y in positive(), z in positive()) {
        let gens = ParabolicTriple::new(x, y, z).unwrap().matrices();
        let uv = evaluate_word(&u.mul(&v), &gens);
        prop_assert_eq!(uv, evaluate_word(&u, &gens).mul(&evaluate_word(&v, &gens)));
        prop_assert_eq!(evaluate_word(&u.inverse(), &gens), evaluate_word(&u, &gens).inverse());
    }

    #[test]
    fn word_text_round_trips(u in word()) {
        prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
    }

    #[test]
    fn nielsen_moves_commute_with_evaluation(i in 0usize..3, j in 0usize..3, x in positive(), y in positive(), z in positive()) {
        prop_assume!(i != j);
        let (gi, gj) = (Gen::from_index(i).unwrap(), Gen::from_index(j).unwrap());
        let gens = ParabolicTriple::new(x, y, z).unwrap().matrices();
        let words = Gen::ALL.map(Word::letter);
        for mv in [NielsenMove::Switch(gi, gj), NielsenMove::Invert(gi), NielsenMove::Twist(gi, gj)] {
            let moved = nielsen_move(&gens, mv).unwrap();
            let moved_words = nielsen_move(&words, mv).unwrap();
            for k in 0..3 {
                prop_assert_eq!(&moved[k], &evaluate_word(&moved_words[k], &gens));
            }
        }
    }

    #[test]
    fn ford_distances_differ_by_two_strengths(g in sl2()) {
        prop_assume!(*g.c() != q(0, 1));
        let f = ford_data(&g).unwrap();
        prop_assert_eq!(f.outer_distance.clone() - f.inner_distance.clone(), q(2, 1) * f.strength.clone());
        prop_assert_eq!(f.isometric_circle.width(), f.strength.clone());
        prop_assert_eq!(g.apply_finite(&f.isometric_circle.lo().clone()).unwrap().finite().cloned().unwrap_or_default(),
            f.image_circle.hi().clone());
    }

    #[test]
    fn jorgensen_sum_is_conjugation_invariant(g in sl2(), h in sl2(), x in sl2()) {
        prop_assert_eq!(jorgensen_sum(&g, &h), jorgensen_sum(&g.conjugate(&x), &h.conjugate(&x)));
    }

    #[test]
    fn normal_form_round_trip(x in positive(), y in positive(), z in positive(), m in sl2(), flip in any::<bool>()) {
        let t = ParabolicTriple::new(x, y, z).unwrap();
        let [a, b, c, d] = m.entries().map(|v| v.clone());
        let map = if flip { ProjectiveMap::new(-a, -b, c, d) } else { ProjectiveMap::new(a, b, c, d) }.unwrap();
        let raw = t.matrices().map(|g| map.conjugate(&g));
        let n = normalize(&raw).unwrap();
        prop_assert_eq!(&n.triple, &t);
        for g in Gen::ALL {
            let back = n.conjugator.conjugate(&evaluate_word(&n.generator_words()[g.index()], &raw));
            prop_assert!(back.psl_eq(&t.matrices()[g.index()]).unwrap());
        }
    }

    #[test]
    fn construction_certificates_verify(x in rational(0, 2), y in positive(), z in positive()) {
        let t = ParabolicTriple::new(x.clone().abs_value() + q(1, 100), y, z).unwrap();
        if let Ok(fc) = build_ford_certificate(&t) {
            prop_assert!(verify_pingpong(&fc.certificate).unwrap());
            let [a, b, c] = t.matrices();
            prop_assert!(a.mul(&b).mul(&c).trace() >= q(2, 1));
        }
    }
}

#[test]
fn parabolic_generators_have_the_expected_shape() {
    let t = ParabolicTriple::from_ratios((1, 1), (1, 4), (1, 4)).unwrap();
    for m in t.matrices() {
        assert_eq!(m.classify().unwrap(), IsometryClass::Parabolic);
    }
    let [_, b, c] = t.matrices();
    let bc = b.mul(&c);
    assert_eq!(bc.trace(), q(-62, 1));
    assert_eq!(bc.c().clone(), q(48, 1));
    assert_eq!(ford_data(&bc).unwrap().outer_distance, q(4, 3));
}

#[test]
fn pingpong_certificate_survives_oracles() {
    // A valid certificate implies no short elliptic words and no Jørgensen violation.
    for (x, y, z) in [((1, 1), (1, 4), (1, 4)), ((1, 1), (1, 3), (1, 5)), ((1, 1), (1, 2), (1, 2))] {
        let t = ParabolicTriple::from_ratios(x, y, z).unwrap();
        let fc = build_ford_certificate(&t).unwrap();
        assert!(verify_pingpong(&fc.certificate).unwrap());
        let words = enumerate_words(&t.matrices(), 7).unwrap();
        assert_eq!((words.elliptic_count, words.relation_count), (0, 0), "{t}");
        assert_eq!(jorgensen_scan(&t.matrices(), 5).unwrap().jorgensen_count, 0, "{t}");
    }
}
