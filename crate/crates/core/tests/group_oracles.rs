mod common;

use common::*;
use linkhom::group::{
    canonical_form, coorientable, coorientable_bruteforce, pair_canonical, reversing_commutant, GroupElement,
    GroupId,
};
use linkhom::linking::LinkingValue;
use proptest::prelude::*;

fn k(r: i64, s: i64) -> GroupElement {
    GroupElement::klein(r, s)
}

fn small() -> impl Strategy<Value = GroupElement> {
    (-6i64..=6, -6i64..=6).prop_map(|(r, s)| k(r, s))
}

#[test]
fn affine_examples() {
    assert_eq!(eval_word_affine(&parse_word("aa")), Affine { sx: 1, tx: 0, ty: 2 });
    assert_eq!(eval_word_affine(&[]), Affine::ID);
    assert_eq!(eval_word_affine(&parse_word("bab")), eval_word_affine(&parse_word("a")));
}

#[test]
fn rewrite_examples() {
    assert_eq!(rewrite_normal_form(&parse_word("ba")), k(1, -1));
    assert_eq!(rewrite_normal_form(&[]), k(0, 0));
    assert_eq!(rewrite_normal_form(&parse_word("bab")), k(1, 0));
}

#[test]
fn affine_representation_is_faithful_on_a_grid() {
    let mut seen = std::collections::HashMap::new();
    for r in -6..=6 {
        for s in -6..=6 {
            assert!(seen.insert(affine_of(&k(r, s)), (r, s)).is_none());
        }
    }
}

#[test]
fn centralizer_of_b_is_even_r() {
    let b = k(0, 1);
    for r in -6..=6 {
        for s in -6..=6 {
            assert_eq!(k(r, s).commutes(&b).unwrap(), r % 2 == 0, "({r},{s})");
        }
    }
}

#[test]
fn closed_form_matches_bruteforce_grid() {
    for r1 in -4..=4 {
        for s1 in -4..=4 {
            for r2 in -4..=4 {
                for s2 in -4..=4 {
                    let (a, b) = (k(r1, s1), k(r2, s2));
                    assert_eq!(coorientable(&a, &b).unwrap(), coorientable_bruteforce(&a, &b, 10).unwrap());
                }
            }
        }
    }
}

#[test]
fn z2_pairs_are_never_coorientable() {
    for x in [false, true] {
        for y in [false, true] {
            let (a, b) = (GroupElement::Z2 { bit: x }, GroupElement::Z2 { bit: y });
            assert!(!coorientable(&a, &b).unwrap());
            assert!(!coorientable_bruteforce(&a, &b, 1).unwrap());
        }
    }
}

#[test]
fn torus_pairs_are_coorientable() {
    let (a, b) = (GroupElement::torus(1, 2), GroupElement::torus(0, 1));
    assert!(coorientable(&a, &b).unwrap());
    assert_eq!(GroupId::Torus.identity(), GroupElement::torus(0, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn triple_agreement(w in word_strategy(12)) {
        let rewritten = rewrite_normal_form(&w);
        prop_assert_eq!(rewritten, letter_product(&w));
        prop_assert_eq!(affine_of(&rewritten), eval_word_affine(&w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(x in small(), y in small(), z in small()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert!(x.mul(&x.inverse()).unwrap().is_identity());
        prop_assert_eq!(x.orientation_character() * y.orientation_character(), x.mul(&y).unwrap().orientation_character());
    }

    #[test]
    fn free_class_is_conjugation_invariant(x in small(), c in small()) {
        prop_assert_eq!(x.conjugate(&c).unwrap().free_class_canonical(), x.free_class_canonical());
    }

    #[test]
    fn canonical_pair_matches_orbit_search(a in small(), b in small(), c in small()) {
        let (class, conj) = canonical_form(&a, &b).unwrap();
        let ((oa, ob), _) = orbit_min(&a, &b, 40);
        prop_assert_eq!((class.alpha, class.beta), (oa, ob));
        prop_assert_eq!(a.conjugate(&conj).unwrap(), class.alpha);
        prop_assert_eq!(b.conjugate(&conj).unwrap(), class.beta);
        prop_assert_eq!(class.coorientable, !orbit_torsion(&a, &b, 40));
        let moved = pair_canonical(&a.conjugate(&c).unwrap(), &b.conjugate(&c).unwrap()).unwrap();
        prop_assert_eq!(moved, class);
    }

    #[test]
    fn witness_commutes_and_reverses(a in small(), b in small()) {
        if let Some(w) = reversing_commutant(&a, &b).unwrap() {
            prop_assert!(w.reverses_orientation());
            prop_assert!(w.commutes(&a).unwrap() && w.commutes(&b).unwrap());
        }
    }

    #[test]
    fn twisted_relation(a in small(), b in small(), c in small(), n in -5i64..=5) {
        let base = LinkingValue::singleton(&a, &b, n).unwrap();
        let moved = LinkingValue::singleton(
            &a.conjugate(&c).unwrap(),
            &b.conjugate(&c).unwrap(),
            n * i64::from(c.orientation_character()),
        ).unwrap();
        prop_assert_eq!(&moved, &base);
        let mut brute = BruteValue::new();
        brute_add(&mut brute, &a, &b, n, 40);
        prop_assert_eq!(to_brute(&base), brute);
        let doubled = base.add(&base).unwrap();
        if !coorientable(&a, &b).unwrap() {
            prop_assert!(doubled.is_zero());
            prop_assert_eq!(base.neg(), base);
        } else {
            prop_assert_eq!(doubled, LinkingValue::singleton(&a, &b, 2 * n).unwrap());
        }
    }
}
