mod oracle;

use std::collections::BTreeMap;

use pbw_core::coalg::{
    check_all_powers, check_coassoc_counit, check_stability, check_triangular, is_lie_polynomial, Antipode,
    Comultiplication,
};
use pbw_core::poly::standard_bracket;
use pbw_core::structure::{extract_ihoe, hilbert_and_gk, recover_lie_generators, Presentation, Quotient};
use pbw_core::word::{enumerate_lyndon, words_of_degree};
use pbw_core::{Alphabet, Field, Polynomial, TensorElement, TruncatedGB};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn poly(a: &Alphabet, terms: &[(i64, &str)]) -> Polynomial {
    Polynomial::from_terms(Q, terms.iter().map(|(c, w)| (a.parse_word(w).unwrap(), Q.from_i64(*c))))
}

fn tensor(a: &Alphabet, terms: &[(i64, &str, &str)]) -> TensorElement {
    TensorElement::from_terms(
        Q,
        terms
            .iter()
            .map(|(c, l, r)| ((a.parse_word(l).unwrap(), a.parse_word(r).unwrap()), Q.from_i64(*c))),
    )
}

/// Homogeneous random combination of words of length `n` on `a`.
fn random_poly(a: &Alphabet, n: u32, coeffs: &[i64]) -> Polynomial {
    Polynomial::from_terms(
        Q,
        words_of_degree(a, n)
            .into_iter()
            .zip(coeffs)
            .map(|(w, c)| (w, Q.from_i64(*c))),
    )
}

#[test]
fn lie_test_agrees_with_dynkin_on_brackets() {
    let a = Alphabet::uniform(2);
    for u in enumerate_lyndon(&a, 6) {
        let b = standard_bracket(&u, Q);
        assert!(is_lie_polynomial(&a, &b).unwrap());
        let n = Q.from_i64(u.len() as i64);
        assert_eq!(oracle::dynkin(&a, &b), b.scale(&n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lie_test_agrees_with_dynkin(coeffs in prop::collection::vec(-2i64..3, 16), n in 1u32..5, lie in any::<bool>()) {
        // Dynkin–Specht–Wever: a homogeneous f of length n is Lie iff θ(f) = n·f
        let a = Alphabet::uniform(2);
        let f = if lie {
            let mut f = Polynomial::zero(Q);
            for (u, c) in enumerate_lyndon(&a, n).iter().filter(|u| u.degree() == n).zip(&coeffs) {
                f.add_scaled(&standard_bracket(u, Q), &Q.from_i64(*c));
            }
            f
        } else {
            random_poly(&a, n, &coeffs)
        };
        let by_dynkin = oracle::dynkin(&a, &f) == f.scale(&Q.from_i64(n as i64));
        prop_assert_eq!(is_lie_polynomial(&a, &f).unwrap(), by_dynkin);
        if lie {
            prop_assert!(by_dynkin);
        }
    }

    #[test]
    fn lie_relations_give_stable_ideals(coeffs in prop::collection::vec(-2i64..3, 2), c4 in prop::collection::vec(-2i64..3, 3)) {
        let a = Alphabet::uniform(2);
        let lyndon = enumerate_lyndon(&a, 4);
        let mut rels = Vec::new();
        for (d, cs) in [(3u32, &coeffs), (4, &c4)] {
            let mut f = Polynomial::zero(Q);
            for (u, c) in lyndon.iter().filter(|u| u.degree() == d).zip(cs.iter()) {
                f.add_scaled(&standard_bracket(u, Q), &Q.from_i64(*c));
            }
            if !f.is_zero() {
                rels.push(f);
            }
        }
        let p = Presentation::new(a.clone(), Q, rels, None, 6).unwrap();
        let q = Quotient::new(p).unwrap();
        let st = check_stability(q.comultiplication(), q.gb()).unwrap();
        prop_assert!(st.is_stable());
        let gens = recover_lie_generators(&q).unwrap();
        prop_assert!(gens.all_lie());
        // the recovered generators present the same quotient
        let regen: Vec<Polynomial> = gens.generators.iter().map(|g| g.polynomial.clone()).collect();
        let again = TruncatedGB::compute(&a, Q, &regen, 6).unwrap();
        prop_assert_eq!(again.elements(), q.gb().elements());
    }

    #[test]
    fn power_comultiplication_for_graded_triangular(c in prop::collection::vec(-2i64..3, 4)) {
        let a = Alphabet::new(&[("x", 1), ("y", 1), ("z", 2)]).unwrap();
        let z = a.letter("z").unwrap();
        let img = tensor(&a, &[(1, "", "z"), (1, "z", ""), (c[0], "x", "y"), (c[1], "y", "x"), (c[2], "x", "x"), (c[3], "y", "y")]);
        let d = Comultiplication::with_primitive_defaults(&a, Q, BTreeMap::from([(z, img)])).unwrap();
        let tri = check_triangular(&d, &a);
        prop_assert!(tri.is_graded_triangular());
        for r in check_all_powers(&d, &a, 4).unwrap() {
            prop_assert!(r.holds(), "{} ^ {}", a.render(&r.word), r.power);
        }
    }

    #[test]
    fn antipode_law_on_free_algebra(c in prop::collection::vec(-2i64..3, 4)) {
        let a = Alphabet::new(&[("x", 1), ("y", 1), ("z", 2)]).unwrap();
        let z = a.letter("z").unwrap();
        let img = tensor(&a, &[(1, "", "z"), (1, "z", ""), (c[0], "x", "y"), (c[1], "y", "x"), (c[2], "x", "x"), (c[3], "y", "y")]);
        let d = Comultiplication::with_primitive_defaults(&a, Q, BTreeMap::from([(z, img)])).unwrap();
        let free = TruncatedGB::free(&a, Q, 4);
        prop_assert!(check_coassoc_counit(&d, &free, 4).unwrap().holds());
        let s = Antipode::compute(&d, &a).unwrap();
        for n in 1..=4 {
            for w in words_of_degree(&a, n) {
                let dw = d.apply(&Polynomial::word(Q, w.clone()));
                let left = dw.map_legs(|l| s.apply(&Polynomial::word(Q, l.clone())), |r| Polynomial::word(Q, r.clone()));
                let right = dw.map_legs(|l| Polynomial::word(Q, l.clone()), |r| s.apply(&Polynomial::word(Q, r.clone())));
                prop_assert!(left.multiply_legs().is_zero(), "S*id on {}", a.render(&w));
                prop_assert!(right.multiply_legs().is_zero(), "id*S on {}", a.render(&w));
            }
        }
    }
}

#[test]
fn nonprimitive_antipode() {
    let a = Alphabet::new(&[("x", 1), ("y", 2)]).unwrap();
    let y = a.letter("y").unwrap();
    let d = Comultiplication::with_primitive_defaults(
        &a,
        Q,
        BTreeMap::from([(y, tensor(&a, &[(1, "", "y"), (1, "y", ""), (1, "x", "x")]))]),
    )
    .unwrap();
    let s = Antipode::compute(&d, &a).unwrap();
    assert_eq!(s.on_letter(y), &poly(&a, &[(1, "x x"), (-1, "y")]));
}

#[test]
fn tower_presents_the_same_algebra() {
    let a = Alphabet::new(&[("x1", 1), ("x2", 1), ("x3", 2)]).unwrap();
    let rels = vec![
        poly(&a, &[(1, "x2 x1"), (-1, "x1 x2"), (-1, "x3")]),
        poly(&a, &[(1, "x3 x1"), (-1, "x1 x3")]),
        poly(&a, &[(1, "x3 x2"), (-1, "x2 x3")]),
    ];
    let q = Quotient::new(Presentation::new(a, Q, rels, None, 6).unwrap()).unwrap();
    let tower = extract_ihoe(&q).unwrap();
    assert!(tower.is_sound());
    let p = tower.presentation().unwrap();
    let dense = oracle::quotient_dimensions_dense(&p.alphabet, p.field, &p.relations, 6);
    assert_eq!(dense, hilbert_and_gk(&q).coefficients);
    // each δ_i only involves earlier generators
    for (i, level) in tower.levels.iter().enumerate() {
        for (_, v) in &level.derivation {
            assert!(v.max_generator().is_none_or(|m| m < i));
        }
    }
}
