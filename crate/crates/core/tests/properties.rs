mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{corpus, oracle_chromatic, oracle_faces, oracle_proper, same_partition};
use djsplit::algebra::{reduce, Monomial, Polynomial};
use djsplit::coloring::{brute_force_chromatic, chromatic_number, find_coloring, is_coloring, skeleton_proper};
use djsplit::complex::{parse_complex, parse_json};
use djsplit::splitting::{
    certificate_from_coloring, classes_from_assignment, extract_coloring, ExtractOptions, SplittingVerifier,
};
use djsplit::{Coloring, Face, Mode, SimplicialComplex, SrElement};

fn complex_strategy(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(1u64..(1u64 << m), 1..8)
            .prop_map(move |masks| SimplicialComplex::from_faces(m, masks.into_iter().map(Face::from_mask)).unwrap())
    })
}

fn complex_and_colors(max_m: usize, max_r: usize) -> impl Strategy<Value = (SimplicialComplex, usize, Vec<usize>)> {
    (complex_strategy(max_m), 1..=max_r).prop_flat_map(|(k, r)| {
        let m = k.vertex_count();
        (Just(k), Just(r), prop::collection::vec(1..=r, m))
    })
}

fn polynomial_strategy(m: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec((1..=m, 1u32..=3), 0..4), -5i64..=5), 0..6).prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(pairs, c)| (Monomial::from_exponents(pairs).unwrap(), c)),
        )
        .unwrap()
    })
}

fn complex_and_polys() -> impl Strategy<Value = (SimplicialComplex, Polynomial, Polynomial)> {
    complex_strategy(6).prop_flat_map(|k| {
        let m = k.vertex_count();
        (Just(k), polynomial_strategy(m), polynomial_strategy(m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn faces_are_downward_closed(k in complex_strategy(9)) {
        let faces = k.faces().unwrap();
        let listed: std::collections::BTreeSet<Vec<usize>> = faces.iter().map(|f| f.vertices()).collect();
        prop_assert_eq!(&listed, &oracle_faces(&k));
        for f in faces {
            for v in f.iter() {
                let smaller = Face::from_mask(f.mask() & !(1 << (v - 1)));
                prop_assert!(k.contains_face(smaller));
            }
        }
        let f_vector = k.f_vector().unwrap();
        prop_assert_eq!(f_vector.iter().sum::<u64>() as usize, faces.len());
        prop_assert_eq!(f_vector[0], 1);
    }

    #[test]
    fn non_faces_complement_faces(k in complex_strategy(8)) {
        let m = k.vertex_count();
        let oracle = oracle_faces(&k);
        for mask in 0u64..(1 << m) {
            let face = Face::from_mask(mask);
            prop_assert_eq!(k.contains_face(face), oracle.contains(&face.vertices()));
        }
        for n in k.minimal_non_faces().unwrap() {
            prop_assert!(!k.contains_face(n));
            for v in n.iter() {
                prop_assert!(k.contains_face(Face::from_mask(n.mask() & !(1 << (v - 1)))));
            }
        }
    }

    #[test]
    fn text_and_json_round_trip(k in complex_strategy(10)) {
        prop_assert_eq!(&parse_complex(&k.to_facet_text()).unwrap(), &k);
        let json = serde_json::to_string(&k.to_json()).unwrap();
        prop_assert_eq!(&parse_json(&json).unwrap(), &k);
    }

    #[test]
    fn reduce_is_idempotent((k, p, _) in complex_and_polys()) {
        let once = reduce(&p, &k).unwrap();
        let twice = reduce(once.polynomial(), &k).unwrap();
        prop_assert_eq!(&once, &twice);
        for (mono, _) in once.terms() {
            prop_assert!(k.contains_face(mono.support()));
        }
    }

    #[test]
    fn multiplication_commutes_with_reduction((k, p, q) in complex_and_polys()) {
        let free = reduce(&p.checked_mul(&q).unwrap(), &k).unwrap();
        let in_ring = reduce(&p, &k).unwrap().checked_mul(&reduce(&q, &k).unwrap()).unwrap();
        prop_assert_eq!(free, in_ring);
    }

    #[test]
    fn restriction_is_multiplicative((k, p, q) in complex_and_polys()) {
        let x = reduce(&p, &k).unwrap();
        let y = reduce(&q, &k).unwrap();
        let xy = x.checked_mul(&y).unwrap();
        for &face in k.faces().unwrap() {
            let lhs = xy.restrict_to_face(face).unwrap();
            let rhs = x.restrict_to_face(face).unwrap().checked_mul(&y.restrict_to_face(face).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coloring_tests_agree((k, r, colors) in complex_and_colors(8, 4)) {
        let g = Coloring::new(r, colors.clone()).unwrap();
        let classes = classes_from_assignment(&k, &g).unwrap();
        let verifier = SplittingVerifier::new(&k).unwrap();
        let expected = oracle_proper(&k, &colors);
        prop_assert_eq!(is_coloring(&k, &g), expected);
        prop_assert_eq!(skeleton_proper(&k, &g), expected);
        prop_assert_eq!(verifier.chern(&classes).unwrap(), expected);
        prop_assert_eq!(verifier.pontrjagin(&classes).unwrap(), expected);
    }

    #[test]
    fn pontrjagin_ignores_signs((k, r, colors) in complex_and_colors(7, 4), signs in prop::collection::vec(any::<bool>(), 7)) {
        let g = Coloring::new(r, colors).unwrap();
        let m = k.vertex_count();
        let verifier = SplittingVerifier::new(&k).unwrap();
        let plain = classes_from_assignment(&k, &g).unwrap();
        let signed: Vec<SrElement> = (1..=r)
            .map(|i| {
                let coefs: Vec<i64> = (1..=m)
                    .map(|j| if g.color(j) == i { if signs[j - 1] { -1 } else { 1 } } else { 0 })
                    .collect();
                SrElement::linear(&k, &coefs).unwrap()
            })
            .collect();
        prop_assert_eq!(verifier.pontrjagin(&plain).unwrap(), verifier.pontrjagin(&signed).unwrap());
    }

    #[test]
    fn chern_identity_implies_pontrjagin(k in complex_strategy(6), rows in prop::collection::vec(prop::collection::vec(-1i64..=2, 6), 1..4)) {
        let m = k.vertex_count();
        let classes: Vec<SrElement> = rows.iter().map(|row| SrElement::linear(&k, &row[..m]).unwrap()).collect();
        let verifier = SplittingVerifier::new(&k).unwrap();
        if verifier.chern(&classes).unwrap() {
            prop_assert!(verifier.pontrjagin(&classes).unwrap());
        }
    }

    #[test]
    fn chromatic_number_matches_brute_force(k in complex_strategy(7)) {
        let chi = chromatic_number(&k);
        prop_assert_eq!(chi, brute_force_chromatic(&k).unwrap());
        prop_assert_eq!(chi, oracle_chromatic(&k));
        let g = find_coloring(&k, chi).unwrap();
        prop_assert!(is_coloring(&k, &g));
        if chi > 1 {
            prop_assert!(find_coloring(&k, chi - 1).is_none());
        }
    }

    #[test]
    fn extraction_inverts_certificates(k in complex_strategy(9)) {
        let g = find_coloring(&k, chromatic_number(&k)).unwrap();
        let cert = certificate_from_coloring(&k, &g).unwrap();
        for mode in [Mode::Chern, Mode::Pontrjagin, Mode::Both] {
            let back = extract_coloring(&k, cert.classes(), ExtractOptions { mode, verify_faces: true }).unwrap();
            prop_assert!(same_partition(&back, &g));
        }
    }
}

#[test]
fn chern_identity_implies_pontrjagin_on_corpus() {
    let corpus = corpus();
    let checked: usize = corpus
        .par_iter()
        .enumerate()
        .map(|(i, entry)| {
            let k = &entry.complex;
            let m = k.vertex_count();
            let verifier = SplittingVerifier::new(k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7 + i as u64);
            let mut patterns: Vec<Vec<SrElement>> = (0..20)
                .map(|_| {
                    let r = rng.gen_range(1..=3);
                    (0..r)
                        .map(|_| {
                            let row: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=2)).collect();
                            SrElement::linear(k, &row).unwrap()
                        })
                        .collect()
                })
                .collect();
            let g = find_coloring(k, chromatic_number(k)).unwrap();
            patterns.push(classes_from_assignment(k, &g).unwrap());
            for classes in &patterns {
                if verifier.chern(classes).unwrap() {
                    assert!(verifier.pontrjagin(classes).unwrap(), "{}", entry.name);
                }
            }
            patterns.len()
        })
        .sum();
    assert_eq!(checked, corpus.len() * 21);
}
