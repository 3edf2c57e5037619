//! Randomized invariants via proptest: closure/maximal-face round-trips,
//! relabeling invariance of homology, and word arithmetic laws.

use std::collections::HashMap;

use factorcomplex::complex::SimplicialComplex;
use factorcomplex::freegroup::Word;
use factorcomplex::homology::{betti_of_complex, Coefficients};
use proptest::prelude::*;

fn arb_maximal_faces() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::btree_set(0u32..10, 1..4), 1..6)
        .prop_map(|faces| faces.into_iter().map(|f| f.into_iter().collect()).collect())
}

proptest! {
    #[test]
    fn face_closure_of_maximal_faces_is_identity(faces in arb_maximal_faces()) {
        let k = SimplicialComplex::face_closure(&faces).unwrap();
        let k2 = SimplicialComplex::face_closure(&k.maximal_faces()).unwrap();
        prop_assert_eq!(k.faces_sorted(), k2.faces_sorted());
    }

    #[test]
    fn homology_ignores_vertex_ids(faces in arb_maximal_faces(), shift in 1u32..50) {
        let k = SimplicialComplex::face_closure(&faces).unwrap();
        let map: HashMap<u32, u32> =
            k.vertex_ids().iter().map(|&v| (v, v * 3 + shift)).collect();
        let relabeled = k.relabel_vertices(&map).unwrap();
        prop_assert_eq!(
            betti_of_complex(&k, Coefficients::Rationals).unwrap(),
            betti_of_complex(&relabeled, Coefficients::Rationals).unwrap()
        );
    }

    #[test]
    fn word_reduction_is_idempotent(letters in prop::collection::vec(
        prop::sample::select(vec![1i8, -1, 2, -2, 3, -3]), 0..20)) {
        let w = Word::new(3, &letters).unwrap();
        let again = Word::new(3, w.letters()).unwrap();
        prop_assert_eq!(&w, &again);
        // no adjacent inverse pairs survive
        prop_assert!(w.letters().windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn word_inverse_cancels(letters in prop::collection::vec(
        prop::sample::select(vec![1i8, -1, 2, -2]), 0..16)) {
        let w = Word::new(2, &letters).unwrap();
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert!(w.inverse().concat(&w).is_empty());
    }

    #[test]
    fn cyclic_core_is_conjugation_invariant(letters in prop::collection::vec(
        prop::sample::select(vec![1i8, -1, 2, -2]), 1..10),
        conj in prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..6)) {
        let w = Word::new(2, &letters).unwrap();
        let u = Word::new(2, &conj).unwrap();
        let conjugated = u.concat(&w).concat(&u.inverse());
        prop_assert_eq!(w.cyclic_canonical(), conjugated.cyclic_canonical());
    }
}
