mod common;

use lscsp::classify::{
    classify_relation, clause_solutions, entailed_ihsb_clauses, flip_sets, is_affine, is_flip_separable, is_horn,
    is_width2_affine,
};
use lscsp::relation::{common as rels, Relation};
use lscsp::{classify_language, LsClass, MinOnesClass};
use proptest::prelude::*;

use common::*;

#[test]
fn lattice_holds_on_every_arity_four_relation() {
    for set in 0u64..1 << 16 {
        let tuples: Vec<u32> = (0..16).filter(|&t| set >> t & 1 == 1).collect();
        let r = Relation::new("R", 4, tuples).unwrap();
        let c = classify_relation(&r);
        assert!(!c.width2_affine || c.affine, "{r:?}");
        assert!(!c.affine || c.flip_separable, "{r:?}");
        assert!(!c.ihsb_minus || c.horn, "{r:?}");
    }
}

#[test]
fn language_verdicts() {
    let v = classify_language([&rels::or2()]).unwrap();
    assert_eq!(v.ls_class, LsClass::W1Hard);
    assert!(v.np_hard);

    let v = classify_language([&rels::neq()]).unwrap();
    assert_eq!(v.ls_class, LsClass::P);
    assert_eq!(v.minones_class, MinOnesClass::P);

    let v = classify_language([&rels::one_in_three()]).unwrap();
    assert_eq!(v.ls_class, LsClass::Fpt);
    assert!(v.np_hard);
    assert_eq!(v.minones_class, MinOnesClass::NpComplete);

    let v = classify_language([&rels::horn_core()]).unwrap();
    assert_eq!(v.ls_class, LsClass::Fpt);
    assert_eq!(v.minones_class, MinOnesClass::P);

    // Horn plus flip separable but neither alone covers both.
    let v = classify_language([&rels::implication(), &rels::one_in_three()]).unwrap();
    assert_eq!(v.ls_class, LsClass::W1Hard);

    // IHS-B- together with width-2 affine is not P: NEQ is not IHS-B-,
    // IMPL is not width-2 affine, and IMPL is not flip separable.
    let v = classify_language([&rels::implication(), &rels::neq()]).unwrap();
    assert_eq!(v.ls_class, LsClass::W1Hard);

    assert!(classify_language(std::iter::empty()).is_err());
}

#[test]
fn flip_sets_of_one_in_three() {
    let r = rels::one_in_three();
    assert_eq!(flip_sets(&r, 0b100).unwrap(), vec![0b000, 0b101, 0b110]);
    assert!(flip_sets(&r, 0b000).is_err());
}

fn relation_strategy() -> impl Strategy<Value = Relation> {
    (1usize..=4).prop_flat_map(|arity| {
        proptest::collection::btree_set(0u32..(1 << arity), 0..=(1 << arity))
            .prop_map(move |ts| Relation::new("R", arity, ts).unwrap())
    })
}

proptest! {
    #[test]
    fn horn_matches_min_closure(r in relation_strategy()) {
        prop_assert_eq!(is_horn(&r), min_closed(&r));
    }

    #[test]
    fn affine_matches_xor_closure(r in relation_strategy()) {
        prop_assert_eq!(is_affine(&r), affine_by_xor3(&r));
    }

    #[test]
    fn flip_separable_matches_definition(r in relation_strategy()) {
        prop_assert_eq!(is_flip_separable(&r), flip_separable_by_definition(&r));
    }

    #[test]
    fn width2_matches_pair_closure(r in relation_strategy()) {
        prop_assert_eq!(is_width2_affine(&r), width2_by_pairs(&r));
    }

    #[test]
    fn ihsb_clauses_reproduce_ihsb_relations(r in relation_strategy()) {
        let c = classify_relation(&r);
        prop_assert_eq!(c.ihsb_minus, ihsb_by_clauses(&r));
        if c.ihsb_minus {
            prop_assert_eq!(clause_solutions(r.arity(), &entailed_ihsb_clauses(&r)), r.tuples().to_vec());
        }
    }

    #[test]
    fn witnesses_are_genuine(r in relation_strategy()) {
        let c = classify_relation(&r);
        if let Some((a, b)) = c.horn_witness {
            prop_assert!(r.contains(a) && r.contains(b) && !r.contains(a & b));
        }
        if let Some(w) = c.flip_witness {
            prop_assert!(r.contains(w.tuple));
            prop_assert!(r.contains(w.tuple ^ w.s1) && r.contains(w.tuple ^ w.s2));
            prop_assert!(w.s1 & !w.s2 == 0 && w.s1 != w.s2);
            prop_assert!(!r.contains(w.tuple ^ (w.s2 & !w.s1)));
        }
    }
}
