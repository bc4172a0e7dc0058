mod common;

use coljones::chord::enumerate_diagrams;
use coljones::recursion::{
    segment_labels, wj_via_recursion, wj_via_recursion_reference, Color, Coloring,
};
use coljones::{wj_via_permanent, wj_via_statesum, ChordDiagram};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn all_methods_agree_up_to_four_chords() {
    let mut count = 0;
    for n in 0..=4 {
        for d in enumerate_diagrams(n) {
            let p = wj_via_permanent(&d).unwrap();
            assert_eq!(wj_via_statesum(&d), p, "{d}");
            assert_eq!(wj_via_recursion(&d), p, "{d}");
            count += 1;
        }
    }
    assert_eq!(count, 1 + 1 + 3 + 15 + 105);
}

#[test]
fn all_methods_agree_on_random_five_chord_diagrams() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0020);
    for _ in 0..50 {
        let d = common::random_diagram(&mut rng, 5);
        let p = wj_via_permanent(&d).unwrap();
        assert_eq!(wj_via_statesum(&d), p, "{d}");
        assert_eq!(wj_via_recursion(&d), p, "{d}");
    }
}

#[test]
fn fast_sweep_matches_reference_sum() {
    for n in 0..=3 {
        for d in enumerate_diagrams(n) {
            assert_eq!(wj_via_recursion(&d), wj_via_recursion_reference(&d));
        }
    }
}

#[test]
fn boundary_labels_vanish() {
    for n in 0..=4 {
        for d in enumerate_diagrams(n) {
            for i in 0..Coloring::count(n) {
                let labels = segment_labels(&d, &Coloring::from_index(n, i)).0;
                assert_eq!(labels.len(), 2 * n + 1);
                assert_eq!(labels[0], 0);
                assert_eq!(labels[2 * n], 0);
            }
        }
    }
}

#[test]
fn single_chord_b_minus_one_weighs_zero() {
    let d = ChordDiagram::parse_cdp("2 1").unwrap();
    let w = coljones::recursion::coloring_weight(&d, &Coloring(vec![Color::BMinus1]));
    assert!(w.is_zero());
}

#[test]
fn one_term_relation_up_to_five_chords() {
    for n in 1..=5 {
        for d in enumerate_diagrams(n).filter(|d| d.has_isolated_chord()) {
            assert!(wj_via_permanent(&d).unwrap().is_zero(), "{d}");
        }
    }
}

#[test]
fn multiplicative_under_concatenation() {
    for n1 in 1..=3 {
        for n2 in 1..=(4 - n1) {
            for a in enumerate_diagrams(n1) {
                for b in enumerate_diagrams(n2) {
                    let joined = wj_via_permanent(&a.concat(&b)).unwrap();
                    let product = wj_via_permanent(&a).unwrap() * wj_via_permanent(&b).unwrap();
                    assert_eq!(joined, product, "{a} · {b}");
                }
            }
        }
    }
}

#[test]
fn golden_by_every_method() {
    let d = common::golden();
    assert_eq!(wj_via_permanent(&d).unwrap(), common::golden_value());
    assert_eq!(wj_via_statesum(&d), common::golden_value());
    assert_eq!(wj_via_recursion(&d), common::golden_value());
}
