use coljones::chord::diagram_count;
use coljones::verify::{verify_exhaustive, verify_relations};
use coljones::{HarnessConfig, Method};

#[test]
fn relations_hold_for_every_method() {
    let cfg = HarnessConfig::default();
    for n in 1..=4 {
        for method in Method::ALL {
            let s = verify_relations(n, method, &cfg);
            assert!(s.holds(), "{s}");
            assert!(s.one_term_checked > 0);
        }
    }
}

#[test]
fn exhaustive_sweep_through_four_chords() {
    let cfg = HarnessConfig::default();
    for n in 0..=4 {
        let s = verify_exhaustive(n, &Method::ALL, &cfg);
        assert_eq!(s.diagrams as u128, diagram_count(n));
        assert_eq!(s.agreements, s.diagrams, "{s}");
        assert!(s.failures.is_empty(), "{s}");
        assert_eq!(s.zeros + s.nonzero, s.diagrams);
        // Isolated chords force zero; nothing else is required to.
        assert!(s.isolated_chord_zeros <= s.zeros);
    }
}

#[test]
fn caps_turn_into_failures() {
    let cfg = HarnessConfig {
        recursion_max_chords: 2,
        ..HarnessConfig::default()
    };
    let s = verify_exhaustive(3, &Method::ALL, &cfg);
    assert_eq!(s.failures.len(), s.diagrams);
    let s = verify_relations(3, Method::Recursion, &cfg);
    assert!(!s.holds());
}
