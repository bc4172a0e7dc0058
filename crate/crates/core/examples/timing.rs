//! Times each method on the all-crossing diagram of every size up to the caps.
//!
//! Run with: cargo run --release -p coljones --example timing

use std::time::Instant;

use coljones::{wj_via_permanent, wj_via_recursion, wj_via_statesum, ChordDiagram};

fn spread(n: usize) -> ChordDiagram {
    // Chord i joins points i and i + n: every pair crosses.
    let pairs: Vec<(usize, usize)> = (1..=n).map(|i| (i, i + n)).collect();
    ChordDiagram::from_chords(&pairs).unwrap()
}

fn main() {
    for n in 1..=8 {
        let d = spread(n);
        let t = Instant::now();
        let p = wj_via_permanent(&d).unwrap();
        let tp = t.elapsed();
        print!("n={n} permanent {tp:?}");
        if n <= 6 {
            let t = Instant::now();
            assert_eq!(wj_via_statesum(&d), p);
            print!("  statesum {:?}", t.elapsed());
        }
        let t = Instant::now();
        assert_eq!(wj_via_recursion(&d), p);
        println!("  recursion {:?}  W_J = {p}", t.elapsed());
    }
}
