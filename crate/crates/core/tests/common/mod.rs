//! Helpers shared by the integration tests: random inputs and a brute-force
//! acceptable-object oracle that works straight from the chord diagram.

#![allow(dead_code)]

use std::collections::BTreeSet;

use coljones::permanent::PolyMatrix;
use coljones::statesum::{AcceptableObject, ArcKind};
use coljones::{ChordDiagram, IntPoly};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn golden() -> ChordDiagram {
    ChordDiagram::parse_cdp("CDP[5,7,6,8,1,3,2,4]").unwrap()
}

pub fn golden_value() -> IntPoly {
    IntPoly::from_i64s(&[0, -40, -4, 16, 4])
}

pub fn cross() -> ChordDiagram {
    ChordDiagram::from_chords(&[(1, 3), (2, 4)]).unwrap()
}

pub fn nested() -> ChordDiagram {
    ChordDiagram::from_chords(&[(1, 4), (2, 3)]).unwrap()
}

/// Uniform random perfect matching of 1..=2n.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize) -> ChordDiagram {
    let mut points: Vec<usize> = (1..=2 * n).collect();
    points.shuffle(rng);
    let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
    ChordDiagram::from_chords(&pairs).unwrap()
}

pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> IntPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    IntPoly::from_i64s(
        &(0..len)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect::<Vec<_>>(),
    )
}

/// Random matrix; each entry is zero with probability `zero_prob`.
pub fn random_matrix<R: Rng>(
    rng: &mut R,
    size: usize,
    max_deg: usize,
    zero_prob: f64,
) -> PolyMatrix {
    let rows = (0..size)
        .map(|_| {
            (0..size)
                .map(|_| {
                    if rng.gen_bool(zero_prob) {
                        IntPoly::zero()
                    } else {
                        random_poly(rng, max_deg, 3)
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(rows).unwrap()
}

/// (kind, tail, head, thickened vertex), vertices zero-based.
pub type ArcKey = (u8, usize, usize, usize);

pub fn object_key(obj: &AcceptableObject) -> Vec<ArcKey> {
    let mut key: Vec<ArcKey> = obj
        .arcs
        .iter()
        .map(|a| {
            let kind = match a.kind {
                ArcKind::Loop => 0,
                ArcKind::Uncolored => 1,
                ArcKind::Red => 2,
            };
            (kind, a.tail, a.head, a.thick_vertex())
        })
        .collect();
    key.sort();
    key
}

/// Every subset of the full thickened-arc universe of LID(D) that satisfies
/// the acceptability rules, found without any pruning.
pub fn brute_force_acceptable(d: &ChordDiagram) -> BTreeSet<Vec<ArcKey>> {
    let n = d.n();
    let chords = d.chords();
    let crossing = |i: usize, j: usize| {
        let ((a, b), (c, e)) = (chords[i], chords[j]);
        (a < c && c < b) != (a < e && e < b)
    };
    let inside = |i: usize, j: usize| chords[j].0 < chords[i].0 && chords[i].1 < chords[j].1;

    let mut universe: Vec<ArcKey> = (0..n).map(|v| (0, v, v, v)).collect();
    for i in 0..n {
        for j in 0..n {
            if i < j && crossing(i, j) {
                universe.push((1, i, j, i));
                universe.push((1, i, j, j));
            }
            if inside(i, j) {
                universe.push((2, i, j, i));
                universe.push((2, j, i, i));
            }
        }
    }
    assert!(universe.len() < 24, "brute force universe too large");

    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << universe.len()) {
        let subset: Vec<ArcKey> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| *a)
            .collect();
        if acceptable(n, &subset) {
            let mut key = subset;
            key.sort();
            out.insert(key);
        }
    }
    out
}

fn acceptable(n: usize, arcs: &[ArcKey]) -> bool {
    (0..n).all(|v| {
        let mut ends = 0;
        let mut thick_in = 0;
        let mut thick_out = 0;
        for &(_, tail, head, thick) in arcs {
            if tail == v {
                ends += 1;
            }
            if head == v {
                ends += 1;
            }
            if thick == v {
                if tail == v {
                    thick_out += 1;
                } else {
                    thick_in += 1;
                }
            }
        }
        let thick = thick_in + thick_out;
        match ends {
            0 => true,
            2 => thick == 1,
            4 => thick_in == 1 && thick_out == 1,
            _ => false,
        }
    })
}

/// Deg4 and a of a brute-force object.
pub fn key_stats(n: usize, key: &[ArcKey]) -> (usize, usize) {
    let mut ends = vec![0; n];
    for &(_, t, h, _) in key {
        ends[t] += 1;
        ends[h] += 1;
    }
    let deg4 = ends.iter().filter(|&&e| e == 4).count();
    let a = key.iter().filter(|&&(_, t, _, th)| th == t).count();
    (deg4, a)
}
