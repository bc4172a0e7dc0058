//! Direct evaluation of W_J from chord colorings.
//!
//! Each chord is colored by one of I, B⁺₀, B⁺₁, B⁻₀, B⁻₁. Walking the line
//! left to right assigns an integer label to every segment between
//! consecutive endpoints; B⁺₁ raises the label by one at its left endpoint
//! and lowers it at its right endpoint, B⁻₁ does the opposite, and the other
//! colors leave it alone. With k the label just before a chord's left
//! endpoint and k' the label just before its right endpoint, the chord
//! weighs
//!
//! ```text
//! I   : λ + 2
//! B⁺ε : -(-1)^ε (1 + k)(λ + 1 - k')
//! B⁻ε : -(-1)^ε (1 + k')(λ + 1 - k)
//! ```
//!
//! and W_J(D) is the sum over all 5ⁿ colorings of the product of weights.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chord::ChordDiagram;
use crate::poly::{IntPoly, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    I,
    BPlus0,
    BPlus1,
    BMinus0,
    BMinus1,
}

impl Color {
    pub const ALL: [Color; 5] = [
        Color::I,
        Color::BPlus0,
        Color::BPlus1,
        Color::BMinus0,
        Color::BMinus1,
    ];

    /// Label change at the chord's (left, right) endpoint.
    fn steps(self) -> (i64, i64) {
        match self {
            Color::BPlus1 => (1, -1),
            Color::BMinus1 => (-1, 1),
            _ => (0, 0),
        }
    }

    /// Weight as `(constant, λ-coefficient)`.
    fn weight_parts(self, k: i64, k_right: i64) -> (i64, i64) {
        match self {
            Color::I => (2, 1),
            Color::BPlus0 | Color::BPlus1 => {
                let sign = if self == Color::BPlus0 { -1 } else { 1 };
                let f = sign * (1 + k);
                (f * (1 - k_right), f)
            }
            Color::BMinus0 | Color::BMinus1 => {
                let sign = if self == Color::BMinus0 { -1 } else { 1 };
                let f = sign * (1 + k_right);
                (f * (1 - k), f)
            }
        }
    }

    pub fn weight(self, k: i64, k_right: i64) -> IntPoly {
        let (c0, c1) = self.weight_parts(k, k_right);
        IntPoly::linear(c0, c1)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::I => "I",
            Color::BPlus0 => "B+0",
            Color::BPlus1 => "B+1",
            Color::BMinus0 => "B-0",
            Color::BMinus1 => "B-1",
        })
    }
}

/// A color for every chord, in chord order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    /// Decodes a base-5 index; chord 0 is the most significant digit.
    pub fn from_index(n: usize, mut index: u64) -> Coloring {
        let mut colors = vec![Color::I; n];
        for slot in colors.iter_mut().rev() {
            *slot = Color::ALL[(index % 5) as usize];
            index /= 5;
        }
        Coloring(colors)
    }

    pub fn count(n: usize) -> u64 {
        5u64.pow(n as u32)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Labels m(s_0), ..., m(s_2n) of the 2n + 1 segments of the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentLabels(pub Vec<i64>);

impl SegmentLabels {
    /// Label of the segment ending at point `p` (one-based).
    pub fn before(&self, p: usize) -> i64 {
        self.0[p - 1]
    }
}

pub fn segment_labels(d: &ChordDiagram, rho: &Coloring) -> SegmentLabels {
    let mut labels = Vec::with_capacity(2 * d.n() + 1);
    let mut m = 0i64;
    labels.push(m);
    for (chord, is_left) in d.endpoint_sequence() {
        let (at_left, at_right) = rho.0[chord].steps();
        m += if is_left { at_left } else { at_right };
        labels.push(m);
    }
    SegmentLabels(labels)
}

/// Per-chord weights under `rho`.
pub fn chord_weights(d: &ChordDiagram, rho: &Coloring) -> Vec<IntPoly> {
    let labels = segment_labels(d, rho);
    d.chords()
        .iter()
        .zip(&rho.0)
        .map(|(&(a, b), &c)| c.weight(labels.before(a), labels.before(b)))
        .collect()
}

pub fn coloring_weight(d: &ChordDiagram, rho: &Coloring) -> IntPoly {
    chord_weights(d, rho).into_iter().product()
}

/// Reference evaluation: sums [`coloring_weight`] over every coloring.
pub fn wj_via_recursion_reference(d: &ChordDiagram) -> IntPoly {
    let n = d.n();
    (0..Coloring::count(n))
        .map(|i| coloring_weight(d, &Coloring::from_index(n, i)))
        .sum()
}

/// W_J(D) as the sum over all 5ⁿ colorings.
pub fn wj_via_recursion(d: &ChordDiagram) -> IntPoly {
    let n = d.n();
    let total = Coloring::count(n);
    let pieces = total.min(256);
    let step = total / pieces;
    let parts: Vec<IntPoly> = (0..pieces)
        .into_par_iter()
        .map(|k| {
            let end = if k + 1 == pieces {
                total
            } else {
                (k + 1) * step
            };
            ColoringSweep::new(d).run(k * step, end)
        })
        .collect();
    parts.into_iter().sum()
}

/// Sums a contiguous range of colorings with 128-bit arithmetic, spilling
/// into arbitrary precision on overflow.
struct ColoringSweep<'a> {
    d: &'a ChordDiagram,
    endpoints: Vec<(usize, bool)>,
    labels: Vec<i64>,
    prod: Vec<i128>,
    acc: Vec<i128>,
    spill: Vec<BigInt>,
}

impl<'a> ColoringSweep<'a> {
    fn new(d: &'a ChordDiagram) -> Self {
        let n = d.n();
        ColoringSweep {
            d,
            endpoints: d.endpoint_sequence(),
            labels: vec![0; 2 * n + 1],
            prod: vec![0; n + 1],
            acc: vec![0; n + 1],
            spill: vec![BigInt::zero(); n + 1],
        }
    }

    fn run(mut self, start: u64, end: u64) -> IntPoly {
        let n = self.d.n();
        for index in start..end {
            let rho = Coloring::from_index(n, index);
            if !self.product(&rho) {
                let exact = coloring_weight(self.d, &rho);
                for (s, c) in self.spill.iter_mut().zip(exact.coeffs()) {
                    *s += c;
                }
                continue;
            }
            for k in 0..=n {
                match self.acc[k].checked_add(self.prod[k]) {
                    Some(v) => self.acc[k] = v,
                    None => {
                        self.spill[k] += self.acc[k];
                        self.acc[k] = self.prod[k];
                    }
                }
            }
        }
        for (s, a) in self.spill.iter_mut().zip(&self.acc) {
            *s += *a;
        }
        IntPoly::from_coeffs(self.spill)
    }

    /// Writes the coloring's product into `prod`; false on overflow.
    fn product(&mut self, rho: &Coloring) -> bool {
        let mut m = 0i64;
        self.labels[0] = 0;
        for (p, &(chord, is_left)) in self.endpoints.iter().enumerate() {
            let (at_left, at_right) = rho.0[chord].steps();
            m += if is_left { at_left } else { at_right };
            self.labels[p + 1] = m;
        }
        self.prod.fill(0);
        self.prod[0] = 1;
        for (deg, (&(a, b), &c)) in self.d.chords().iter().zip(&rho.0).enumerate() {
            let (c0, c1) = c.weight_parts(self.labels[a - 1], self.labels[b - 1]);
            if c0 == 0 && c1 == 0 {
                self.prod.fill(0);
                return true;
            }
            let (c0, c1) = (c0 as i128, c1 as i128);
            let mut carry = 0i128;
            for k in 0..=deg + 1 {
                let cur = self.prod[k];
                let Some(v) = cur.checked_mul(c0).and_then(|v| v.checked_add(carry)) else {
                    return false;
                };
                let Some(next_carry) = cur.checked_mul(c1) else {
                    return false;
                };
                self.prod[k] = v;
                carry = next_carry;
            }
        }
        true
    }
}

/// One line of the per-coloring trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub coloring: Vec<String>,
    pub labels: Vec<i64>,
    pub weights: Vec<String>,
    pub product: String,
}

/// Per-coloring breakdown, for comparing against other evaluations.
pub fn trace(d: &ChordDiagram, var: Variable) -> impl Iterator<Item = TraceRecord> + '_ {
    let n = d.n();
    (0..Coloring::count(n)).map(move |i| {
        let rho = Coloring::from_index(n, i);
        let labels = segment_labels(d, &rho);
        let weights = chord_weights(d, &rho);
        let product: IntPoly = weights.iter().cloned().product();
        TraceRecord {
            coloring: rho.0.iter().map(ToString::to_string).collect(),
            labels: labels.0,
            weights: weights.iter().map(|w| w.render(var)).collect(),
            product: product.render(var),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross() -> ChordDiagram {
        ChordDiagram::from_chords(&[(1, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn labels() {
        let d = cross();
        let all_i = Coloring(vec![Color::I; 2]);
        assert_eq!(segment_labels(&d, &all_i).0, vec![0; 5]);
        let rho = Coloring(vec![Color::BPlus1, Color::I]);
        assert_eq!(segment_labels(&d, &rho).0, vec![0, 1, 1, 0, 0]);
    }

    #[test]
    fn single_chord_weights() {
        let d = ChordDiagram::parse_cdp("2 1").unwrap();
        let w = |c| coloring_weight(&d, &Coloring(vec![c]));
        assert_eq!(w(Color::I), IntPoly::linear(2, 1));
        assert_eq!(w(Color::BPlus0), IntPoly::linear(-1, -1));
        assert_eq!(w(Color::BPlus1), IntPoly::lambda());
        assert_eq!(w(Color::BMinus0), IntPoly::linear(-1, -1));
        assert!(w(Color::BMinus1).is_zero());
        assert!(wj_via_recursion(&d).is_zero());
    }

    #[test]
    fn cross_weight() {
        let rho = Coloring(vec![Color::BPlus1, Color::BPlus0]);
        // chord 1: k=0, k'=1 -> (1)(λ); chord 2: k=1, k'=0 -> -(2)(λ+1)
        assert_eq!(
            coloring_weight(&cross(), &rho),
            IntPoly::from_i64s(&[0, -2, -2])
        );
    }

    #[test]
    fn index_decoding() {
        assert_eq!(Coloring::from_index(2, 0).0, vec![Color::I, Color::I]);
        assert_eq!(
            Coloring::from_index(2, 7).0,
            vec![Color::BPlus0, Color::BPlus1]
        );
        assert_eq!(Coloring::from_index(0, 0).0, vec![]);
    }

    #[test]
    fn values() {
        assert_eq!(wj_via_recursion(&ChordDiagram::empty()), IntPoly::one());
        assert_eq!(wj_via_recursion(&cross()), IntPoly::from_i64s(&[0, -2, -1]));
        let golden = ChordDiagram::parse_cdp("CDP[5,7,6,8,1,3,2,4]").unwrap();
        assert_eq!(
            wj_via_recursion(&golden),
            IntPoly::from_i64s(&[0, -40, -4, 16, 4])
        );
        assert_eq!(
            wj_via_recursion_reference(&golden),
            wj_via_recursion(&golden)
        );
    }

    #[test]
    fn trace_sums_to_value() {
        let total: IntPoly = trace(&cross(), Variable::X)
            .map(|r| r.product.parse::<IntPoly>().unwrap())
            .sum();
        assert_eq!(total, IntPoly::from_i64s(&[0, -2, -1]));
        assert_eq!(trace(&cross(), Variable::X).count(), 25);
    }
}
