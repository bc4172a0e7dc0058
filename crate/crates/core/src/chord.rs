//! Chord diagrams on an oriented line.
//!
//! A diagram with n chords pairs the points 1..=2n. Chords are kept sorted by
//! their left endpoint, and that order is the chord numbering used by every
//! matrix and digraph built from the diagram. Chord indices in this API are
//! zero-based; point labels are one-based, as in the `CDP[...]` notation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("cannot parse `{0}` as a point label")]
    BadToken(String),
    #[error("involution list has odd length {0}")]
    OddLength(usize),
    #[error("values are not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("point {0} is a fixed point")]
    FixedPoint(usize),
    #[error("list is not an involution at position {0}")]
    NotAnInvolution(usize),
    #[error("chord index {index} out of range for a diagram with {n} chords")]
    IndexOutOfRange { index: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChordDiagram {
    chords: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram { chords: Vec::new() }
    }

    /// Builds a diagram from endpoint pairs in any order and orientation.
    pub fn from_chords(pairs: &[(usize, usize)]) -> Result<Self, ChordError> {
        let n = pairs.len();
        let mut involution = vec![0usize; 2 * n];
        for &(a, b) in pairs {
            for p in [a, b] {
                if p == 0 || p > 2 * n || involution[p - 1] != 0 {
                    return Err(ChordError::NotAPermutation(2 * n));
                }
            }
            if a == b {
                return Err(ChordError::FixedPoint(a));
            }
            involution[a - 1] = b;
            involution[b - 1] = a;
        }
        Self::from_involution(&involution)
    }

    /// Interprets `list[i-1] = a_i` as the involution i ↦ a_i; its 2-cycles
    /// are the chords.
    pub fn from_involution(list: &[usize]) -> Result<Self, ChordError> {
        let len = list.len();
        if !len.is_multiple_of(2) {
            return Err(ChordError::OddLength(len));
        }
        let mut seen = vec![false; len];
        for &a in list {
            if a == 0 || a > len || seen[a - 1] {
                return Err(ChordError::NotAPermutation(len));
            }
            seen[a - 1] = true;
        }
        let mut chords = Vec::with_capacity(len / 2);
        for (i, &a) in list.iter().enumerate() {
            let p = i + 1;
            if a == p {
                return Err(ChordError::FixedPoint(p));
            }
            if list[a - 1] != p {
                return Err(ChordError::NotAnInvolution(p));
            }
            if p < a {
                chords.push((p, a));
            }
        }
        Ok(ChordDiagram { chords })
    }

    /// Parses a whitespace- or comma-separated involution, optionally wrapped
    /// as `CDP[...]`.
    pub fn parse_cdp(text: &str) -> Result<Self, ChordError> {
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix("CDP[").and_then(|s| s.strip_suffix(']')) {
            body = inner;
        } else if let Some(inner) = body.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            body = inner;
        }
        let list = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| ChordError::BadToken(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_involution(&list)
    }

    pub fn n(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// Chords as `(left, right)` point pairs, sorted by left endpoint.
    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn chord(&self, i: usize) -> Result<(usize, usize), ChordError> {
        self.chords
            .get(i)
            .copied()
            .ok_or(ChordError::IndexOutOfRange {
                index: i,
                n: self.n(),
            })
    }

    pub fn to_involution(&self) -> Vec<usize> {
        let mut list = vec![0; 2 * self.n()];
        for &(a, b) in &self.chords {
            list[a - 1] = b;
            list[b - 1] = a;
        }
        list
    }

    /// Canonical `CDP[a1,...,a2n]` form.
    pub fn to_cdp(&self) -> String {
        let items: Vec<String> = self
            .to_involution()
            .iter()
            .map(ToString::to_string)
            .collect();
        format!("CDP[{}]", items.join(","))
    }

    /// For each point 1..=2n (index p-1): the chord it belongs to and whether
    /// it is that chord's left endpoint.
    pub fn endpoint_sequence(&self) -> Vec<(usize, bool)> {
        let mut seq = vec![(0, false); 2 * self.n()];
        for (c, &(a, b)) in self.chords.iter().enumerate() {
            seq[a - 1] = (c, true);
            seq[b - 1] = (c, false);
        }
        seq
    }

    /// Exactly one endpoint of chord `j` lies strictly inside chord `i`.
    /// A chord does not intersect itself.
    pub fn intersects(&self, i: usize, j: usize) -> Result<bool, ChordError> {
        let (a, b) = self.chord(i)?;
        let (c, d) = self.chord(j)?;
        Ok(i != j && ((a < c && c < b) != (a < d && d < b)))
    }

    /// Chord `i` lies completely inside chord `j`.
    pub fn contains(&self, i: usize, j: usize) -> Result<bool, ChordError> {
        let (a, b) = self.chord(i)?;
        let (c, d) = self.chord(j)?;
        Ok(c < a && b < d)
    }

    /// `IM(D)`: entry (i, j) is sign(i - j) when chords i and j intersect.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if self.crosses(i, j) {
                    m[i][j] = if i > j { 1 } else { -1 };
                }
            }
        }
        m
    }

    // Unchecked variants for indices known to be in range.
    pub(crate) fn crosses(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.chords[i];
        let (c, d) = self.chords[j];
        i != j && ((a < c && c < b) != (a < d && d < b))
    }

    pub(crate) fn nested_in(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.chords[i];
        let (c, d) = self.chords[j];
        c < a && b < d
    }

    /// Some chord intersects no other chord.
    pub fn has_isolated_chord(&self) -> bool {
        let n = self.n();
        (0..n).any(|i| (0..n).all(|j| !self.crosses(i, j)))
    }

    /// The diagram of `self` followed on the line by `other`.
    pub fn concat(&self, other: &ChordDiagram) -> ChordDiagram {
        let shift = 2 * self.n();
        let mut chords = self.chords.clone();
        chords.extend(other.chords.iter().map(|&(a, b)| (a + shift, b + shift)));
        ChordDiagram { chords }
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cdp())
    }
}

impl FromStr for ChordDiagram {
    type Err = ChordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_cdp(s)
    }
}

/// (2n - 1)!!, the number of chord diagrams with n chords.
pub fn diagram_count(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// All chord diagrams with `n` chords, each exactly once.
///
/// A diagram is addressed by a mixed-radix word whose t-th digit picks the
/// partner of the smallest still-unmatched point among the 2n - 2t - 1
/// candidates. Words are visited in lexicographic order.
pub fn enumerate_diagrams(n: usize) -> DiagramIter {
    DiagramIter {
        n,
        digits: vec![0; n],
        done: false,
    }
}

#[derive(Debug, Clone)]
pub struct DiagramIter {
    n: usize,
    digits: Vec<usize>,
    done: bool,
}

impl DiagramIter {
    fn decode(&self) -> ChordDiagram {
        let mut remaining: Vec<usize> = (1..=2 * self.n).collect();
        let mut chords = Vec::with_capacity(self.n);
        for &d in &self.digits {
            let left = remaining.remove(0);
            let right = remaining.remove(d);
            chords.push((left, right));
        }
        ChordDiagram { chords }
    }
}

impl Iterator for DiagramIter {
    type Item = ChordDiagram;

    fn next(&mut self) -> Option<ChordDiagram> {
        if self.done {
            return None;
        }
        let out = self.decode();
        let mut t = self.n;
        loop {
            if t == 0 {
                self.done = true;
                break;
            }
            t -= 1;
            let radix = 2 * (self.n - t) - 1;
            self.digits[t] += 1;
            if self.digits[t] < radix {
                break;
            }
            self.digits[t] = 0;
        }
        Some(out)
    }
}

/// One instance of the four-term relation.
///
/// The base is a matching of n-1 chords on the points 1..=2n-1 except
/// `anchor`, which holds one end of the extra chord u. The other end of u is
/// placed immediately left or right of either endpoint of the `target` chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourTermQuadruple {
    pub before_left: ChordDiagram,
    pub after_left: ChordDiagram,
    pub before_right: ChordDiagram,
    pub after_right: ChordDiagram,
    pub base_chords: Vec<(usize, usize)>,
    pub anchor: usize,
    pub target: usize,
}

impl FourTermQuadruple {
    pub fn members(&self) -> [&ChordDiagram; 4] {
        [
            &self.before_left,
            &self.after_left,
            &self.before_right,
            &self.after_right,
        ]
    }
}

/// Every four-term instance with `n` chords (n ≥ 2; none otherwise).
pub fn four_term_quadruples(n: usize) -> impl Iterator<Item = FourTermQuadruple> {
    let points = if n >= 2 { 2 * n - 1 } else { 0 };
    (1..=points).flat_map(move |anchor| {
        enumerate_diagrams(n - 1).flat_map(move |sub| {
            let base: Vec<(usize, usize)> = sub
                .chords()
                .iter()
                .map(|&(a, b)| {
                    let lift = |q: usize| if q < anchor { q } else { q + 1 };
                    (lift(a), lift(b))
                })
                .collect();
            (0..base.len()).map(move |target| build_quadruple(&base, anchor, target))
        })
    })
}

fn build_quadruple(base: &[(usize, usize)], anchor: usize, target: usize) -> FourTermQuadruple {
    let (a, b) = base[target];
    // Doubled coordinates: existing points sit at even positions, insertion
    // slots at odd ones.
    let insert = |slot: usize| {
        let relabel = |q: usize| if 2 * q < slot { q } else { q + 1 };
        let mut chords: Vec<(usize, usize)> = base
            .iter()
            .map(|&(x, y)| (relabel(x), relabel(y)))
            .collect();
        let fixed = relabel(anchor);
        let free = slot / 2 + 1;
        chords.push((fixed.min(free), fixed.max(free)));
        chords.sort_unstable();
        ChordDiagram { chords }
    };
    FourTermQuadruple {
        before_left: insert(2 * a - 1),
        after_left: insert(2 * a + 1),
        before_right: insert(2 * b - 1),
        after_right: insert(2 * b + 1),
        base_chords: base.to_vec(),
        anchor,
        target,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ChordDiagram {
        ChordDiagram::parse_cdp("CDP[5,7,6,8,1,3,2,4]").unwrap()
    }

    #[test]
    fn parse_golden() {
        assert_eq!(golden().chords(), &[(1, 5), (2, 7), (3, 6), (4, 8)]);
        assert_eq!(ChordDiagram::parse_cdp("2 1").unwrap().chords(), &[(1, 2)]);
        assert_eq!(ChordDiagram::parse_cdp("").unwrap().n(), 0);
        assert_eq!(ChordDiagram::parse_cdp("CDP[]").unwrap().n(), 0);
        assert_eq!(golden().to_cdp(), "CDP[5,7,6,8,1,3,2,4]");
    }

    #[test]
    fn parse_errors() {
        use ChordError::*;
        assert_eq!(ChordDiagram::parse_cdp("2 1 3"), Err(OddLength(3)));
        assert_eq!(ChordDiagram::parse_cdp("2 2"), Err(NotAPermutation(2)));
        assert_eq!(ChordDiagram::parse_cdp("2 5"), Err(NotAPermutation(2)));
        assert_eq!(ChordDiagram::parse_cdp("1 2"), Err(FixedPoint(1)));
        assert_eq!(ChordDiagram::parse_cdp("2 3 4 1"), Err(NotAnInvolution(1)));
        assert_eq!(ChordDiagram::parse_cdp("2,x"), Err(BadToken("x".into())));
    }

    #[test]
    fn predicates_on_golden() {
        let d = golden();
        assert!(d.intersects(0, 1).unwrap());
        assert!(!d.intersects(1, 2).unwrap());
        assert!(d.contains(2, 1).unwrap());
        assert!(!d.contains(1, 2).unwrap());
        assert_eq!(
            d.intersects(0, 4),
            Err(ChordError::IndexOutOfRange { index: 4, n: 4 })
        );
        assert!(d.contains(7, 0).is_err());
    }

    #[test]
    fn nested_and_cross() {
        let nested = ChordDiagram::from_chords(&[(1, 4), (2, 3)]).unwrap();
        assert!(nested.contains(1, 0).unwrap());
        assert!(nested.has_isolated_chord());
        let cross = ChordDiagram::from_chords(&[(1, 3), (2, 4)]).unwrap();
        assert_eq!(cross.intersection_matrix(), vec![vec![0, -1], vec![1, 0]]);
        assert!(!cross.has_isolated_chord());
        assert!(ChordDiagram::from_chords(&[(1, 2)])
            .unwrap()
            .has_isolated_chord());
    }

    #[test]
    fn golden_intersection_matrix() {
        assert_eq!(
            golden().intersection_matrix(),
            vec![
                vec![0, -1, -1, -1],
                vec![1, 0, 0, -1],
                vec![1, 0, 0, -1],
                vec![1, 1, 1, 0],
            ]
        );
        assert!(ChordDiagram::empty().intersection_matrix().is_empty());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagrams(0).count(), 1);
        assert_eq!(enumerate_diagrams(1).count(), 1);
        assert_eq!(enumerate_diagrams(2).count(), 3);
        assert_eq!(enumerate_diagrams(4).count(), 105);
        assert_eq!(diagram_count(6), 10395);
    }

    #[test]
    fn calibration_quadruple() {
        // u anchored at point 2, t = (1, 3).
        let q = four_term_quadruples(2)
            .find(|q| q.anchor == 2 && q.base_chords == vec![(1, 3)])
            .unwrap();
        let cross = ChordDiagram::from_chords(&[(1, 3), (2, 4)]).unwrap();
        let nested = ChordDiagram::from_chords(&[(1, 4), (2, 3)]).unwrap();
        assert_eq!(q.before_left, cross);
        assert_eq!(q.after_left, nested);
        assert_eq!(q.before_right, nested);
        assert_eq!(q.after_right, cross);
    }

    #[test]
    fn quadruple_counts() {
        assert_eq!(four_term_quadruples(1).count(), 0);
        // (2n-1) anchors x (2n-3)!! base matchings x (n-1) targets
        assert_eq!(four_term_quadruples(2).count(), 3);
        assert_eq!(four_term_quadruples(3).count(), 5 * 3 * 2);
        assert_eq!(four_term_quadruples(4).count(), 7 * 15 * 3);
    }
}
