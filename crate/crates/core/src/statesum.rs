//! The state-sum route: W_J(D) = J(LID(D)) at unit arc weights.
//!
//! `LID(D)` has one vertex per chord, a loop at every vertex, an uncolored arc
//! i → j (i < j) for each crossing pair and a red arc i → j whenever chord i
//! lies inside chord j. The partition function sums over acceptable objects:
//! sets of arcs, each with one thickened end, such that every vertex meets 0,
//! 2 or 4 arc ends (a loop counts twice), half of those ends are thickened
//! there, and when two thickened ends meet a vertex one enters and one leaves.
//!
//! ```text
//! J(G) = Σ_K 2^deg4(K) (λ+2)^(|V| - deg4(K)) x_K (-1)^a(K)
//! ```
//!
//! where `a(K)` counts arcs thickened at their initial end.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::chord::ChordDiagram;
use crate::poly::{IntPoly, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("arc {0} -> {1} is a self-arc; loops are implicit")]
    SelfArc(usize, usize),
    #[error("uncolored arc {0} -> {1} must run from the smaller to the larger vertex")]
    Misoriented(usize, usize),
    #[error("arc between {0} and {1} already present")]
    Duplicate(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateSumError {
    #[error("coefficient index {k} out of range for {n} chords")]
    CoefficientOutOfRange { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
}

/// Digraph with a loop at every vertex, uncolored arcs oriented from the
/// smaller to the larger vertex, and red arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledIntersectionDigraph {
    n: usize,
    loop_weights: Vec<i64>,
    uncolored: Vec<Arc>,
    red: Vec<Arc>,
}

impl LabeledIntersectionDigraph {
    pub fn new(n: usize) -> Self {
        LabeledIntersectionDigraph {
            n,
            loop_weights: vec![1; n],
            uncolored: Vec::new(),
            red: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn loop_weights(&self) -> &[i64] {
        &self.loop_weights
    }

    pub fn uncolored_arcs(&self) -> &[Arc] {
        &self.uncolored
    }

    pub fn red_arcs(&self) -> &[Arc] {
        &self.red
    }

    fn check_pair(&self, tail: usize, head: usize) -> Result<(), DigraphError> {
        for vertex in [tail, head] {
            if vertex >= self.n {
                return Err(DigraphError::VertexOutOfRange { vertex, n: self.n });
            }
        }
        if tail == head {
            return Err(DigraphError::SelfArc(tail, head));
        }
        let same = |a: &Arc| (a.tail, a.head) == (tail, head) || (a.tail, a.head) == (head, tail);
        if self.uncolored.iter().chain(&self.red).any(same) {
            return Err(DigraphError::Duplicate(tail, head));
        }
        Ok(())
    }

    pub fn add_uncolored(
        &mut self,
        tail: usize,
        head: usize,
        weight: i64,
    ) -> Result<(), DigraphError> {
        self.check_pair(tail, head)?;
        if tail > head {
            return Err(DigraphError::Misoriented(tail, head));
        }
        self.uncolored.push(Arc { tail, head, weight });
        Ok(())
    }

    /// Red arc `inner -> outer`.
    pub fn add_red(&mut self, inner: usize, outer: usize, weight: i64) -> Result<(), DigraphError> {
        self.check_pair(inner, outer)?;
        self.red.push(Arc {
            tail: inner,
            head: outer,
            weight,
        });
        Ok(())
    }

    pub fn set_loop_weight(&mut self, vertex: usize, weight: i64) -> Result<(), DigraphError> {
        let n = self.n;
        let slot = self
            .loop_weights
            .get_mut(vertex)
            .ok_or(DigraphError::VertexOutOfRange { vertex, n })?;
        *slot = weight;
        Ok(())
    }
}

/// `LID(D)` with unit weights.
pub fn build_lid(d: &ChordDiagram) -> LabeledIntersectionDigraph {
    let n = d.n();
    let mut g = LabeledIntersectionDigraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if d.crosses(i, j) {
                g.uncolored.push(Arc {
                    tail: i,
                    head: j,
                    weight: 1,
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if d.nested_in(i, j) {
                g.red.push(Arc {
                    tail: i,
                    head: j,
                    weight: 1,
                });
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Loop,
    Uncolored,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThickEnd {
    Initial,
    Terminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThickenedArc {
    pub kind: ArcKind,
    pub tail: usize,
    pub head: usize,
    pub thickened: ThickEnd,
}

impl ThickenedArc {
    pub fn thick_vertex(&self) -> usize {
        match self.thickened {
            ThickEnd::Initial => self.tail,
            ThickEnd::Terminal => self.head,
        }
    }

    /// Thickened at the initial end, i.e. counted by `a(K)`.
    pub fn agrees(&self) -> bool {
        self.thickened == ThickEnd::Initial
    }
}

impl fmt::Display for ThickenedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ArcKind::Loop => return write!(f, "loop{}", self.tail + 1),
            ArcKind::Uncolored => "",
            ArcKind::Red => "r",
        };
        write!(
            f,
            "{}{}->{}@{}",
            tag,
            self.tail + 1,
            self.head + 1,
            self.thick_vertex() + 1
        )
    }
}

/// One selectable element of the candidate universe, with its weight x_e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub arc: ThickenedArc,
    pub weight: i64,
}

/// Every thickened arc that may belong to an acceptable object: each loop
/// (thickened at its start), each uncolored arc thickened at either end, and
/// for each red arc i -> j both orientations, thickened at i.
pub fn candidate_universe(g: &LabeledIntersectionDigraph) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (v, &weight) in g.loop_weights.iter().enumerate() {
        out.push(Candidate {
            arc: ThickenedArc {
                kind: ArcKind::Loop,
                tail: v,
                head: v,
                thickened: ThickEnd::Initial,
            },
            weight,
        });
    }
    for a in &g.uncolored {
        for thickened in [ThickEnd::Initial, ThickEnd::Terminal] {
            out.push(Candidate {
                arc: ThickenedArc {
                    kind: ArcKind::Uncolored,
                    tail: a.tail,
                    head: a.head,
                    thickened,
                },
                weight: a.weight,
            });
        }
    }
    for a in &g.red {
        out.push(Candidate {
            arc: ThickenedArc {
                kind: ArcKind::Red,
                tail: a.tail,
                head: a.head,
                thickened: ThickEnd::Initial,
            },
            weight: a.weight,
        });
        out.push(Candidate {
            arc: ThickenedArc {
                kind: ArcKind::Red,
                tail: a.head,
                head: a.tail,
                thickened: ThickEnd::Terminal,
            },
            weight: a.weight,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("arc {0} is not available in the digraph")]
    NotInDigraph(ThickenedArc),
    #[error("arc {0} appears twice")]
    Repeated(ThickenedArc),
    #[error("vertex {vertex} has degree {degree}")]
    BadDegree { vertex: usize, degree: usize },
    #[error("vertex {vertex} has {thick} thickened ends out of {degree}")]
    NotHalfThickened {
        vertex: usize,
        thick: usize,
        degree: usize,
    },
    #[error("both arcs thickened at vertex {0} point the same way")]
    SameDirection(usize),
}

/// Checks a set of thickened arcs against the acceptability rules.
pub fn validate(g: &LabeledIntersectionDigraph, arcs: &[ThickenedArc]) -> Result<(), Violation> {
    let universe: BTreeSet<ThickenedArc> = candidate_universe(g).iter().map(|c| c.arc).collect();
    let mut seen = BTreeSet::new();
    for arc in arcs {
        if !universe.contains(arc) {
            return Err(Violation::NotInDigraph(*arc));
        }
        if !seen.insert(*arc) {
            return Err(Violation::Repeated(*arc));
        }
    }
    for v in 0..g.n {
        let mut degree = 0;
        let mut entering = 0;
        let mut leaving = 0;
        for arc in arcs {
            if arc.kind == ArcKind::Loop {
                if arc.tail == v {
                    degree += 2;
                    leaving += 1;
                }
                continue;
            }
            degree += usize::from(arc.tail == v) + usize::from(arc.head == v);
            if arc.thick_vertex() == v {
                if arc.tail == v {
                    leaving += 1;
                } else {
                    entering += 1;
                }
            }
        }
        let thick = entering + leaving;
        if !matches!(degree, 0 | 2 | 4) {
            return Err(Violation::BadDegree { vertex: v, degree });
        }
        if 2 * thick != degree {
            return Err(Violation::NotHalfThickened {
                vertex: v,
                thick,
                degree,
            });
        }
        if thick == 2 && entering != 1 {
            return Err(Violation::SameDirection(v));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptableObject {
    pub arcs: Vec<ThickenedArc>,
    pub deg4: usize,
    /// Number of arcs thickened at their initial end.
    pub a: usize,
    /// x_K, the product of arc weights.
    pub weight: BigInt,
}

impl AcceptableObject {
    pub fn sign(&self) -> i64 {
        if self.a.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// 2^deg4 (λ+2)^(|V|-deg4) x_K (-1)^a.
    pub fn contribution(&self, vertex_count: usize) -> IntPoly {
        let scale = (&self.weight << self.deg4) * self.sign();
        IntPoly::linear(2, 1)
            .pow((vertex_count - self.deg4) as u32)
            .scale(&scale)
    }
}

/// Depth-first search over the candidate list with degree-feasibility
/// pruning. Candidates are processed grouped by their largest endpoint, so
/// each vertex is final once its last candidate has been decided.
struct Search<'a, F> {
    cands: Vec<Candidate>,
    closing: Vec<Vec<usize>>,
    degree: Vec<u8>,
    entering: Vec<u8>,
    leaving: Vec<u8>,
    chosen: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(&[Candidate], &[usize])> Search<'_, F> {
    fn run(&mut self, idx: usize) {
        if idx == self.cands.len() {
            (self.visit)(&self.cands, &self.chosen);
            return;
        }
        // Leave out.
        if self.closed_ok(idx) {
            self.run(idx + 1);
        }
        // Take.
        if self.apply(idx, true) {
            self.chosen.push(idx);
            if self.closed_ok(idx) {
                self.run(idx + 1);
            }
            self.chosen.pop();
        }
        self.apply(idx, false);
    }

    /// Adds (or removes) a candidate's incidences; returns whether the
    /// partial state is still feasible.
    fn apply(&mut self, idx: usize, add: bool) -> bool {
        let arc = self.cands[idx].arc;
        let step = |x: &mut u8| {
            if add {
                *x += 1
            } else {
                *x -= 1
            }
        };
        if arc.kind == ArcKind::Loop {
            step(&mut self.degree[arc.tail]);
            step(&mut self.degree[arc.tail]);
            step(&mut self.leaving[arc.tail]);
        } else {
            step(&mut self.degree[arc.tail]);
            step(&mut self.degree[arc.head]);
            let t = arc.thick_vertex();
            if t == arc.tail {
                step(&mut self.leaving[t]);
            } else {
                step(&mut self.entering[t]);
            }
        }
        let ok = |v: usize| self.degree[v] <= 4 && self.entering[v] <= 1 && self.leaving[v] <= 1;
        ok(arc.tail) && ok(arc.head)
    }

    fn closed_ok(&self, idx: usize) -> bool {
        self.closing[idx].iter().all(|&v| {
            let d = self.degree[v];
            (d == 0 || d == 2 || d == 4) && 2 * (self.entering[v] + self.leaving[v]) == d
        })
    }
}

/// Visits every acceptable object built from `cands`, which must be a
/// permutation of [`candidate_universe`]. The callback receives the
/// (internally reordered) candidate list and the chosen indices into it.
pub fn for_each_acceptable_in<F>(n: usize, mut cands: Vec<Candidate>, mut visit: F)
where
    F: FnMut(&[Candidate], &[usize]),
{
    cands.sort_by_key(|c| c.arc.tail.max(c.arc.head));
    let mut last = vec![None; n];
    for (i, c) in cands.iter().enumerate() {
        last[c.arc.tail] = Some(i);
        last[c.arc.head] = Some(i);
    }
    let mut closing = vec![Vec::new(); cands.len()];
    for (v, l) in last.into_iter().enumerate() {
        if let Some(i) = l {
            closing[i].push(v);
        }
    }
    if n == 0 || cands.is_empty() {
        visit(&cands, &[]);
        return;
    }
    let mut search = Search {
        cands,
        closing,
        degree: vec![0; n],
        entering: vec![0; n],
        leaving: vec![0; n],
        chosen: Vec::new(),
        visit: &mut visit,
    };
    search.run(0);
}

pub fn for_each_acceptable<F>(g: &LabeledIntersectionDigraph, visit: F)
where
    F: FnMut(&[Candidate], &[usize]),
{
    for_each_acceptable_in(g.n, candidate_universe(g), visit);
}

fn summarize(n: usize, cands: &[Candidate], chosen: &[usize]) -> (usize, usize, BigInt) {
    let mut degree = vec![0u8; n];
    let mut a = 0;
    let mut weight = BigInt::from(1);
    for &i in chosen {
        let arc = cands[i].arc;
        degree[arc.tail] += 1;
        degree[arc.head] += 1;
        a += usize::from(arc.agrees());
        weight *= cands[i].weight;
    }
    let deg4 = degree.iter().filter(|&&d| d == 4).count();
    (deg4, a, weight)
}

pub fn enumerate_acceptable(g: &LabeledIntersectionDigraph) -> Vec<AcceptableObject> {
    let n = g.n;
    let mut out = Vec::new();
    for_each_acceptable(g, |cands, chosen| {
        let (deg4, a, weight) = summarize(n, cands, chosen);
        let mut arcs: Vec<ThickenedArc> = chosen.iter().map(|&i| cands[i].arc).collect();
        arcs.sort();
        out.push(AcceptableObject {
            arcs,
            deg4,
            a,
            weight,
        });
    });
    out
}

/// Signed weighted counts `c_k = Σ_{deg4(K)=k} (-1)^a(K) x_K`, indexed by k.
pub fn signed_counts(g: &LabeledIntersectionDigraph) -> Vec<BigInt> {
    signed_counts_in(g.n, candidate_universe(g))
}

pub fn signed_counts_in(n: usize, cands: Vec<Candidate>) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); n + 1];
    for_each_acceptable_in(n, cands, |cands, chosen| {
        let (deg4, a, weight) = summarize(n, cands, chosen);
        if a % 2 == 0 {
            counts[deg4] += weight;
        } else {
            counts[deg4] -= weight;
        }
    });
    counts
}

/// Assembles J from the signed counts of [`signed_counts`].
pub fn j_from_counts(n: usize, counts: &[BigInt]) -> IntPoly {
    let d = IntPoly::linear(2, 1);
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| d.pow((n - k) as u32).scale(&(c << k)))
        .sum()
}

/// The partition function J(G).
pub fn j_state_sum(g: &LabeledIntersectionDigraph) -> IntPoly {
    j_from_counts(g.n, &signed_counts(g))
}

/// W_J(D) = J(LID(D)) with unit weights.
pub fn wj_via_statesum(d: &ChordDiagram) -> IntPoly {
    j_state_sum(&build_lid(d))
}

/// `2^k Σ_{deg4(K)=k} (-1)^a(K)`, the coefficient of d^(n-k) of W_J in the
/// basis d = λ + 2.
pub fn wjj_n_coefficient(d: &ChordDiagram, k: usize) -> Result<BigInt, StateSumError> {
    let n = d.n();
    if k > n {
        return Err(StateSumError::CoefficientOutOfRange { k, n });
    }
    Ok(signed_counts(&build_lid(d))[k].clone() << k)
}

/// All d-basis coefficients at once, indexed by k (the power is n - k).
pub fn wjj_n_coefficients(d: &ChordDiagram) -> Vec<BigInt> {
    signed_counts(&build_lid(d))
        .into_iter()
        .enumerate()
        .map(|(k, c)| c << k)
        .collect()
}

/// Line-oriented census record for one acceptable object.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub arcs: Vec<CensusArc>,
    pub deg4: usize,
    pub a: usize,
    pub contribution: String,
}

/// Vertices are one-based here, matching chord numbering.
#[derive(Debug, Clone, Serialize)]
pub struct CensusArc {
    pub kind: ArcKind,
    pub tail: usize,
    pub head: usize,
    pub thickened: ThickEnd,
}

pub fn census(g: &LabeledIntersectionDigraph, var: Variable) -> Vec<CensusRecord> {
    enumerate_acceptable(g)
        .into_iter()
        .map(|obj| CensusRecord {
            arcs: obj
                .arcs
                .iter()
                .map(|a| CensusArc {
                    kind: a.kind,
                    tail: a.tail + 1,
                    head: a.head + 1,
                    thickened: a.thickened,
                })
                .collect(),
            deg4: obj.deg4,
            a: obj.a,
            contribution: obj.contribution(g.n).render(var),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross() -> ChordDiagram {
        ChordDiagram::from_chords(&[(1, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn lid_of_golden() {
        let d = ChordDiagram::parse_cdp("CDP[5,7,6,8,1,3,2,4]").unwrap();
        let g = build_lid(&d);
        assert_eq!(g.vertex_count(), 4);
        let unc: Vec<(usize, usize)> = g
            .uncolored_arcs()
            .iter()
            .map(|a| (a.tail, a.head))
            .collect();
        assert_eq!(unc, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        let red: Vec<(usize, usize)> = g.red_arcs().iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(red, vec![(2, 1)]);
    }

    #[test]
    fn lid_of_small_diagrams() {
        let g = build_lid(&ChordDiagram::parse_cdp("2 1").unwrap());
        assert_eq!(g.vertex_count(), 1);
        assert!(g.uncolored_arcs().is_empty() && g.red_arcs().is_empty());
        let nested = ChordDiagram::from_chords(&[(1, 4), (2, 3)]).unwrap();
        let g = build_lid(&nested);
        assert!(g.uncolored_arcs().is_empty());
        assert_eq!(
            g.red_arcs(),
            &[Arc {
                tail: 1,
                head: 0,
                weight: 1
            }]
        );
    }

    #[test]
    fn single_loop_objects() {
        let g = LabeledIntersectionDigraph::new(1);
        let objs = enumerate_acceptable(&g);
        assert_eq!(objs.len(), 2);
        assert!(j_state_sum(&g).is_zero());
    }

    #[test]
    fn cross_objects() {
        let g = build_lid(&cross());
        let mut objs = enumerate_acceptable(&g);
        objs.sort_by(|x, y| x.arcs.cmp(&y.arcs));
        let mut stats: Vec<(usize, usize, usize)> =
            objs.iter().map(|o| (o.arcs.len(), o.deg4, o.a)).collect();
        stats.sort();
        // (size, deg4, a) for ∅, {l1}, {l2}, {l1,l2}, {e@1,e@2}, {e@1,e@2,l2}
        assert_eq!(
            stats,
            vec![
                (0, 0, 0),
                (1, 0, 1),
                (1, 0, 1),
                (2, 0, 1),
                (2, 0, 2),
                (3, 1, 2)
            ]
        );
        for o in &objs {
            assert_eq!(validate(&g, &o.arcs), Ok(()));
        }
        assert_eq!(j_state_sum(&g), IntPoly::from_i64s(&[0, -2, -1]));
    }

    #[test]
    fn cross_coefficients() {
        assert_eq!(wjj_n_coefficient(&cross(), 0).unwrap(), BigInt::from(-1));
        assert_eq!(wjj_n_coefficient(&cross(), 1).unwrap(), BigInt::from(2));
        assert_eq!(wjj_n_coefficient(&cross(), 2).unwrap(), BigInt::from(0));
        assert_eq!(
            wjj_n_coefficient(&cross(), 3),
            Err(StateSumError::CoefficientOutOfRange { k: 3, n: 2 })
        );
    }

    #[test]
    fn normalization_and_one_term() {
        assert_eq!(wj_via_statesum(&ChordDiagram::empty()), IntPoly::one());
        assert_eq!(
            j_state_sum(&LabeledIntersectionDigraph::new(0)),
            IntPoly::one()
        );
        let nested = ChordDiagram::from_chords(&[(1, 4), (2, 3)]).unwrap();
        assert!(wj_via_statesum(&nested).is_zero());
    }

    #[test]
    fn golden_value() {
        let d = ChordDiagram::parse_cdp("CDP[5,7,6,8,1,3,2,4]").unwrap();
        assert_eq!(
            wj_via_statesum(&d),
            IntPoly::from_i64s(&[0, -40, -4, 16, 4])
        );
    }

    #[test]
    fn validator_rejections() {
        let g = build_lid(&cross());
        let e1 = ThickenedArc {
            kind: ArcKind::Uncolored,
            tail: 0,
            head: 1,
            thickened: ThickEnd::Initial,
        };
        let l1 = ThickenedArc {
            kind: ArcKind::Loop,
            tail: 0,
            head: 0,
            thickened: ThickEnd::Initial,
        };
        let e2 = ThickenedArc {
            thickened: ThickEnd::Terminal,
            ..e1
        };
        assert!(matches!(
            validate(&g, &[e1]),
            Err(Violation::BadDegree { .. })
        ));
        assert_eq!(validate(&g, &[e1, e1]), Err(Violation::Repeated(e1)));
        assert_eq!(
            validate(&g, &[e1, e2, l1]),
            Err(Violation::SameDirection(0))
        );
        let backwards = ThickenedArc {
            tail: 1,
            head: 0,
            ..e1
        };
        assert_eq!(
            validate(&g, &[backwards]),
            Err(Violation::NotInDigraph(backwards))
        );
        let e1_term = ThickenedArc {
            thickened: ThickEnd::Terminal,
            ..e1
        };
        assert!(matches!(
            validate(&g, &[e1_term, e2]),
            Err(Violation::Repeated(_))
        ));
    }

    #[test]
    fn digraph_construction_errors() {
        let mut g = LabeledIntersectionDigraph::new(3);
        assert_eq!(g.add_uncolored(0, 1, 1), Ok(()));
        assert_eq!(
            g.add_uncolored(2, 1, 1),
            Err(DigraphError::Misoriented(2, 1))
        );
        assert_eq!(g.add_red(1, 0, 1), Err(DigraphError::Duplicate(1, 0)));
        assert_eq!(g.add_red(1, 1, 1), Err(DigraphError::SelfArc(1, 1)));
        assert_eq!(
            g.add_red(5, 1, 1),
            Err(DigraphError::VertexOutOfRange { vertex: 5, n: 3 })
        );
        assert!(g.set_loop_weight(3, 2).is_err());
    }

    #[test]
    fn weights_enter_multiplicatively() {
        // Single vertex with loop weight w: J = (λ+2)(1 - w).
        let mut g = LabeledIntersectionDigraph::new(1);
        g.set_loop_weight(0, 3).unwrap();
        assert_eq!(j_state_sum(&g), IntPoly::from_i64s(&[-4, -2]));
    }

    #[test]
    fn census_records() {
        let recs = census(&build_lid(&cross()), Variable::X);
        assert_eq!(recs.len(), 6);
        let total: IntPoly = recs
            .iter()
            .map(|r| r.contribution.parse::<IntPoly>().unwrap())
            .sum();
        assert_eq!(total, IntPoly::from_i64s(&[0, -2, -1]));
        let json = serde_json::to_string(&recs[0]).unwrap();
        assert!(json.contains("\"deg4\""));
    }
}
