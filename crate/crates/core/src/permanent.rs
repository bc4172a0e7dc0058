//! The permanent route: W_J(D) = Per(IM_J(D)), and W_JJ(D) = Per(IM(D)).
//!
//! `IM_J(D)` is a 3n × 3n matrix assembled from 3 × 3 blocks chosen by how
//! chords i and j sit relative to each other. The permanent is evaluated with
//! Ryser's inclusion-exclusion formula over column subsets, walking the
//! subsets in Gray-code order so each step adds or removes a single column
//! from the running row sums. A factorial-time expansion is kept alongside as
//! an independent check.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::chord::ChordDiagram;
use crate::poly::{IntPoly, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermanentError {
    #[error("matrix of size {size} exceeds the configured cap of {cap}")]
    SizeExceeded { size: usize, cap: usize },
    #[error("matrix rows are not all of length {0}")]
    NotSquare(usize),
}

/// Square matrix of polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn zeros(size: usize) -> Self {
        PolyMatrix {
            size,
            entries: vec![IntPoly::zero(); size * size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<IntPoly>>) -> Result<Self, PermanentError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(PermanentError::NotSquare(size));
        }
        Ok(PolyMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, PermanentError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| IntPoly::constant(c)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: Vec<IntPoly>) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, p) in entries.into_iter().enumerate() {
            m.set(i, i, p);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntPoly) {
        self.entries[i * self.size + j] = p;
    }

    pub fn row(&self, i: usize) -> &[IntPoly] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Row i of the result is row `rows[i]` of `self`, column j is column
    /// `cols[j]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                out.set(i, j, self.get(rows[i], cols[j]).clone());
            }
        }
        out
    }

    pub fn scale_row(&mut self, i: usize, c: &BigInt) {
        for j in 0..self.size {
            let scaled = self.get(i, j).scale(c);
            self.set(i, j, scaled);
        }
    }

    /// One line per row, entries in canonical form separated by `, `.
    pub fn render(&self, var: Variable) -> String {
        let mut out = String::new();
        for i in 0..self.size {
            let cells: Vec<String> = self.row(i).iter().map(|p| p.render(var)).collect();
            out.push('[');
            out.push_str(&cells.join(", "));
            out.push_str("]\n");
        }
        out
    }
}

/// Which 3 × 3 block sits at block position (i, j) of `IM_J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// A₀, on the diagonal.
    Diagonal,
    /// A₊: chords cross and i > j.
    Plus,
    /// A₋: chords cross and i < j.
    Minus,
    /// A_c: chord i lies inside chord j.
    Contained,
    Zero,
}

impl BlockKind {
    pub fn label(self) -> &'static str {
        match self {
            BlockKind::Diagonal => "A0",
            BlockKind::Plus => "A+",
            BlockKind::Minus => "A-",
            BlockKind::Contained => "Ac",
            BlockKind::Zero => "0",
        }
    }

    /// The block's entries as rows of `[constant, λ-coefficient]` pairs.
    fn entries(self) -> [[[i64; 2]; 3]; 3] {
        const O: [i64; 2] = [0, 0];
        const ONE: [i64; 2] = [1, 0];
        const NEG: [i64; 2] = [-1, 0];
        match self {
            BlockKind::Diagonal => [[[2, 1], O, O], [O, [2, 1], ONE], [[0, 1], [-2, -1], ONE]],
            BlockKind::Minus => [[O, O, O], [NEG, NEG, O], [O, O, O]],
            BlockKind::Plus => [[ONE, ONE, O], [O, O, O], [O, O, O]],
            BlockKind::Contained => [[ONE, ONE, O], [NEG, NEG, O], [O, O, O]],
            BlockKind::Zero => [[O; 3]; 3],
        }
    }

    pub fn matrix(self) -> PolyMatrix {
        let rows = self
            .entries()
            .iter()
            .map(|r| r.iter().map(|&[c0, c1]| IntPoly::linear(c0, c1)).collect())
            .collect();
        PolyMatrix::from_rows(rows).expect("3x3 block")
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn block_layout(d: &ChordDiagram) -> Vec<Vec<BlockKind>> {
    let n = d.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BlockKind::Diagonal
                    } else if d.crosses(i, j) {
                        if i > j {
                            BlockKind::Plus
                        } else {
                            BlockKind::Minus
                        }
                    } else if d.nested_in(i, j) {
                        BlockKind::Contained
                    } else {
                        BlockKind::Zero
                    }
                })
                .collect()
        })
        .collect()
}

/// Block-label view of `IM_J(D)`, one block row per line.
pub fn render_block_layout(d: &ChordDiagram) -> String {
    let mut out = String::new();
    for row in block_layout(d) {
        let labels: Vec<String> = row.iter().map(|b| format!("{:<2}", b.label())).collect();
        out.push_str(labels.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// The blown-up intersection matrix `IM_J(D)`.
pub fn build_imj(d: &ChordDiagram) -> PolyMatrix {
    let n = d.n();
    let mut m = PolyMatrix::zeros(3 * n);
    for (bi, row) in block_layout(d).into_iter().enumerate() {
        for (bj, kind) in row.into_iter().enumerate() {
            if kind == BlockKind::Zero {
                continue;
            }
            for (a, erow) in kind.entries().iter().enumerate() {
                for (b, &[c0, c1]) in erow.iter().enumerate() {
                    m.set(3 * bi + a, 3 * bj + b, IntPoly::linear(c0, c1));
                }
            }
        }
    }
    m
}

/// Size limits for the two permanent algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermanentConfig {
    pub naive_max_size: usize,
    pub ryser_max_size: usize,
}

impl Default for PermanentConfig {
    fn default() -> Self {
        PermanentConfig {
            naive_max_size: 9,
            ryser_max_size: 24,
        }
    }
}

/// Sum over all permutations of the products of selected entries.
pub fn permanent_naive(m: &PolyMatrix) -> Result<IntPoly, PermanentError> {
    permanent_naive_with(m, &PermanentConfig::default())
}

pub fn permanent_naive_with(
    m: &PolyMatrix,
    config: &PermanentConfig,
) -> Result<IntPoly, PermanentError> {
    if m.size() > config.naive_max_size {
        return Err(PermanentError::SizeExceeded {
            size: m.size(),
            cap: config.naive_max_size,
        });
    }
    fn expand(m: &PolyMatrix, row: usize, used: u32, prefix: &IntPoly, acc: &mut IntPoly) {
        if row == m.size() {
            *acc += prefix;
            return;
        }
        for col in 0..m.size() {
            if used & (1 << col) != 0 || m.get(row, col).is_zero() {
                continue;
            }
            let next = prefix * m.get(row, col);
            expand(m, row + 1, used | (1 << col), &next, acc);
        }
    }
    let mut acc = IntPoly::zero();
    expand(m, 0, 0, &IntPoly::one(), &mut acc);
    Ok(acc)
}

/// Arithmetic used inside the Ryser loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RyserKernel {
    /// 128-bit fixed-width coefficients when an a-priori bound proves every
    /// intermediate fits, arbitrary precision otherwise.
    #[default]
    Auto,
    /// Always arbitrary precision.
    BigInt,
}

/// Ryser's formula `Per(M) = (-1)^m Σ_S (-1)^{|S|} Π_i Σ_{j∈S} M[i][j]`.
pub fn permanent_ryser(m: &PolyMatrix) -> Result<IntPoly, PermanentError> {
    permanent_ryser_with(m, &PermanentConfig::default(), RyserKernel::Auto)
}

pub fn permanent_ryser_with(
    m: &PolyMatrix,
    config: &PermanentConfig,
    kernel: RyserKernel,
) -> Result<IntPoly, PermanentError> {
    let size = m.size();
    if size > config.ryser_max_size {
        return Err(PermanentError::SizeExceeded {
            size,
            cap: config.ryser_max_size,
        });
    }
    if size == 0 {
        return Ok(IntPoly::one());
    }
    let total: u64 = 1 << size;
    let chunks = chunk_ranges(total);
    let sum = match kernel {
        RyserKernel::Auto if fits_i128(m) => {
            let layout = WideLayout::new(m);
            let parts: Vec<Vec<i128>> = chunks
                .par_iter()
                .map(|&(start, end)| layout.chunk(m, start, end))
                .collect();
            let mut acc = vec![0i128; layout.out_len];
            for part in parts {
                for (a, b) in acc.iter_mut().zip(part) {
                    *a += b;
                }
            }
            IntPoly::from_coeffs(acc.into_iter().map(BigInt::from).collect())
        }
        _ => chunks
            .par_iter()
            .map(|&(start, end)| big_chunk(m, start, end))
            .collect::<Vec<_>>()
            .into_iter()
            .sum(),
    };
    Ok(if size % 2 == 1 { -sum } else { sum })
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let pieces = total.min(1024);
    let step = total / pieces;
    (0..pieces)
        .map(|k| {
            (
                k * step,
                if k + 1 == pieces {
                    total
                } else {
                    (k + 1) * step
                },
            )
        })
        .collect()
}

fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

fn l1_norm(p: &IntPoly) -> BigInt {
    p.coeffs().iter().map(|c| c.abs()).sum()
}

/// Every Ryser term is bounded in coefficient L1 norm by the product of the
/// row L1 norms, and there are 2^m terms.
fn fits_i128(m: &PolyMatrix) -> bool {
    let bound: BigInt = (0..m.size())
        .map(|i| m.row(i).iter().map(l1_norm).sum::<BigInt>())
        .product::<BigInt>()
        << m.size();
    bound < (BigInt::one() << 126)
}

struct WideLayout {
    /// Coefficients per row sum.
    width: usize,
    out_len: usize,
    /// Column-major copy of the matrix, `width` coefficients per entry.
    cols: Vec<i128>,
}

impl WideLayout {
    fn new(m: &PolyMatrix) -> Self {
        let size = m.size();
        let row_deg: Vec<usize> = (0..size)
            .map(|i| {
                m.row(i)
                    .iter()
                    .filter_map(IntPoly::degree)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let width = row_deg.iter().copied().max().unwrap_or(0) + 1;
        let out_len = row_deg.iter().sum::<usize>() + 1;
        let mut cols = vec![0i128; size * size * width];
        for j in 0..size {
            for i in 0..size {
                for (k, c) in m.get(i, j).coeffs().iter().enumerate() {
                    cols[(j * size + i) * width + k] = c.to_i128().expect("bounded entry");
                }
            }
        }
        WideLayout {
            width,
            out_len,
            cols,
        }
    }

    fn chunk(&self, m: &PolyMatrix, start: u64, end: u64) -> Vec<i128> {
        let size = m.size();
        let w = self.width;
        let mut sums = vec![0i128; size * w];
        let mut subset = gray(start);
        for j in 0..size {
            if subset & (1 << j) != 0 {
                self.toggle(&mut sums, j, true);
            }
        }
        let mut acc = vec![0i128; self.out_len];
        let mut prod = vec![0i128; self.out_len];
        let mut tmp = vec![0i128; self.out_len];
        self.term(&sums, subset, &mut acc, &mut prod, &mut tmp);
        for k in start + 1..end {
            let bit = k.trailing_zeros() as usize;
            subset ^= 1 << bit;
            self.toggle(&mut sums, bit, subset & (1 << bit) != 0);
            self.term(&sums, subset, &mut acc, &mut prod, &mut tmp);
        }
        acc
    }

    fn toggle(&self, sums: &mut [i128], col: usize, add: bool) {
        let size = sums.len() / self.width;
        let column = &self.cols[col * size * self.width..(col + 1) * size * self.width];
        if add {
            sums.iter_mut().zip(column).for_each(|(s, c)| *s += c);
        } else {
            sums.iter_mut().zip(column).for_each(|(s, c)| *s -= c);
        }
    }

    fn term(
        &self,
        sums: &[i128],
        subset: u64,
        acc: &mut [i128],
        prod: &mut [i128],
        tmp: &mut [i128],
    ) {
        let w = self.width;
        prod.fill(0);
        prod[0] = 1;
        let mut deg = 0usize;
        for row in sums.chunks_exact(w) {
            let Some(rdeg) = row.iter().rposition(|&c| c != 0) else {
                return;
            };
            tmp[..=deg + rdeg].fill(0);
            for (a, &pa) in prod[..=deg].iter().enumerate() {
                if pa == 0 {
                    continue;
                }
                for (b, &rb) in row[..=rdeg].iter().enumerate() {
                    tmp[a + b] += pa * rb;
                }
            }
            deg += rdeg;
            prod[..=deg].copy_from_slice(&tmp[..=deg]);
        }
        if subset.count_ones().is_multiple_of(2) {
            acc.iter_mut().zip(prod.iter()).for_each(|(a, p)| *a += p);
        } else {
            acc.iter_mut().zip(prod.iter()).for_each(|(a, p)| *a -= p);
        }
    }
}

fn big_chunk(m: &PolyMatrix, start: u64, end: u64) -> IntPoly {
    let size = m.size();
    let mut sums = vec![IntPoly::zero(); size];
    let mut subset = gray(start);
    for j in 0..size {
        if subset & (1 << j) != 0 {
            for (i, s) in sums.iter_mut().enumerate() {
                *s += m.get(i, j);
            }
        }
    }
    let term = |sums: &[IntPoly], subset: u64| -> Option<IntPoly> {
        if sums.iter().any(IntPoly::is_zero) {
            return None;
        }
        let p: IntPoly = sums.iter().fold(IntPoly::one(), |acc, s| &acc * s);
        Some(if subset.count_ones().is_multiple_of(2) {
            p
        } else {
            -p
        })
    };
    let mut acc = IntPoly::zero();
    if let Some(t) = term(&sums, subset) {
        acc += t;
    }
    for k in start + 1..end {
        let bit = k.trailing_zeros() as usize;
        subset ^= 1 << bit;
        let adding = subset & (1 << bit) != 0;
        for (i, s) in sums.iter_mut().enumerate() {
            if adding {
                *s += m.get(i, bit);
            } else {
                *s -= m.get(i, bit);
            }
        }
        if let Some(t) = term(&sums, subset) {
            acc += t;
        }
    }
    acc
}

/// W_J(D) as the permanent of `IM_J(D)`.
pub fn wj_via_permanent(d: &ChordDiagram) -> Result<IntPoly, PermanentError> {
    wj_via_permanent_with(d, &PermanentConfig::default())
}

pub fn wj_via_permanent_with(
    d: &ChordDiagram,
    config: &PermanentConfig,
) -> Result<IntPoly, PermanentError> {
    permanent_ryser_with(&build_imj(d), config, RyserKernel::Auto)
}

/// W_JJ(D), the top coefficient of W_J(D), as the permanent of `IM(D)`.
pub fn wjj_via_permanent(d: &ChordDiagram) -> Result<BigInt, PermanentError> {
    wjj_via_permanent_with(d, &PermanentConfig::default())
}

pub fn wjj_via_permanent_with(
    d: &ChordDiagram,
    config: &PermanentConfig,
) -> Result<BigInt, PermanentError> {
    let im = PolyMatrix::from_integers(&d.intersection_matrix())?;
    Ok(permanent_ryser_with(&im, config, RyserKernel::Auto)?.coefficient(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn golden() -> ChordDiagram {
        ChordDiagram::parse_cdp("CDP[5,7,6,8,1,3,2,4]").unwrap()
    }

    #[test]
    fn single_chord_is_a0() {
        let d = ChordDiagram::parse_cdp("2 1").unwrap();
        assert_eq!(build_imj(&d), BlockKind::Diagonal.matrix());
        assert_eq!(build_imj(&ChordDiagram::empty()).size(), 0);
    }

    #[test]
    fn golden_layout() {
        use BlockKind::*;
        assert_eq!(
            block_layout(&golden()),
            vec![
                vec![Diagonal, Minus, Minus, Minus],
                vec![Plus, Diagonal, Zero, Minus],
                vec![Plus, Contained, Diagonal, Minus],
                vec![Plus, Plus, Plus, Diagonal],
            ]
        );
        assert_eq!(
            render_block_layout(&golden()),
            "A0 A- A- A-\nA+ A0 0  A-\nA+ Ac A0 A-\nA+ A+ A+ A0\n"
        );
    }

    #[test]
    fn small_permanents() {
        let a0 = BlockKind::Diagonal.matrix();
        assert!(permanent_naive(&a0).unwrap().is_zero());
        assert!(permanent_ryser(&a0).unwrap().is_zero());
        assert_eq!(
            permanent_naive(&PolyMatrix::zeros(0)).unwrap(),
            IntPoly::one()
        );
        assert_eq!(
            permanent_ryser(&PolyMatrix::zeros(0)).unwrap(),
            IntPoly::one()
        );
        let m = PolyMatrix::from_integers(&[vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(permanent_naive(&m).unwrap(), IntPoly::constant(-1));
        assert_eq!(permanent_ryser(&m).unwrap(), IntPoly::constant(-1));
    }

    #[test]
    fn diagonal_permanent_is_product() {
        let ps = vec![
            IntPoly::from_i64s(&[1, 2]),
            IntPoly::from_i64s(&[-3, 0, 1]),
            IntPoly::from_i64s(&[5]),
        ];
        let expected: IntPoly = ps.iter().cloned().product();
        let m = PolyMatrix::diagonal(ps);
        assert_eq!(permanent_ryser(&m).unwrap(), expected);
        assert_eq!(
            permanent_ryser_with(&m, &PermanentConfig::default(), RyserKernel::BigInt).unwrap(),
            expected
        );
    }

    #[test]
    fn golden_value() {
        let expected = IntPoly::from_i64s(&[0, -40, -4, 16, 4]);
        assert_eq!(wj_via_permanent(&golden()).unwrap(), expected);
        assert_eq!(wjj_via_permanent(&golden()).unwrap(), BigInt::from(4));
    }

    #[test]
    fn cross_and_single() {
        let cross = ChordDiagram::from_chords(&[(1, 3), (2, 4)]).unwrap();
        assert_eq!(
            wj_via_permanent(&cross).unwrap(),
            IntPoly::from_i64s(&[0, -2, -1])
        );
        assert_eq!(wjj_via_permanent(&cross).unwrap(), BigInt::from(-1));
        let single = ChordDiagram::from_chords(&[(1, 2)]).unwrap();
        assert!(wj_via_permanent(&single).unwrap().is_zero());
        assert!(wjj_via_permanent(&single).unwrap().is_zero());
        assert_eq!(
            wj_via_permanent(&ChordDiagram::empty()).unwrap(),
            IntPoly::one()
        );
    }

    #[test]
    fn caps_are_reported() {
        let config = PermanentConfig {
            naive_max_size: 2,
            ryser_max_size: 2,
        };
        let a0 = BlockKind::Diagonal.matrix();
        assert_eq!(
            permanent_naive_with(&a0, &config),
            Err(PermanentError::SizeExceeded { size: 3, cap: 2 })
        );
        assert_eq!(
            wj_via_permanent_with(&ChordDiagram::parse_cdp("2 1").unwrap(), &config),
            Err(PermanentError::SizeExceeded { size: 3, cap: 2 })
        );
        assert!(permanent_naive(&PolyMatrix::zeros(10)).is_err());
    }

    #[test]
    fn non_square_rows_rejected() {
        let rows = vec![vec![IntPoly::one()], vec![]];
        assert_eq!(
            PolyMatrix::from_rows(rows),
            Err(PermanentError::NotSquare(2))
        );
    }

    #[test]
    fn huge_entries_take_bigint_path() {
        let big = IntPoly::constant(BigInt::one() << 100);
        let m = PolyMatrix::from_rows(vec![
            vec![big.clone(), big.clone()],
            vec![big.clone(), big.clone()],
        ])
        .unwrap();
        assert!(!fits_i128(&m));
        let expected = IntPoly::constant(BigInt::from(2) << 200);
        assert_eq!(permanent_ryser(&m).unwrap(), expected);
        assert_eq!(permanent_naive(&m).unwrap(), expected);
    }
}
