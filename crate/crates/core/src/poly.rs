//! Dense univariate polynomials in λ with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending order (`coeffs[k]` is the coefficient
//! of λ^k) and always normalized so that the highest stored coefficient is
//! nonzero. The zero polynomial is the empty vector.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Name under which the indeterminate is printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variable {
    /// `λ`, the default.
    #[default]
    Lambda,
    /// `lambda`, for ASCII-only consumers.
    LambdaAscii,
    /// `x`, the Mathematica-compatible spelling.
    X,
    /// `d`, used when printing in the shifted basis d = λ + 2.
    D,
}

impl Variable {
    pub fn symbol(self) -> &'static str {
        match self {
            Variable::Lambda => "λ",
            Variable::LambdaAscii => "lambda",
            Variable::X => "x",
            Variable::D => "d",
        }
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The indeterminate λ itself.
    pub fn lambda() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// `c0 + c1 λ`.
    pub fn linear<A: Into<BigInt>, B: Into<BigInt>>(c0: A, c1: B) -> Self {
        Self::from_coeffs(vec![c0.into(), c1.into()])
    }

    /// `c λ^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of λ^k, zero past the degree.
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Returns `p(λ + shift)`, by Horner's scheme over the ring.
    pub fn shift(&self, shift: i64) -> IntPoly {
        let step = IntPoly::linear(shift, 1);
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &step;
            acc += &IntPoly::constant(c.clone());
        }
        acc
    }

    /// Rewrites a polynomial in λ as a polynomial in d = λ + 2, i.e. returns
    /// `q` with `q(d) = p(d - 2)`.
    pub fn to_d_basis(&self) -> IntPoly {
        self.shift(-2)
    }

    /// Inverse of [`IntPoly::to_d_basis`]: substitutes d = λ + 2.
    pub fn from_d_basis(&self) -> IntPoly {
        self.shift(2)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ascending coefficients as decimal strings.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    /// Canonical text: descending powers, explicit ` + ` / ` - ` separators,
    /// a space between coefficient and variable, `0` for the zero polynomial.
    pub fn render(&self, var: Variable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sym = var.symbol();
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if k == 0 || !unit {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if !unit {
                    out.push(' ');
                }
                out.push_str(sym);
                if k > 1 {
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::Lambda))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.render(Variable::Lambda))
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::constant(c)
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl AddAssign for IntPoly {
    fn add_assign(&mut self, rhs: IntPoly) {
        *self += &rhs;
    }
}

impl SubAssign for IntPoly {
    fn sub_assign(&mut self, rhs: IntPoly) {
        *self -= &rhs;
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl MulAssign<&IntPoly> for IntPoly {
    fn mul_assign(&mut self, rhs: &IntPoly) {
        *self = &*self * rhs;
    }
}

impl MulAssign for IntPoly {
    fn mul_assign(&mut self, rhs: IntPoly) {
        *self = &*self * &rhs;
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(mut self) -> IntPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign:ident) => {
        impl $trait<&IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(mut self, rhs: IntPoly) -> IntPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(mut self, rhs: &IntPoly) -> IntPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $trait<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Mul<&IntPoly> for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        &self * rhs
    }
}

impl Mul<IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        self * &rhs
    }
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPoly {
    fn one() -> Self {
        IntPoly::one()
    }
}

impl Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> Sum<&'a IntPoly> for IntPoly {
    fn sum<I: Iterator<Item = &'a IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
    #[error("mixed variable names `{0}` and `{1}`")]
    MixedVariables(String, String),
}

impl FromStr for IntPoly {
    type Err = PolyParseError;

    /// Accepts the canonical rendering in any variable spelling, plus loose
    /// forms such as `-40x`, `4*x^4` or `3λ^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError::Empty);
        }

        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut var_name: Option<String> = None;
        let mut acc = IntPoly::zero();
        for term in terms {
            let (c, k, name) = parse_term(&term)?;
            if let Some(name) = name {
                match &var_name {
                    Some(prev) if *prev != name => {
                        return Err(PolyParseError::MixedVariables(prev.clone(), name))
                    }
                    _ => var_name = Some(name),
                }
            }
            acc += &IntPoly::monomial(c, k);
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Result<(BigInt, usize, Option<String>), PolyParseError> {
    let bad = || PolyParseError::BadTerm(term.to_string());
    let (negative, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }

    let digits_end = body
        .char_indices()
        .find(|(_, c)| !c.is_ascii_digit())
        .map_or(body.len(), |(i, _)| i);
    let (digits, rest) = body.split_at(digits_end);
    let rest = rest.strip_prefix('*').unwrap_or(rest);

    let mut coeff = if digits.is_empty() {
        BigInt::one()
    } else {
        digits.parse::<BigInt>().map_err(|_| bad())?
    };
    if negative {
        coeff = -coeff;
    }

    if rest.is_empty() {
        if digits.is_empty() {
            return Err(bad());
        }
        return Ok((coeff, 0, None));
    }

    let (name, exp) = match rest.split_once('^') {
        Some((name, exp)) => (name, exp.parse::<usize>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    if name.is_empty() || !name.chars().all(char::is_alphabetic) {
        return Err(bad());
    }
    Ok((coeff, exp, Some(name.to_string())))
}

/// Converts a small polynomial to machine integers when every coefficient fits.
pub fn to_i64s(p: &IntPoly) -> Option<Vec<i64>> {
    p.coeffs.iter().map(ToPrimitive::to_i64).collect()
}
