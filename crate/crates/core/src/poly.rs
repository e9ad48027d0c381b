//! Small exact polynomial types: univariate over the rationals, bivariate in
//! the parameters `(a, b)` with integer coefficients, and sparse two-exponent
//! generating polynomials.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow, Rational};

/// Dense univariate polynomial; `coeffs[k]` multiplies `x^k`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(alloc::vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::new(alloc::vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `x^k · self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = alloc::vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::new(out)
    }
}

/// Polynomial in the two parameters `a`, `b` with integer coefficients,
/// stored densely: `grid[i][j]` multiplies `a^i b^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    grid: Vec<Vec<BigInt>>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { grid: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        BivarPoly::from_terms(&[(c, 0, 0)])
    }

    /// The monomial `a`.
    pub fn a() -> Self {
        BivarPoly::from_terms(&[(1, 1, 0)])
    }

    /// The monomial `b`.
    pub fn b() -> Self {
        BivarPoly::from_terms(&[(1, 0, 1)])
    }

    /// Sum of `coef · a^i b^j` over `(coef, i, j)`.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let mut p = BivarPoly::zero();
        for &(c, i, j) in terms {
            p.add_term(BigInt::from(c), i, j);
        }
        p.trim();
        p
    }

    fn add_term(&mut self, c: BigInt, i: usize, j: usize) {
        if self.grid.len() <= i {
            self.grid.resize(i + 1, Vec::new());
        }
        let row = &mut self.grid[i];
        if row.len() <= j {
            row.resize(j + 1, BigInt::zero());
        }
        row[j] += c;
    }

    fn trim(&mut self) {
        for row in &mut self.grid {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.grid.last().is_some_and(Vec::is_empty) {
            self.grid.pop();
        }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        self.grid.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms `(coef, i, j)` ordered by total degree, then by
    /// decreasing power of `a`.
    pub fn terms(&self) -> Vec<(BigInt, usize, usize)> {
        let mut out: Vec<(BigInt, usize, usize)> = self
            .grid
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (c.clone(), i, j))
            })
            .collect();
        out.sort_by(|x, y| (x.1 + x.2, y.1).cmp(&(y.1 + y.2, x.1)));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms().iter().map(|(_, i, j)| i + j).max()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.grid.iter().flatten().all(|c| !c.is_negative())
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (c, i, j) in self.terms() {
            acc += Rational::from_integer(c) * pow(a, i) * pow(b, j);
        }
        acc
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (c, i, j) in rhs.terms() {
            out.add_term(c, i, j);
        }
        out.trim();
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (c1, i1, j1) in self.terms() {
            for (c2, i2, j2) in rhs.terms() {
                out.add_term(&c1 * &c2, i1 + i2, j1 + j2);
            }
        }
        out.trim();
        out
    }
}

fn write_power(s: &mut String, var: char, k: usize) {
    match k {
        0 => {}
        1 => s.push(var),
        2 => {
            s.push(var);
            s.push('²');
        }
        3 => {
            s.push(var);
            s.push('³');
        }
        _ => {
            let _ = write!(s, "{var}^{k}");
        }
    }
}

impl fmt::Display for BivarPoly {
    /// Renders e.g. `a + b + 2ab`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (c, i, j)) in terms.iter().enumerate() {
            let mut s = String::new();
            let magnitude = c.abs();
            if idx > 0 {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                s.push('-');
            }
            if !magnitude.is_one() || (*i == 0 && *j == 0) {
                let _ = write!(s, "{magnitude}");
            }
            write_power(&mut s, 'a', *i);
            write_power(&mut s, 'b', *j);
            f.write_str(&s)?;
        }
        Ok(())
    }
}

/// Sparse generating polynomial in two indeterminates with exact rational
/// coefficients, keyed by the exponent pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JointPoly {
    coeffs: BTreeMap<(usize, usize), Rational>,
}

impl JointPoly {
    pub fn zero() -> Self {
        JointPoly::default()
    }

    pub fn one() -> Self {
        let mut p = JointPoly::zero();
        p.add_term((0, 0), Rational::one());
        p
    }

    pub fn add_term(&mut self, exps: (usize, usize), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exps);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational, z: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, ((i, j), c)| acc + c * pow(x, *i) * pow(z, *j))
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, s: &Rational) -> JointPoly {
        let mut out = JointPoly::zero();
        for (e, c) in &self.coeffs {
            out.add_term(*e, c * s);
        }
        out
    }

    /// `c · x^di z^dj · self`.
    pub fn mul_monomial(&self, c: &Rational, di: usize, dj: usize) -> JointPoly {
        let mut out = JointPoly::zero();
        for ((i, j), v) in &self.coeffs {
            out.add_term((i + di, j + dj), v * c);
        }
        out
    }

    /// The substitution `z ↦ z + s` in the second indeterminate.
    pub fn shift_second(&self, s: &Rational) -> JointPoly {
        let mut out = JointPoly::zero();
        for ((i, j), v) in &self.coeffs {
            for k in 0..=*j {
                let binom = Rational::from_integer(binomial(BigInt::from(*j), BigInt::from(k)));
                out.add_term((*i, k), v * binom * pow(s, j - k));
            }
        }
        out
    }

    /// Setting the second indeterminate to 1, as a polynomial in the first.
    pub fn second_at_one(&self) -> Poly {
        let len = self.coeffs.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut out = alloc::vec![Rational::zero(); len];
        for ((i, _), v) in &self.coeffs {
            out[*i] += v;
        }
        Poly::new(out)
    }

    pub fn total(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl Add for &JointPoly {
    type Output = JointPoly;
    fn add(self, rhs: &JointPoly) -> JointPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &JointPoly {
    type Output = JointPoly;
    fn sub(self, rhs: &JointPoly) -> JointPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &JointPoly {
    type Output = JointPoly;
    fn mul(self, rhs: &JointPoly) -> JointPoly {
        let mut out = JointPoly::zero();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &rhs.coeffs {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}
