//! Generalized Eulerian numbers `v_{a,b}(n,k)` and the polynomials
//! `P_{n,a,b}(x) = Σ_k v_{a,b}(n,k) x^k`.
//!
//! The triangle obeys
//!
//! ```text
//! v(n,k) = (k + a) v(n−1,k) + (n − k + b) v(n−1,k−1),   v(0,0) = 1.
//! ```
//!
//! For rational `a = p/d`, `b = q/d` the scaled numbers `W(n,k) = dⁿ v(n,k)`
//! are integers satisfying the same recursion with integer multipliers, so
//! the exact kernel runs on big integers only and never reduces fractions.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{BivarPoly, Poly};
use crate::rational::{from_usize, rising_factorial as rising, Rational};
use crate::{Error, Result};

pub use crate::rational::rising_factorial;

fn check_nonnegative(name: &str, x: &Rational) -> Result<()> {
    if x.is_negative() {
        Err(Error::Parameter(alloc::format!("{name} must be nonnegative, got {x}")))
    } else {
        Ok(())
    }
}

/// Row `n` of the triangle as integers over the common denominator `dⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRow {
    pub n: usize,
    /// `W(n,k)` for `0 ≤ k ≤ n`.
    pub numer: Vec<BigInt>,
    /// `dⁿ`.
    pub denom: BigInt,
}

impl ScaledRow {
    pub fn value(&self, k: usize) -> Rational {
        match self.numer.get(k) {
            Some(w) => Rational::new(w.clone(), self.denom.clone()),
            None => Rational::zero(),
        }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        (0..self.numer.len()).map(|k| self.value(k)).collect()
    }

    /// `Σ_k W(n,k)`.
    pub fn numer_sum(&self) -> BigInt {
        self.numer.iter().sum()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.to_rationals())
    }
}

/// Streams rows `0, 1, 2, …` of the triangle for fixed `(a, b)` without
/// keeping earlier rows alive.
#[derive(Debug, Clone)]
pub struct RowStream {
    scale: BigInt,
    a_scaled: BigInt,
    b_scaled: BigInt,
    current: ScaledRow,
    started: bool,
}

impl RowStream {
    pub fn new(a: &Rational, b: &Rational) -> Result<Self> {
        check_nonnegative("a", a)?;
        check_nonnegative("b", b)?;
        let scale = a.denom().lcm(b.denom());
        let a_scaled = a.numer() * (&scale / a.denom());
        let b_scaled = b.numer() * (&scale / b.denom());
        Ok(RowStream {
            scale,
            a_scaled,
            b_scaled,
            current: ScaledRow { n: 0, numer: alloc::vec![BigInt::one()], denom: BigInt::one() },
            started: false,
        })
    }

    /// The common denominator `d` of `a` and `b`.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    fn advance(&mut self) {
        let prev = &self.current;
        let n = prev.n + 1;
        let d = &self.scale;
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut w = BigInt::zero();
            if k < n {
                // (d k + p_a) W(n−1, k)
                let mult = d * BigInt::from(k) + &self.a_scaled;
                if !mult.is_zero() {
                    w += &prev.numer[k] * mult;
                }
            }
            if k >= 1 {
                // (d (n−k) + p_b) W(n−1, k−1)
                let mult = d * BigInt::from(n - k) + &self.b_scaled;
                if !mult.is_zero() {
                    w += &prev.numer[k - 1] * mult;
                }
            }
            next.push(w);
        }
        self.current = ScaledRow { n, numer: next, denom: &prev.denom * d };
    }

    /// Advances to row `n` (which must not be behind the current row).
    pub fn seek(mut self, n: usize) -> ScaledRow {
        while self.current.n < n {
            self.advance();
        }
        self.current
    }
}

impl Iterator for RowStream {
    type Item = ScaledRow;

    fn next(&mut self) -> Option<ScaledRow> {
        if self.started {
            self.advance();
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// The full table `v_{a,b}(n,k)` for `0 ≤ k ≤ n ≤ n_max`.
#[derive(Debug, Clone)]
pub struct EulerTriangle {
    a: Rational,
    b: Rational,
    rows: Vec<ScaledRow>,
}

impl EulerTriangle {
    pub fn new(n_max: usize, a: &Rational, b: &Rational) -> Result<Self> {
        let rows = RowStream::new(a, b)?.take(n_max + 1).collect();
        Ok(EulerTriangle { a: a.clone(), b: b.clone(), rows })
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `v(n,k)`, zero outside `0 ≤ k ≤ n`. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: i64) -> Rational {
        if k < 0 {
            return Rational::zero();
        }
        self.rows[n].value(k as usize)
    }

    pub fn row(&self, n: usize) -> Vec<Rational> {
        self.rows[n].to_rationals()
    }

    pub fn scaled_row(&self, n: usize) -> &ScaledRow {
        &self.rows[n]
    }

    /// `P_{n,a,b}` as a polynomial.
    pub fn poly(&self, n: usize) -> Poly {
        self.rows[n].to_poly()
    }
}

/// Builds the triangle up to row `n_max`.
pub fn v_triangle(n_max: usize, a: &Rational, b: &Rational) -> Result<EulerTriangle> {
    EulerTriangle::new(n_max, a, b)
}

/// Symbolic rows `0..=n_max`: `out[n][k]` is `v_{a,b}(n,k)` as a polynomial in
/// `a` and `b`.
pub fn symbolic_triangle(n_max: usize) -> Vec<Vec<BivarPoly>> {
    let mut rows: Vec<Vec<BivarPoly>> = alloc::vec![alloc::vec![BivarPoly::constant(1)]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = BivarPoly::zero();
            if k < n {
                let mult = &BivarPoly::constant(k as i64) + &BivarPoly::a();
                v = &v + &(&mult * &prev[k]);
            }
            if k >= 1 {
                let mult = &BivarPoly::constant((n - k) as i64) + &BivarPoly::b();
                v = &v + &(&mult * &prev[k - 1]);
            }
            row.push(v);
        }
        rows.push(row);
    }
    rows
}

/// `v_{a,b}(n,k)` as an exact polynomial in `a, b`; zero for `k` outside `[0, n]`.
pub fn v_symbolic(n: usize, k: i64) -> BivarPoly {
    if k < 0 || k as usize > n {
        return BivarPoly::zero();
    }
    symbolic_triangle(n).swap_remove(n).swap_remove(k as usize)
}

/// `P_{n,a,b}(x)`.
pub fn p_eval(n: usize, a: &Rational, b: &Rational, x: &Rational) -> Result<Rational> {
    let row = RowStream::new(a, b)?.seek(n);
    Ok(row.to_poly().eval(x))
}

/// The `(a, b) = (0, 0)` substitute `ṽ(n,k) = v_{1,1}(n−2, k−1)`, defined for `n ≥ 2`.
pub fn tilde_v(n: usize, k: i64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain(alloc::format!("ṽ(n,k) needs n ≥ 2, got n = {n}")));
    }
    let one = Rational::one();
    let row = RowStream::new(&one, &one)?.seek(n - 2);
    Ok(if k < 1 { Rational::zero() } else { row.value((k - 1) as usize) })
}

/// All of `ṽ(n, ·)` for `0 ≤ k ≤ n`.
pub fn tilde_row(n: usize) -> Result<Vec<Rational>> {
    if n < 2 {
        return Err(Error::Domain(alloc::format!("ṽ(n,k) needs n ≥ 2, got n = {n}")));
    }
    let one = Rational::one();
    let row = RowStream::new(&one, &one)?.seek(n - 2);
    let mut out = alloc::vec![Rational::zero()];
    out.extend(row.to_rationals());
    out.push(Rational::zero());
    Ok(out)
}

/// `P̃_n(x) = x · P_{n−2,1,1}(x)`.
pub fn tilde_p_eval(n: usize, x: &Rational) -> Result<Rational> {
    let row = tilde_row(n)?;
    Ok(Poly::new(row).eval(x))
}

/// Closed forms for `(P(1), P′(1), P″(1))` of `P_{n,a,b}`.
pub fn p_at_one(n: usize, a: &Rational, b: &Rational) -> Result<(Rational, Rational, Rational)> {
    check_nonnegative("a", a)?;
    check_nonnegative("b", b)?;
    let s = a + b;
    let nn = from_usize(n);
    let two = from_usize(2);
    let p0 = rising(&s, n);
    let p1 = if n == 0 {
        Rational::zero()
    } else {
        &nn * (&nn + &two * b - Rational::one()) / &two * rising(&s, n - 1)
    };
    let p2 = if n < 2 {
        Rational::zero()
    } else {
        let quad = from_usize(3) * &nn * &nn
            + (from_usize(12) * b - from_usize(11)) * &nn
            + from_usize(12) * b * b
            - from_usize(24) * b
            + from_usize(10);
        &nn * (&nn - Rational::one()) * quad / from_usize(12) * rising(&s, n - 2)
    };
    Ok((p0, p1, p2))
}

/// The auxiliary table `c_{n,ℓ}` with `c_{0,0} = 1` and
/// `c_{n+1,ℓ} = (ℓ + b) c_{n,ℓ} + c_{n,ℓ−1}`.
#[derive(Debug, Clone)]
pub struct CTable {
    b: Rational,
    rows: Vec<Vec<Rational>>,
}

impl CTable {
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c_{n,ℓ}`, zero outside `0 ≤ ℓ ≤ n`.
    pub fn get(&self, n: usize, l: i64) -> Rational {
        if l < 0 {
            return Rational::zero();
        }
        self.rows[n].get(l as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }
}

pub fn c_table(n_max: usize, b: &Rational) -> Result<CTable> {
    check_nonnegative("b", b)?;
    let mut rows: Vec<Vec<Rational>> = alloc::vec![alloc::vec![Rational::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let next = (0..=n + 1)
            .map(|l| {
                let mut c = Rational::zero();
                if l <= n {
                    c += (from_usize(l) + b) * &prev[l];
                }
                if l >= 1 {
                    c += &prev[l - 1];
                }
                c
            })
            .collect();
        rows.push(next);
    }
    Ok(CTable { b: b.clone(), rows })
}

/// Row `n` of the classical Eulerian numbers `⟨n, k⟩`, `0 ≤ k ≤ n`
/// (with `⟨0,0⟩ = 1` and `⟨n,n⟩ = 0` for `n ≥ 1`).
pub fn eulerian_row(n: usize) -> Vec<BigUint> {
    let mut row = alloc::vec![BigUint::one()];
    for m in 1..=n {
        let mut next = alloc::vec![BigUint::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < m {
                *slot += &row[k] * BigUint::from(k + 1);
            }
            if k >= 1 {
                *slot += &row[k - 1] * BigUint::from(m - k);
            }
        }
        row = next;
    }
    row
}

/// The Eulerian number `⟨n, k⟩` (permutations of `n` with `k` descents).
pub fn eulerian(n: usize, k: i64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    eulerian_row(n).swap_remove(k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn small_rows() {
        let t = v_triangle(3, &int(1), &int(1)).unwrap();
        assert_eq!(t.row(2), [int(1), int(4), int(1)]);
        let t = v_triangle(3, &int(1), &int(0)).unwrap();
        assert_eq!(t.get(3, 1), int(4));
        let half = rat(1, 2);
        let t = v_triangle(2, &half, &half).unwrap();
        assert_eq!(t.get(2, 1), rat(3, 2));
        assert_eq!(t.get(2, 1) * int(4), int(6));
        assert_eq!(t.get(2, -1), int(0));
        assert_eq!(t.get(2, 3), int(0));
    }

    #[test]
    fn negative_parameters_rejected() {
        assert!(matches!(v_triangle(2, &int(-1), &int(1)), Err(Error::Parameter(_))));
        assert!(matches!(c_table(2, &rat(-1, 2)), Err(Error::Parameter(_))));
    }

    #[test]
    fn symbolic_rows_match_the_table() {
        assert_eq!(v_symbolic(2, 1), BivarPoly::from_terms(&[(1, 1, 0), (1, 0, 1), (2, 1, 1)]));
        assert_eq!(
            v_symbolic(3, 2),
            BivarPoly::from_terms(&[(1, 1, 0), (1, 0, 1), (3, 1, 1), (3, 0, 2), (3, 1, 2)])
        );
        assert_eq!(
            v_symbolic(3, 1),
            BivarPoly::from_terms(&[(1, 1, 0), (1, 0, 1), (3, 2, 0), (3, 1, 1), (3, 2, 1)])
        );
        for n in 0..7 {
            assert_eq!(v_symbolic(n, 0), BivarPoly::from_terms(&[(1, n, 0)]));
        }
        assert!(v_symbolic(3, 4).is_zero());
        assert!(v_symbolic(3, -1).is_zero());
    }

    #[test]
    fn polynomial_evaluations() {
        assert_eq!(p_eval(2, &int(1), &int(1), &int(2)).unwrap(), int(13));
        let (a, b) = (rat(2, 3), rat(5, 4));
        for n in 0..8 {
            assert_eq!(p_eval(n, &a, &b, &int(1)).unwrap(), rising_factorial(&(&a + &b), n));
            assert_eq!(p_eval(n, &a, &b, &int(0)).unwrap(), crate::rational::pow(&a, n));
        }
    }

    #[test]
    fn tilde_values() {
        assert_eq!(tilde_v(2, 1).unwrap(), int(1));
        assert_eq!(tilde_v(2, 0).unwrap(), int(0));
        assert_eq!(tilde_v(2, 2).unwrap(), int(0));
        assert_eq!((tilde_v(3, 1).unwrap(), tilde_v(3, 2).unwrap()), (int(1), int(1)));
        assert!(matches!(tilde_v(1, 0), Err(Error::Domain(_))));
        let mut fact = int(1);
        for n in 2..10 {
            if n > 2 {
                fact *= int(n as i64 - 1);
            }
            assert_eq!(tilde_p_eval(n, &int(1)).unwrap(), fact);
        }
    }

    #[test]
    fn derivatives_at_one() {
        assert_eq!(p_at_one(2, &int(1), &int(1)).unwrap(), (int(6), int(6), int(2)));
        let b = rat(3, 7);
        assert_eq!(p_at_one(1, &int(2), &b).unwrap().1, b);
        assert_eq!(p_at_one(0, &int(2), &b).unwrap(), (int(1), int(0), int(0)));
    }

    #[test]
    fn c_table_values() {
        let c = c_table(5, &int(1)).unwrap();
        assert_eq!(c.get(1, 0), int(1));
        assert_eq!(c.get(3, 2), int(6));
        let b = rat(2, 9);
        let c = c_table(4, &b).unwrap();
        assert_eq!(c.get(1, 0), b);
        assert_eq!(c.get(4, 4), int(1));
        assert_eq!(c.get(4, 5), int(0));
    }

    #[test]
    fn classical_eulerian_numbers() {
        assert_eq!(eulerian(3, 1), BigUint::from(4u32));
        assert_eq!(eulerian_row(4), [1u32, 11, 11, 1, 0].map(BigUint::from));
        let total: BigUint = eulerian_row(6).iter().sum();
        assert_eq!(total, BigUint::from(720u32));
        assert_eq!(eulerian(5, 0), BigUint::one());
        assert_eq!(eulerian(5, 6), BigUint::zero());
    }

    #[test]
    fn stream_matches_table() {
        let (a, b) = (rat(1, 3), rat(5, 2));
        let t = v_triangle(12, &a, &b).unwrap();
        let row = RowStream::new(&a, &b).unwrap().seek(12);
        assert_eq!(row.to_rationals(), t.row(12));
        assert_eq!(RowStream::new(&a, &b).unwrap().scale(), &BigInt::from(6));
    }
}
