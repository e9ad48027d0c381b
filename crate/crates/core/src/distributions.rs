//! Exact laws and moments of the diagonal count `A`, the symbol counts
//! `(N_α, N_β)` and individual box occupancies of the weighted αβ-tableau
//! with inverse parameters `a = α⁻¹`, `b = β⁻¹`, plus the Bernoulli
//! decomposition of `A` and finite-`n` limit diagnostics.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{weighted_law, DEFAULT_AB_CAP};
use crate::eulerian::{tilde_row, RowStream};
use crate::poly::JointPoly;
use crate::rational::{from_usize, ratio_to_f64, rising_factorial, sum_exact, to_f64, Rational};
use crate::roots::negated_roots;
use crate::tableau::{Symbol, Tableau};
use crate::{Error, Result};

/// A finitely supported law on the integers `offset, offset + 1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDist {
    offset: i64,
    probs: Vec<Rational>,
}

impl DiscreteDist {
    /// Checks that the weights are nonnegative and sum to exactly 1.
    pub fn new(offset: i64, probs: Vec<Rational>) -> Result<Self> {
        if probs.iter().any(Signed::is_negative) {
            return Err(Error::Domain("negative probability".into()));
        }
        let total = sum_exact(probs.iter().cloned());
        if !total.is_one() {
            return Err(Error::Domain(alloc::format!("probabilities sum to {total}, not 1")));
        }
        Ok(DiscreteDist { offset, probs })
    }

    /// Normalizes nonnegative weights with a positive total.
    pub fn from_weights(offset: i64, weights: Vec<Rational>) -> Result<Self> {
        let total = sum_exact(weights.iter().cloned());
        if !total.is_positive() {
            return Err(Error::Domain("weights have no positive mass".into()));
        }
        let probs = weights.into_iter().map(|w| w / &total).collect();
        DiscreteDist::new(offset, probs)
    }

    /// Law of a constant.
    pub fn point(k: i64) -> Self {
        DiscreteDist { offset: k, probs: alloc::vec![Rational::one()] }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// `(k, P(X = k))` over the stored support.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.probs.iter().enumerate().map(move |(i, p)| (self.offset + i as i64, p))
    }

    pub fn pmf(&self, k: i64) -> Rational {
        let i = k - self.offset;
        if i < 0 {
            return Rational::zero();
        }
        self.probs.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mean(&self) -> Rational {
        sum_exact(self.iter().map(|(k, p)| p * Rational::from_integer(k.into())))
    }

    pub fn variance(&self) -> Rational {
        let m = self.mean();
        let second = sum_exact(self.iter().map(|(k, p)| p * Rational::from_integer((k * k).into())));
        second - &m * &m
    }

    /// Law of `X + k`.
    pub fn shifted(&self, k: i64) -> Self {
        DiscreteDist { offset: self.offset + k, probs: self.probs.clone() }
    }

    /// Law of `X + Y` for independent `X`, `Y`.
    pub fn convolve(&self, other: &DiscreteDist) -> Self {
        let mut probs = alloc::vec![Rational::zero(); self.probs.len() + other.probs.len() - 1];
        for (i, p) in self.probs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.probs.iter().enumerate() {
                probs[i + j] += p * q;
            }
        }
        DiscreteDist { offset: self.offset + other.offset, probs }
    }

    /// Bernoulli law with success probability `p`.
    pub fn bernoulli(p: &Rational) -> Result<Self> {
        DiscreteDist::new(0, alloc::vec![Rational::one() - p, p.clone()])
    }

    /// Same law, ignoring zero-probability padding at either end.
    pub fn same_law(&self, other: &DiscreteDist) -> bool {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.probs.len() as i64).max(other.offset + other.probs.len() as i64);
        (lo..hi).all(|k| self.pmf(k) == other.pmf(k))
    }

    /// Exact total-variation distance.
    pub fn total_variation(&self, other: &DiscreteDist) -> Rational {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.probs.len() as i64).max(other.offset + other.probs.len() as i64);
        sum_exact((lo..hi).map(|k| (self.pmf(k) - other.pmf(k)).abs())) / from_usize(2)
    }

    /// Total-variation distance to a floating-point law on `offset, offset + 1, …`.
    pub fn total_variation_f64(&self, offset: i64, probs: &[f64]) -> f64 {
        let lo = self.offset.min(offset);
        let hi = (self.offset + self.probs.len() as i64).max(offset + probs.len() as i64);
        let other = |k: i64| {
            let i = k - offset;
            if i < 0 {
                0.0
            } else {
                probs.get(i as usize).copied().unwrap_or(0.0)
            }
        };
        (lo..hi).map(|k| (to_f64(&self.pmf(k)) - other(k)).abs()).sum::<f64>() / 2.0
    }

    /// `p_k² ≥ p_{k−1} p_{k+1}` everywhere and no internal zeros.
    pub fn is_log_concave(&self) -> bool {
        is_log_concave(&self.probs)
    }

    /// Weakly increasing then weakly decreasing.
    pub fn is_unimodal(&self) -> bool {
        let mut descending = false;
        for w in self.probs.windows(2) {
            if w[1] > w[0] {
                if descending {
                    return false;
                }
            } else if w[1] < w[0] {
                descending = true;
            }
        }
        true
    }

    /// Pearson statistic of `observed` (counts keyed by value) against this
    /// law, pooling cells with expected count below 5 into one bin.
    /// Returns the statistic and the degrees of freedom.
    pub fn chi_square(&self, observed: &BTreeMap<i64, u64>) -> ChiSquare {
        let cells: Vec<(Rational, u64)> = self
            .iter()
            .map(|(k, p)| (p.clone(), observed.get(&k).copied().unwrap_or(0)))
            .collect();
        let stray: u64 = observed
            .iter()
            .filter(|(k, _)| self.pmf(**k).is_zero())
            .map(|(_, c)| *c)
            .sum();
        chi_square_cells(cells, stray)
    }
}

/// Result of a Pearson goodness-of-fit computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    /// Observations that fell on zero-probability outcomes.
    pub impossible: u64,
}

/// Pearson statistic for `(probability, observed count)` cells. Cells with
/// expected count below 5 are pooled; `impossible` counts observations of
/// outcomes with probability zero.
pub fn chi_square_cells(cells: Vec<(Rational, u64)>, impossible: u64) -> ChiSquare {
    let total: u64 = cells.iter().map(|c| c.1).sum::<u64>() + impossible;
    let n = total as f64;
    let mut stat = 0.0;
    let mut bins = 0usize;
    let (mut pool_e, mut pool_o) = (0.0f64, 0u64);
    for (p, o) in cells {
        let e = to_f64(&p) * n;
        if e == 0.0 {
            continue;
        }
        if e < 5.0 {
            pool_e += e;
            pool_o += o;
            continue;
        }
        stat += (o as f64 - e) * (o as f64 - e) / e;
        bins += 1;
    }
    if pool_e > 0.0 {
        stat += (pool_o as f64 - pool_e) * (pool_o as f64 - pool_e) / pool_e;
        bins += 1;
    }
    ChiSquare { statistic: stat, dof: bins.saturating_sub(1), impossible }
}

/// `x_k² ≥ x_{k−1} x_{k+1}` for every interior `k`, with the positive
/// entries forming one contiguous block.
pub fn is_log_concave(xs: &[Rational]) -> bool {
    let first = xs.iter().position(|x| !x.is_zero());
    let last = xs.iter().rposition(|x| !x.is_zero());
    if let (Some(f), Some(l)) = (first, last) {
        if xs[f..=l].iter().any(|x| !x.is_positive()) {
            return false;
        }
    }
    xs.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

fn check_finite(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_negative() || b.is_negative() {
        return Err(Error::Parameter(alloc::format!("a and b must be nonnegative, got a = {a}, b = {b}")));
    }
    Ok(())
}

fn both_zero(a: &Rational, b: &Rational) -> bool {
    a.is_zero() && b.is_zero()
}

/// Law of `A` for the size-`n` tableau: `v_{a,b}(n,k)/(a+b)^{rise n}`, or
/// `ṽ(n,k)/(n−1)!` when `a = b = 0`.
pub fn dist_a(n: usize, a: &Rational, b: &Rational) -> Result<DiscreteDist> {
    check_finite(a, b)?;
    if both_zero(a, b) {
        if n < 2 {
            return Err(Error::Domain("the law of A at a = b = 0 needs n ≥ 2".into()));
        }
        return DiscreteDist::from_weights(0, tilde_row(n)?);
    }
    let row = RowStream::new(a, b)?.seek(n);
    let total = row.numer_sum();
    let probs = row.numer.into_iter().map(|w| Rational::new(w, total.clone())).collect();
    DiscreteDist::new(0, probs)
}

/// `P(A = k)` as `f64` for large `n`, computed from the exact integer row.
pub fn dist_a_f64(n: usize, a: &Rational, b: &Rational) -> Result<Vec<f64>> {
    check_finite(a, b)?;
    let numer: Vec<BigInt> = if both_zero(a, b) {
        if n < 2 {
            return Err(Error::Domain("the law of A at a = b = 0 needs n ≥ 2".into()));
        }
        let one = Rational::one();
        let mut v = alloc::vec![BigInt::zero()];
        v.extend(RowStream::new(&one, &one)?.seek(n - 2).numer);
        v.push(BigInt::zero());
        v
    } else {
        RowStream::new(a, b)?.seek(n).numer
    };
    let total: BigInt = numer.iter().sum();
    Ok(numer.iter().map(|w| ratio_to_f64(w, &total)).collect())
}

/// `(E A, Var A)` from the closed forms
///
/// ```text
/// E A   = n(n+2b−1) / (2(n+a+b−1))
/// Var A = n[(n−1)(n−2)(n+4a+4b−1) + 6(n−1)(a+b)² + 12ab(a+b−1)]
///         / (12 (n+a+b−1)² (n+a+b−2))
/// ```
///
/// falling back to the exact law where a denominator vanishes.
pub fn moments_a(n: usize, a: &Rational, b: &Rational) -> Result<(Rational, Rational)> {
    check_finite(a, b)?;
    let nn = from_usize(n);
    let one = Rational::one();
    let s = a + b;
    let d1 = &nn + &s - &one;
    let d2 = &d1 - &one;
    if d1.is_zero() || d2.is_zero() {
        let law = dist_a(n, a, b)?;
        return Ok((law.mean(), law.variance()));
    }
    let mean = &nn * (&nn + from_usize(2) * b - &one) / (from_usize(2) * &d1);
    let n1 = &nn - &one;
    let n2 = &nn - from_usize(2);
    let bracket = &n1 * &n2 * (&nn + from_usize(4) * &s - &one)
        + from_usize(6) * &n1 * &s * &s
        + from_usize(12) * a * b * (&s - &one);
    let var = &nn * bracket / (from_usize(12) * &d1 * &d1 * &d2);
    Ok((mean, var))
}

/// `A` written as a sum of independent Bernoulli variables.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliDecomp {
    /// Success probabilities, one per diagonal box.
    pub p: Vec<f64>,
    /// The located roots `−ξ_i` of the generating polynomial, as `ξ_i ≥ 0`.
    pub xi: Vec<f64>,
}

impl BernoulliDecomp {
    /// Law of `Σ Be(p_i)` by direct convolution.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut law = alloc::vec![1.0f64];
        for &p in &self.p {
            let mut next = alloc::vec![0.0; law.len() + 1];
            for (k, &q) in law.iter().enumerate() {
                next[k] += q * (1.0 - p);
                next[k + 1] += q * p;
            }
            law = next;
        }
        law
    }

    pub fn mean(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Locates the real roots of the generating polynomial of `A` along the
/// interlacing ladder and returns `p_i = 1/(1+ξ_i)`. When `b = 0` the
/// polynomial has degree `n − 1` and a final `p = 0` is appended; when
/// `a = b = 0` the polynomial is `x P_{n−2,1,1}(x)`, whose root at 0 is a
/// certain success.
pub fn bernoulli_decomposition(n: usize, a: &Rational, b: &Rational) -> Result<BernoulliDecomp> {
    check_finite(a, b)?;
    let xi = if both_zero(a, b) {
        if n < 2 {
            return Err(Error::Domain("the law of A at a = b = 0 needs n ≥ 2".into()));
        }
        let one = Rational::one();
        let mut xi = alloc::vec![0.0];
        xi.extend(negated_roots(n - 2, &one, &one)?);
        xi
    } else {
        negated_roots(n, a, b)?
    };
    let expected = if b.is_zero() { n.saturating_sub(1) } else { n };
    if xi.len() != expected {
        return Err(Error::Numerical(alloc::format!("located {} roots, expected {expected}", xi.len())));
    }
    if xi.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(Error::Numerical("located a root off the nonpositive half-line".into()));
    }
    let mut p: Vec<f64> = xi.iter().map(|x| 1.0 / (1.0 + x)).collect();
    p.resize(n, 0.0);
    Ok(BernoulliDecomp { p, xi })
}

/// Law of one independent factor of `(N_α, N_β)`: the increments
/// `(1,0)`, `(0,1)` and `(1,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairLaw {
    pub i: usize,
    pub p10: Rational,
    pub p01: Rational,
    pub p11: Rational,
}

impl PairLaw {
    /// `P(increment of N_α = 1)`.
    pub fn alpha_prob(&self) -> Rational {
        &self.p10 + &self.p11
    }

    /// `P(increment of N_β = 1)`.
    pub fn beta_prob(&self) -> Rational {
        &self.p01 + &self.p11
    }
}

/// `(N_α, N_β)` as a sum of `n` independent pairs with exact moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecomp {
    pub steps: Vec<PairLaw>,
    pub mean_alpha: Rational,
    pub var_alpha: Rational,
    pub mean_beta: Rational,
    pub var_beta: Rational,
    pub cov: Rational,
}

impl PairDecomp {
    /// Law of `N_α`.
    pub fn law_alpha(&self) -> Result<DiscreteDist> {
        let mut law = DiscreteDist::point(0);
        for s in &self.steps {
            law = law.convolve(&DiscreteDist::bernoulli(&s.alpha_prob())?);
        }
        Ok(law)
    }

    /// `E x^{N_α} y^{N_β}` expanded, keyed by `(N_α, N_β)`.
    pub fn joint_pgf(&self) -> JointPoly {
        let mut g = JointPoly::one();
        for s in &self.steps {
            let mut f = JointPoly::zero();
            f.add_term((1, 0), s.p10.clone());
            f.add_term((0, 1), s.p01.clone());
            f.add_term((1, 1), s.p11.clone());
            g = &g * &f;
        }
        g
    }
}

/// The pairs `P(1,0) = b/(a+b+i)`, `P(0,1) = a/(a+b+i)`, `P(1,1) = i/(a+b+i)`
/// for `i = 0, …, n−1` (with `1/2, 1/2, 0` at `i = a = b = 0`).
pub fn dist_n_pairs(n: usize, a: &Rational, b: &Rational) -> Result<PairDecomp> {
    check_finite(a, b)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let steps: Vec<PairLaw> = (0..n)
        .map(|i| {
            let d = a + b + from_usize(i);
            if d.is_zero() {
                PairLaw { i, p10: half.clone(), p01: half.clone(), p11: Rational::zero() }
            } else {
                PairLaw { i, p10: b / &d, p01: a / &d, p11: from_usize(i) / &d }
            }
        })
        .collect();
    let mean_alpha = sum_exact(steps.iter().map(PairLaw::alpha_prob));
    let mean_beta = sum_exact(steps.iter().map(PairLaw::beta_prob));
    let var_alpha = sum_exact(steps.iter().map(|s| {
        let q = s.alpha_prob();
        &q * (Rational::one() - &q)
    }));
    let var_beta = sum_exact(steps.iter().map(|s| {
        let q = s.beta_prob();
        &q * (Rational::one() - &q)
    }));
    let cov = sum_exact(steps.iter().map(|s| &s.p11 - s.alpha_prob() * s.beta_prob()));
    Ok(PairDecomp { steps, mean_alpha, var_alpha, mean_beta, var_beta, cov })
}

/// `P(the diagonal box in row i holds α) = (n−i+b)/(n+a+b−1)`; the
/// `0/0` case `n = 1`, `a = b = 0` is read as `1/2`.
pub fn diag_prob(n: usize, a: &Rational, b: &Rational, i: usize) -> Result<Rational> {
    check_finite(a, b)?;
    if i == 0 || i > n {
        return Err(Error::Domain(alloc::format!("diagonal row {i} outside 1..={n}")));
    }
    let den = from_usize(n) + a + b - Rational::one();
    if den.is_zero() {
        return Ok(Rational::new(BigInt::one(), BigInt::from(2)));
    }
    Ok((from_usize(n - i) + b) / den)
}

/// [`diag_prob`] for the diagonal box in column `j` (row `n + 1 − j`).
pub fn diag_prob_by_column(n: usize, a: &Rational, b: &Rational, j: usize) -> Result<Rational> {
    if j == 0 || j > n {
        return Err(Error::Domain(alloc::format!("diagonal column {j} outside 1..={n}")));
    }
    diag_prob(n, a, b, n + 1 - j)
}

/// Occupancy law of an off-diagonal box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellProb {
    pub alpha: Rational,
    pub beta: Rational,
    pub filled: Rational,
}

/// For a box `(i, j)` with `i + j ≤ n`:
/// `P(α) = (j−1+b)/((s−1)(s−2))`, `P(β) = (i−1+a)/((s−1)(s−2))` and
/// `P(filled) = 1/(s−1)` where `s = i+j+a+b`. At `i = j = 1`, `a = b = 0`
/// the two symbols get `1/2` each.
pub fn cell_prob(n: usize, a: &Rational, b: &Rational, i: usize, j: usize) -> Result<CellProb> {
    check_finite(a, b)?;
    if i == 0 || j == 0 || i + j > n {
        return Err(Error::Domain(alloc::format!(
            "({i},{j}) is not an off-diagonal box of a size-{n} tableau"
        )));
    }
    let s = from_usize(i + j) + a + b;
    let one = Rational::one();
    let filled = &one / (&s - &one);
    let den = (&s - &one) * (&s - from_usize(2));
    let (alpha, beta) = if den.is_zero() {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        (&half * &filled, &half * &filled)
    } else {
        ((from_usize(j - 1) + b) / &den, (from_usize(i - 1) + a) / &den)
    };
    Ok(CellProb { alpha, beta, filled })
}

/// Expected number of symbols on the anti-diagonal line `i + j = k`,
/// `2 ≤ k ≤ n`: `(k−1)/(k+a+b−1)`.
pub fn line_filled_expectation(n: usize, a: &Rational, b: &Rational, k: usize) -> Result<Rational> {
    if k < 2 || k > n {
        return Err(Error::Domain(alloc::format!("line {k} outside 2..={n}")));
    }
    let mut total = Rational::zero();
    for i in 1..k {
        total += cell_prob(n, a, b, i, k - i)?.filled;
    }
    Ok(total)
}

/// `P(the diagonal boxes in columns j₁ < … < j_ℓ all hold α)
/// = ∏_k (j_k−k+b)/(n−k+a+b)`.
pub fn joint_diag_alpha(n: usize, a: &Rational, b: &Rational, columns: &[usize]) -> Result<Rational> {
    check_finite(a, b)?;
    if columns.iter().any(|&j| j == 0 || j > n) || columns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(alloc::format!(
            "columns must be strictly increasing within 1..={n}, got {columns:?}"
        )));
    }
    let mut p = Rational::one();
    for (idx, &j) in columns.iter().enumerate() {
        let k = idx + 1;
        let num = from_usize(j) - from_usize(k) + b;
        let den = from_usize(n) - from_usize(k) + a + b;
        if den.is_zero() {
            if !num.is_zero() {
                return Err(Error::Numerical("vanishing denominator in the joint diagonal law".into()));
            }
            p *= Rational::new(BigInt::one(), BigInt::from(2));
        } else {
            p *= num / den;
        }
    }
    Ok(p)
}

/// Covariance of the `α` indicators of the diagonal boxes in columns
/// `j < k`: `−(j−1+b)(n−k+a)/((n+a+b−1)²(n+a+b−2))`.
pub fn diag_cov(n: usize, a: &Rational, b: &Rational, j: usize, k: usize) -> Result<Rational> {
    check_finite(a, b)?;
    if j == 0 || j >= k || k > n {
        return Err(Error::Domain(alloc::format!("need 1 ≤ j < k ≤ {n}, got j = {j}, k = {k}")));
    }
    let one = Rational::one();
    let d1 = from_usize(n) + a + b - &one;
    let d2 = &d1 - &one;
    if d1.is_zero() || d2.is_zero() {
        let joint = joint_diag_alpha(n, a, b, &[j, k])?;
        return Ok(joint - diag_prob_by_column(n, a, b, j)? * diag_prob_by_column(n, a, b, k)?);
    }
    let num = (from_usize(j - 1) + b) * (from_usize(n - k) + a);
    Ok(-num / (&d1 * &d1 * d2))
}

/// Outcome of comparing the law of a subtableau with the predicted smaller
/// tableau law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtableauReport {
    pub size: usize,
    pub a_hat: Rational,
    pub b_hat: Rational,
    pub support: usize,
    /// First tableau (in tableau order) where the laws differ, with the
    /// subtableau probability and the predicted probability.
    pub first_difference: Option<(Tableau, Rational, Rational)>,
}

impl SubtableauReport {
    pub fn equal(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Compares the exact law of `S[i, j]` (rows `≥ i`, columns `≥ j`) with the
/// law of the size `n−i−j+2` tableau at `â = a+i−1`, `b̂ = b+j−1`. Needs
/// `a, b > 0`.
pub fn subtableau_law_check(n: usize, a: &Rational, b: &Rational, i: usize, j: usize) -> Result<SubtableauReport> {
    subtableau_law_check_capped(n, a, b, i, j, DEFAULT_AB_CAP)
}

pub fn subtableau_law_check_capped(
    n: usize,
    a: &Rational,
    b: &Rational,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<SubtableauReport> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Parameter("the subtableau comparison needs a, b > 0".into()));
    }
    if i == 0 || j == 0 || i + j > n + 1 {
        return Err(Error::Domain(alloc::format!("({i},{j}) is not a box of a size-{n} tableau")));
    }
    let size = n + 2 - i - j;
    let a_hat = a + from_usize(i - 1);
    let b_hat = b + from_usize(j - 1);
    let sub = weighted_law(n, &a.recip(), &b.recip(), cap, |t| {
        t.subtableau(i, j).expect("corner checked above")
    })?;
    let direct = weighted_law(size, &a_hat.recip(), &b_hat.recip(), cap, Tableau::clone)?;
    let mut keys: Vec<&Tableau> = sub.keys().chain(direct.keys()).collect();
    keys.sort();
    keys.dedup();
    let zero = Rational::zero();
    let first_difference = keys.iter().find_map(|t| {
        let p = sub.get(*t).unwrap_or(&zero);
        let q = direct.get(*t).unwrap_or(&zero);
        (p != q).then(|| ((*t).clone(), p.clone(), q.clone()))
    });
    Ok(SubtableauReport { size, a_hat, b_hat, support: keys.len(), first_difference })
}

/// Distance of the law of `A` from its normal and local approximations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltDiagnostics {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    /// `sup_x |P((A − E A)/√Var A ≤ x) − Φ(x)|`.
    pub ks_to_normal: f64,
    /// `√n · max_k |P(A = k) − √(6/(πn)) e^{−6(k−n/2)²/n}|`.
    pub llt_max_residual: f64,
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

pub fn clt_diagnostics(n: usize, a: &Rational, b: &Rational) -> Result<CltDiagnostics> {
    if n == 0 {
        return Err(Error::Domain("diagnostics need n ≥ 1".into()));
    }
    let probs = dist_a_f64(n, a, b)?;
    let (mean, var) = moments_a(n, a, b)?;
    let (mean, variance) = (to_f64(&mean), to_f64(&var));
    let sd = libm::sqrt(variance);
    let mut ks = 0.0f64;
    let mut below = 0.0f64;
    for (k, &p) in probs.iter().enumerate() {
        let phi = normal_cdf((k as f64 - mean) / sd);
        let above = below + p;
        ks = ks.max((below - phi).abs()).max((above - phi).abs());
        below = above;
    }
    let nf = n as f64;
    let scale = libm::sqrt(6.0 / (core::f64::consts::PI * nf));
    let mut llt = 0.0f64;
    for (k, &p) in probs.iter().enumerate() {
        let dev = k as f64 - nf / 2.0;
        let approx = scale * libm::exp(-6.0 * dev * dev / nf);
        llt = llt.max((p - approx).abs());
    }
    Ok(CltDiagnostics { n, mean, variance, ks_to_normal: ks, llt_max_residual: llt * libm::sqrt(nf) })
}

/// Exact moments of `(N_α, N_β)` at one size, with the deviations from
/// `E N_α ≈ n − a log n` and `Var N_α ≈ a log n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub mean_alpha: Rational,
    pub var_alpha: Rational,
    pub cov: Rational,
    pub mean_deviation: f64,
    pub var_deviation: f64,
}

pub fn n_alpha_growth_check(sizes: &[usize], a: &Rational, b: &Rational) -> Result<Vec<GrowthRow>> {
    check_finite(a, b)?;
    let af = to_f64(a);
    sizes
        .iter()
        .map(|&n| {
            let d = moments_n(n, a, b);
            let log_n = if n == 0 { 0.0 } else { libm::log(n as f64) };
            Ok(GrowthRow {
                n,
                mean_deviation: to_f64(&d.0) - (n as f64 - af * log_n),
                var_deviation: to_f64(&d.1) - af * log_n,
                mean_alpha: d.0,
                var_alpha: d.1,
                cov: d.2,
            })
        })
        .collect()
}

/// `(E N_α, Var N_α, Cov(N_α, N_β))` from the sums
/// `n − Σ a/(a+b+i)`, `Σ q_i(1−q_i)` with `q_i = a/(a+b+i)`, and
/// `−Σ ab/(a+b+i)²`.
pub fn moments_n(n: usize, a: &Rational, b: &Rational) -> (Rational, Rational, Rational) {
    let s = a + b;
    let qs: Vec<Rational> = (0..n)
        .filter_map(|i| {
            let d = &s + from_usize(i);
            (!d.is_zero()).then(|| a / d)
        })
        .collect();
    let zero_step = n > 0 && s.is_zero();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut mean = from_usize(n) - sum_exact(qs.iter().cloned());
    let mut var = sum_exact(qs.iter().map(|q| q * (Rational::one() - q)));
    if zero_step {
        mean -= &half;
        var += &half * &half;
    }
    let ab = a * b;
    let cov = -sum_exact((0..n).filter_map(|i| {
        let d = &s + from_usize(i);
        (!d.is_zero()).then(|| &ab / (&d * &d))
    })) - if zero_step { &half * &half } else { Rational::zero() };
    (mean, var, cov)
}

/// Laws of `A_0, …, A_n` in the Friedman urn, unrolled from
/// `P(A_{m+1}=k) = (a+k)/(m+a+b) P(A_m=k) + (m−k+1+b)/(m+a+b) P(A_m=k−1)`.
/// An empty start adds either colour with probability `1/2`.
pub fn urn_laws(n: usize, a: &Rational, b: &Rational) -> Result<Vec<DiscreteDist>> {
    check_finite(a, b)?;
    let mut laws = alloc::vec![DiscreteDist::point(0)];
    let mut cur = alloc::vec![Rational::one()];
    for m in 0..n {
        let den = from_usize(m) + a + b;
        let mut next = alloc::vec![Rational::zero(); m + 2];
        for k in 0..=m + 1 {
            if den.is_zero() {
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                if k <= m {
                    next[k] += &half * &cur[k];
                }
                if k >= 1 {
                    next[k] += &half * &cur[k - 1];
                }
                continue;
            }
            if k <= m {
                next[k] += (a + from_usize(k)) / &den * &cur[k];
            }
            if k >= 1 {
                next[k] += (from_usize(m + 1 - k) + b) / &den * &cur[k - 1];
            }
        }
        cur = next;
        laws.push(DiscreteDist::new(0, cur.clone())?);
    }
    Ok(laws)
}

/// `(a + b)^{rise n}`, the normalizing constant of the law of `A`.
pub fn a_normalizer(n: usize, a: &Rational, b: &Rational) -> Rational {
    rising_factorial(&(a + b), n)
}

/// The diagonal symbol in column `j` is `α`.
pub fn column_diagonal_is_alpha(t: &Tableau, j: usize) -> bool {
    let n = t.size();
    t.get(n + 1 - j, j) == Some(Symbol::Alpha)
}
