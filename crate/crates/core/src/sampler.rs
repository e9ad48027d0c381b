//! Exact random generation of weighted αβ-tableaux, of four-symbol
//! tableaux, and of the Friedman urn.
//!
//! A tableau of size `n` is built column by column from the right, adding
//! each new column on the left. At step `m` (going from size `m − 1` to `m`)
//! put `b_m = b + n − m` and:
//!
//! 1. mark each `α`-indexed row independently with probability `1/(1+b_m)`;
//! 2. draw `σ = α` with probability `b_m/(a+b_m)`, otherwise `σ = β`;
//! 3. with no marks, put `σ` in the new bottom (diagonal) box; otherwise put
//!    `β` at the bottom and in every marked row except the topmost, which
//!    receives `σ`.
//!
//! All probabilities are exact rationals, decided against uniform 64-bit
//! words without rounding.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::rational::{ExtRational, Rational};
use crate::tableau::{Symbol, Tableau};
use crate::{Error, Result};

/// Number of samples drawn from one generator stream in batch mode.
pub const SHARD_SIZE: u64 = 4096;

/// Weight parameters in inverse form `a = α⁻¹`, `b = β⁻¹`, each in `[0, ∞]`,
/// plus the tie rule `rho` used when both weights are infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub a: ExtRational,
    pub b: ExtRational,
    pub rho: Rational,
}

impl Params {
    pub fn new(a: ExtRational, b: ExtRational, rho: Rational) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b)] {
            if let ExtRational::Finite(x) = v {
                if x.is_negative() {
                    return Err(Error::Parameter(alloc::format!("{name} must be nonnegative, got {x}")));
                }
            }
        }
        if rho.is_negative() || rho > Rational::one() {
            return Err(Error::Parameter(alloc::format!("rho must lie in [0, 1], got {rho}")));
        }
        Ok(Params { a, b, rho })
    }

    /// Finite `a`, `b` with `rho = 1/2`.
    pub fn finite(a: Rational, b: Rational) -> Result<Self> {
        Params::new(a.into(), b.into(), half())
    }

    /// From the tableau weights `α`, `β` (each in `[0, ∞]`).
    pub fn from_weights(alpha: ExtRational, beta: ExtRational, rho: Rational) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if let ExtRational::Finite(x) = v {
                if x.is_negative() {
                    return Err(Error::Parameter(alloc::format!("{name} must be nonnegative, got {x}")));
                }
            }
        }
        Params::new(alpha.recip(), beta.recip(), rho)
    }

    /// `(a, b)` when both are finite.
    pub fn finite_pair(&self) -> Option<(&Rational, &Rational)> {
        Some((self.a.finite()?, self.b.finite()?))
    }
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Probability `num/den ∈ [0, 1]`.
#[derive(Debug, Clone)]
enum Prob {
    Small(u64, u64),
    Big(BigUint, BigUint),
}

impl Prob {
    fn new(num: &BigInt, den: &BigInt) -> Prob {
        debug_assert!(den.sign() == Sign::Plus && !num.is_negative() && num <= den);
        let g = num.gcd(den);
        let (num, den) = (num / &g, den / &g);
        match (num.to_u64(), den.to_u64()) {
            (Some(p), Some(q)) => Prob::Small(p, q),
            _ => Prob::Big(num.magnitude().clone(), den.magnitude().clone()),
        }
    }

    fn from_rational(r: &Rational) -> Prob {
        Prob::new(r.numer(), r.denom())
    }

    fn certain(&self) -> Option<bool> {
        match self {
            Prob::Small(p, q) if *p == 0 => Some(false),
            Prob::Small(p, q) if p == q => Some(true),
            Prob::Big(p, _) if p.is_zero() => Some(false),
            Prob::Big(p, q) if p == q => Some(true),
            _ => None,
        }
    }

    /// One exact Bernoulli draw.
    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> bool {
        if let Some(b) = self.certain() {
            return b;
        }
        match self {
            Prob::Small(p, q) => {
                let (mut num, den) = (*p as u128, *q as u128);
                loop {
                    let t = num << 64;
                    let (quot, rem) = ((t / den) as u64, t % den);
                    let u = rng.next_u64();
                    if u != quot {
                        return u < quot;
                    }
                    if rem == 0 {
                        return false;
                    }
                    num = rem;
                }
            }
            Prob::Big(p, q) => {
                let mut num = p.clone();
                loop {
                    let t: BigUint = &num << 64u32;
                    let (quot, rem) = t.div_rem(q);
                    let quot = quot.to_u64().expect("numerator below denominator");
                    let u = rng.next_u64();
                    if u != quot {
                        return u < quot;
                    }
                    if rem.is_zero() {
                        return false;
                    }
                    num = rem;
                }
            }
        }
    }
}

/// Draws `true` with exact probability `p ∈ [0, 1]`.
pub fn bernoulli<R: RngCore + ?Sized>(rng: &mut R, p: &Rational) -> bool {
    Prob::from_rational(p).sample(rng)
}

/// The generator used everywhere: ChaCha8 keyed by `seed` on stream `stream`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A sample of the weighted αβ-tableau of size `n`.
pub fn sample_ab(n: usize, params: &Params, seed: u64) -> Result<Tableau> {
    sample_ab_with(n, params, &mut rng_for(seed, 0))
}

pub fn sample_ab_with<R: RngCore + ?Sized>(n: usize, params: &Params, rng: &mut R) -> Result<Tableau> {
    let plan = StepPlan::new(n, params)?;
    Ok(plan.sample(rng))
}

/// Per-step probabilities for one `(n, a, b)`, reusable across samples.
#[derive(Debug, Clone)]
pub struct StepPlan {
    n: usize,
    kind: PlanKind,
}

#[derive(Debug, Clone)]
enum PlanKind {
    /// `(mark, top_is_alpha)` for steps `m = 1..=n`.
    Steps(Vec<(Prob, Prob)>),
    Diagonal(Symbol),
    DiagonalCoin(Prob),
}

impl StepPlan {
    pub fn new(n: usize, params: &Params) -> Result<Self> {
        let kind = match (&params.a, &params.b) {
            (ExtRational::Infinite, ExtRational::Infinite) => {
                PlanKind::DiagonalCoin(Prob::from_rational(&params.rho))
            }
            (_, ExtRational::Infinite) => PlanKind::Diagonal(Symbol::Alpha),
            (ExtRational::Infinite, _) => PlanKind::Diagonal(Symbol::Beta),
            (ExtRational::Finite(a), ExtRational::Finite(b)) => {
                if a.is_negative() || b.is_negative() {
                    return Err(Error::Parameter("a and b must be nonnegative".into()));
                }
                let d = a.denom().lcm(b.denom());
                let pa = a.numer() * (&d / a.denom());
                let pb = b.numer() * (&d / b.denom());
                let mut steps = Vec::with_capacity(n);
                for m in 1..=n {
                    let bm = &pb + &d * BigInt::from(n - m);
                    let mark = Prob::new(&d, &(&d + &bm));
                    let top = if pa.is_zero() && bm.is_zero() {
                        Prob::from_rational(&params.rho)
                    } else {
                        Prob::new(&bm, &(&pa + &bm))
                    };
                    steps.push((mark, top));
                }
                PlanKind::Steps(steps)
            }
        };
        Ok(StepPlan { n, kind })
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Tableau {
        let n = self.n;
        match &self.kind {
            PlanKind::Diagonal(sym) => Tableau::uniform_diagonal(n, *sym),
            PlanKind::DiagonalCoin(p) => {
                let mut t = Tableau::empty(n);
                for i in 1..=n {
                    let sym = if p.sample(rng) { Symbol::Alpha } else { Symbol::Beta };
                    t.set(i, n + 1 - i, Some(sym));
                }
                t
            }
            PlanKind::Steps(steps) => {
                let mut t = Tableau::empty(n);
                let mut alpha_rows: Vec<bool> = Vec::with_capacity(n);
                let mut marked: Vec<usize> = Vec::with_capacity(n);
                for (idx, (mark, top)) in steps.iter().enumerate() {
                    let m = idx + 1;
                    let col = n + 1 - m;
                    marked.clear();
                    for row in 1..m {
                        if alpha_rows[row - 1] && mark.sample(rng) {
                            marked.push(row);
                        }
                    }
                    let sigma = if top.sample(rng) { Symbol::Alpha } else { Symbol::Beta };
                    match marked.split_first() {
                        None => {
                            t.set(m, col, Some(sigma));
                            alpha_rows.push(sigma == Symbol::Alpha);
                        }
                        Some((&first, rest)) => {
                            t.set(m, col, Some(Symbol::Beta));
                            alpha_rows.push(false);
                            t.set(first, col, Some(sigma));
                            alpha_rows[first - 1] = sigma == Symbol::Alpha;
                            for &row in rest {
                                t.set(row, col, Some(Symbol::Beta));
                                alpha_rows[row - 1] = false;
                            }
                        }
                    }
                }
                t
            }
        }
    }
}

/// A sample of the four-symbol tableau with weights `(α, β, γ, δ)`.
pub fn sample_four(n: usize, weights: [&Rational; 4], seed: u64) -> Result<Tableau> {
    sample_four_with(n, weights, &mut rng_for(seed, 0))
}

pub fn sample_four_with<R: RngCore + ?Sized>(n: usize, weights: [&Rational; 4], rng: &mut R) -> Result<Tableau> {
    FourPlan::new(n, weights)?.sample(rng)
}

/// Reusable plan for four-symbol sampling.
#[derive(Debug, Clone)]
pub struct FourPlan {
    base: StepPlan,
    to_gamma: Prob,
    to_delta: Prob,
}

impl FourPlan {
    pub fn new(n: usize, [alpha, beta, gamma, delta]: [&Rational; 4]) -> Result<Self> {
        if [alpha, beta, gamma, delta].iter().any(|w| w.is_negative()) {
            return Err(Error::Parameter("weights must be nonnegative".into()));
        }
        let ag = alpha + gamma;
        let bd = beta + delta;
        if ag.is_zero() || bd.is_zero() {
            return Err(Error::Parameter("need α + γ > 0 and β + δ > 0".into()));
        }
        let params = Params::finite(ag.recip(), bd.recip())?;
        Ok(FourPlan {
            base: StepPlan::new(n, &params)?,
            to_gamma: Prob::from_rational(&(gamma / &ag)),
            to_delta: Prob::from_rational(&(delta / &bd)),
        })
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<Tableau> {
        let mut t = self.base.sample(rng);
        let cells: Vec<(usize, usize, Symbol)> = t.cells().collect();
        for (row, col, sym) in cells {
            let relabel = match sym {
                Symbol::Alpha if self.to_gamma.sample(rng) => Some(Symbol::Gamma),
                Symbol::Beta if self.to_delta.sample(rng) => Some(Symbol::Delta),
                _ => None,
            };
            if relabel.is_some() {
                t.set(row, col, relabel);
            }
        }
        Ok(t)
    }
}

/// Colour of a ball added to the urn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ball {
    White,
    Black,
}

/// One run of the Friedman urn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrnRun {
    /// `A_n`: white balls added.
    pub white_added: usize,
    /// `B_n`: black balls added.
    pub black_added: usize,
    /// Colour added at each step.
    pub path: Vec<Ball>,
}

/// `n` draws from an urn starting with weights `a` (white) and `b` (black);
/// each draw adds a ball of the opposite colour. An empty start adds a
/// white or black ball with probability `1/2` each.
pub fn urn_sample(n: usize, a: &Rational, b: &Rational, seed: u64) -> Result<UrnRun> {
    urn_sample_with(n, a, b, &mut rng_for(seed, 0))
}

pub fn urn_sample_with<R: RngCore + ?Sized>(n: usize, a: &Rational, b: &Rational, rng: &mut R) -> Result<UrnRun> {
    if a.is_negative() || b.is_negative() {
        return Err(Error::Parameter("urn weights must be nonnegative".into()));
    }
    let d = a.denom().lcm(b.denom());
    let pa = a.numer() * (&d / a.denom());
    let pb = b.numer() * (&d / b.denom());
    let mut run = UrnRun { white_added: 0, black_added: 0, path: Vec::with_capacity(n) };
    for k in 0..n {
        let white_weight = &pa + &d * BigInt::from(run.white_added);
        let total = &pa + &pb + &d * BigInt::from(k);
        let drew_white = if total.is_zero() {
            Prob::Small(1, 2).sample(rng)
        } else {
            Prob::new(&white_weight, &total).sample(rng)
        };
        if drew_white {
            run.black_added += 1;
            run.path.push(Ball::Black);
        } else {
            run.white_added += 1;
            run.path.push(Ball::White);
        }
    }
    Ok(run)
}

/// Statistics of one sampled αβ-tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SampleStats {
    pub diag_alpha: usize,
    pub diag_beta: usize,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub alpha_rows: usize,
    /// Diagonal letters from row 1 down to row `n`.
    pub diagonal: String,
}

impl SampleStats {
    pub fn of(t: &Tableau) -> Self {
        let c = t.counts();
        SampleStats {
            diag_alpha: c.diag_alpha,
            diag_beta: c.diag_beta,
            n_alpha: c.n_alpha,
            n_beta: c.n_beta,
            alpha_rows: c.alpha_rows,
            diagonal: t.diagonal_word().iter().map(|s| s.map_or('.', Symbol::letter)).collect(),
        }
    }
}

/// Mergeable tallies over a batch of samples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BatchSummary {
    pub count: u64,
    /// Samples per value of `A`.
    pub a_hist: BTreeMap<usize, u64>,
    /// Samples per `(N_α, N_β)`.
    pub n_hist: BTreeMap<(usize, usize), u64>,
    /// Samples per value of `r`.
    pub r_hist: BTreeMap<usize, u64>,
    /// Samples per diagonal word.
    pub diagonal_hist: BTreeMap<String, u64>,
}

impl BatchSummary {
    pub fn record(&mut self, s: &SampleStats) {
        self.count += 1;
        *self.a_hist.entry(s.diag_alpha).or_insert(0) += 1;
        *self.n_hist.entry((s.n_alpha, s.n_beta)).or_insert(0) += 1;
        *self.r_hist.entry(s.alpha_rows).or_insert(0) += 1;
        *self.diagonal_hist.entry(s.diagonal.clone()).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: &BatchSummary) {
        self.count += other.count;
        for (k, v) in &other.a_hist {
            *self.a_hist.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.n_hist {
            *self.n_hist.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.r_hist {
            *self.r_hist.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.diagonal_hist {
            *self.diagonal_hist.entry(k.clone()).or_insert(0) += v;
        }
    }

    /// Empirical mean of `A`, exact.
    pub fn mean_a(&self) -> Rational {
        let total: u64 = self.a_hist.iter().map(|(k, c)| *k as u64 * c).sum();
        Rational::new(BigInt::from(total), BigInt::from(self.count.max(1)))
    }

    /// Empirical (population) variance of `A`, exact.
    pub fn variance_a(&self) -> Rational {
        let m = self.mean_a();
        let second: BigInt = self.a_hist.iter().map(|(k, c)| BigInt::from(*k as u64 * *k as u64) * c).sum();
        Rational::new(second, BigInt::from(self.count.max(1))) - &m * &m
    }
}

/// Number of shards a batch of `count` samples is split into.
pub fn shard_count(count: u64) -> u64 {
    count.div_ceil(SHARD_SIZE)
}

/// Draws the samples of shard `shard` of a `count`-sample batch, passing
/// each one to `visit`. Shard `s` holds samples `s·SHARD_SIZE ..` and uses
/// generator stream `s`, so results do not depend on how shards are
/// scheduled.
pub fn for_each_in_shard<F: FnMut(Tableau)>(plan: &StepPlan, seed: u64, count: u64, shard: u64, mut visit: F) {
    let start = shard * SHARD_SIZE;
    let len = count.saturating_sub(start).min(SHARD_SIZE);
    let mut rng = rng_for(seed, shard);
    for _ in 0..len {
        visit(plan.sample(&mut rng));
    }
}

pub fn sample_shard(plan: &StepPlan, seed: u64, count: u64, shard: u64) -> BatchSummary {
    let mut summary = BatchSummary::default();
    for_each_in_shard(plan, seed, count, shard, |t| summary.record(&SampleStats::of(&t)));
    summary
}

/// `count` samples summarized; identical to merging [`sample_shard`] over
/// all shards in any order.
pub fn sample_batch(n: usize, params: &Params, seed: u64, count: u64) -> Result<BatchSummary> {
    let plan = StepPlan::new(n, params)?;
    let mut summary = BatchSummary::default();
    for shard in 0..shard_count(count) {
        summary.merge(&sample_shard(&plan, seed, count, shard));
    }
    Ok(summary)
}
