//! Exhaustive generation of staircase tableaux and the exact weighted sums
//! built on it.
//!
//! An αβ-tableau of size `n` is grown one column at a time, each new column
//! added on the left. With `r` rows currently indexed by `α`, the new column
//! is filled in one of three ways:
//!
//! 1. `α` in the bottom box only;
//! 2. `β` in the bottom box and `β` in a subset `T` of the `α`-indexed rows;
//! 3. `β` in the bottom box, `α` in the topmost row of a nonempty subset `T`
//!    of the `α`-indexed rows and `β` in the rest of `T`.
//!
//! Every valid tableau arises exactly once. Children are visited in the order
//! 1, then 2 by increasing `|T|`, then 3 by increasing `|T|`, with subsets of
//! equal size in lexicographic order of their rows.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::poly::JointPoly;
use crate::rational::{pow, Rational};
use crate::tableau::{Symbol, Tableau};
use crate::{Error, Result};

/// Largest αβ size enumerated unless the caller raises the cap.
pub const DEFAULT_AB_CAP: usize = 8;
/// Largest four-symbol size enumerated unless the caller raises the cap.
pub const DEFAULT_FOUR_CAP: usize = 5;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// A tableau under construction: the rightmost `filled` columns of a size-`n`
/// staircase, which together form a valid tableau of size `filled`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partial {
    tableau: Tableau,
    filled: usize,
    alpha_rows: Vec<bool>,
}

impl Partial {
    pub fn root(n: usize) -> Self {
        Partial { tableau: Tableau::empty(n), filled: 0, alpha_rows: Vec::new() }
    }

    pub fn is_complete(&self) -> bool {
        self.filled == self.tableau.size()
    }

    pub fn filled(&self) -> usize {
        self.filled
    }

    /// The valid tableau of size `filled` built so far.
    pub fn current(&self) -> Tableau {
        let n = self.tableau.size();
        self.tableau.subtableau(1, n + 1 - self.filled).unwrap_or_else(|_| Tableau::empty(0))
    }

    /// Extensions by one column, in generation order.
    pub fn children(&self) -> Vec<Partial> {
        let n = self.tableau.size();
        let m = self.filled + 1;
        let col = n + 1 - m;
        let indexed: Vec<usize> = (1..m).filter(|&row| self.alpha_rows[row - 1]).collect();
        let mut out = Vec::with_capacity(1 << (indexed.len() + 1));

        let mut case_one = self.clone();
        case_one.push_column(col, Symbol::Alpha, &[], None);
        out.push(case_one);

        for size in 0..=indexed.len() {
            for subset in subsets_of_size(&indexed, size) {
                let mut child = self.clone();
                child.push_column(col, Symbol::Beta, &subset, None);
                out.push(child);
            }
        }
        for size in 1..=indexed.len() {
            for subset in subsets_of_size(&indexed, size) {
                let mut child = self.clone();
                child.push_column(col, Symbol::Beta, &subset[1..], Some(subset[0]));
                out.push(child);
            }
        }
        out
    }

    fn push_column(&mut self, col: usize, bottom: Symbol, betas: &[usize], alpha: Option<usize>) {
        let m = self.filled + 1;
        self.tableau.set(m, col, Some(bottom));
        self.alpha_rows.push(bottom == Symbol::Alpha);
        for &row in betas {
            self.tableau.set(row, col, Some(Symbol::Beta));
            self.alpha_rows[row - 1] = false;
        }
        if let Some(row) = alpha {
            self.tableau.set(row, col, Some(Symbol::Alpha));
        }
        self.filled = m;
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn go(items: &[usize], start: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - pick.len() {
                break;
            }
            pick.push(items[i]);
            go(items, i + 1, k, pick, out);
            pick.pop();
        }
    }
    go(items, 0, k, &mut pick, &mut out);
    out
}

/// Depth-first stream of complete αβ-tableaux below one or more partials.
#[derive(Debug, Clone)]
pub struct AbStream {
    stack: Vec<Partial>,
}

impl AbStream {
    pub fn from_partial(p: Partial) -> Self {
        AbStream { stack: alloc::vec![p] }
    }
}

impl Iterator for AbStream {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        while let Some(p) = self.stack.pop() {
            if p.is_complete() {
                return Some(p.tableau);
            }
            let mut kids = p.children();
            kids.reverse();
            self.stack.extend(kids);
        }
        None
    }
}

/// All αβ-tableaux of size `n ≤ DEFAULT_AB_CAP`; `(n+1)!` of them.
pub fn enumerate_ab(n: usize) -> Result<AbStream> {
    enumerate_ab_capped(n, DEFAULT_AB_CAP)
}

pub fn enumerate_ab_capped(n: usize, cap: usize) -> Result<AbStream> {
    check_cap(n, cap)?;
    Ok(AbStream::from_partial(Partial::root(n)))
}

/// The partials after `depth` columns, in stream order. Streaming each one
/// with [`AbStream::from_partial`] and concatenating reproduces
/// [`enumerate_ab`], so the pieces can be processed independently.
pub fn partials(n: usize, depth: usize, cap: usize) -> Result<Vec<Partial>> {
    check_cap(n, cap)?;
    let mut level = alloc::vec![Partial::root(n)];
    for _ in 0..depth.min(n) {
        level = level.iter().flat_map(Partial::children).collect();
    }
    Ok(level)
}

/// All relabelings of an αβ-tableau obtained by turning some `α` into `γ`
/// and some `β` into `δ`, starting with the tableau itself.
pub fn relabelings(t: &Tableau) -> impl Iterator<Item = Tableau> + '_ {
    let cells: Vec<(usize, usize, Symbol)> = t.cells().collect();
    let total = 1u64 << cells.len();
    (0..total).map(move |mask| {
        let mut out = t.clone();
        for (bit, &(row, col, sym)) in cells.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                let swapped = match sym {
                    Symbol::Alpha => Symbol::Gamma,
                    Symbol::Beta => Symbol::Delta,
                    other => other,
                };
                out.set(row, col, Some(swapped));
            }
        }
        out
    })
}

/// All four-symbol tableaux of size `n ≤ DEFAULT_FOUR_CAP`; `4ⁿ n!` of them.
pub fn enumerate_four(n: usize) -> Result<impl Iterator<Item = Tableau>> {
    enumerate_four_capped(n, DEFAULT_FOUR_CAP)
}

pub fn enumerate_four_capped(n: usize, cap: usize) -> Result<impl Iterator<Item = Tableau>> {
    check_cap(n, cap)?;
    let base = AbStream::from_partial(Partial::root(n));
    Ok(base.flat_map(|t| relabelings(&t).collect::<Vec<_>>()))
}

/// Tableaux with the maximal number `2n − 1` of symbols; `2(n−1)!` of them.
pub fn max_symbol_tableaux(n: usize) -> Result<impl Iterator<Item = Tableau>> {
    max_symbol_tableaux_capped(n, DEFAULT_AB_CAP)
}

pub fn max_symbol_tableaux_capped(n: usize, cap: usize) -> Result<impl Iterator<Item = Tableau>> {
    if n == 0 {
        return Err(Error::Domain("maximal tableaux need n ≥ 1".into()));
    }
    let target = 2 * n - 1;
    Ok(enumerate_ab_capped(n, cap)?.filter(move |t| t.counts().total() == target))
}

/// Cached powers `x⁰, x¹, …, x^max`.
#[derive(Debug, Clone)]
pub struct Powers(Vec<Rational>);

impl Powers {
    pub fn new(x: &Rational, max: usize) -> Self {
        let mut v = Vec::with_capacity(max + 1);
        v.push(Rational::one());
        for k in 0..max {
            let next = &v[k] * x;
            v.push(next);
        }
        Powers(v)
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.0[k]
    }
}

/// Number of four-symbol tableaux of size `n` per exponent vector
/// `(N_α, N_β, N_γ, N_δ)`.
pub fn exponent_tally(n: usize, cap: usize) -> Result<BTreeMap<[usize; 4], u64>> {
    let mut tally = BTreeMap::new();
    for t in enumerate_four_capped(n, cap)? {
        *tally.entry(t.counts().exponents()).or_insert(0u64) += 1;
    }
    Ok(tally)
}

/// `Z_n(α, β, γ, δ) = Σ_S wt(S)` over all four-symbol tableaux of size `n`.
pub fn partition_function(
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    delta: &Rational,
) -> Result<Rational> {
    partition_function_capped(n, [alpha, beta, gamma, delta], DEFAULT_FOUR_CAP)
}

pub fn partition_function_capped(n: usize, params: [&Rational; 4], cap: usize) -> Result<Rational> {
    let tally = exponent_tally(n, cap)?;
    let top = 2 * n;
    let powers: Vec<Powers> = params.iter().map(|p| Powers::new(p, top)).collect();
    let mut z = Rational::zero();
    for (exps, count) in tally {
        let mut term = Rational::from_integer((count as i64).into());
        for (p, e) in powers.iter().zip(exps) {
            term *= p.get(e);
        }
        z += term;
    }
    Ok(z)
}

/// Number of αβ-tableaux of size `n` per `(N_α, N_β, A, r)`.
pub fn ab_tally(n: usize, cap: usize) -> Result<BTreeMap<(usize, usize, usize, usize), u64>> {
    let mut tally = BTreeMap::new();
    for t in enumerate_ab_capped(n, cap)? {
        let c = t.counts();
        *tally.entry((c.n_alpha, c.n_beta, c.diag_alpha, c.alpha_rows)).or_insert(0u64) += 1;
    }
    Ok(tally)
}

/// `D_n(x, z) = Σ_S α^{N_α} β^{N_β} x^A z^r` over αβ-tableaux, with
/// coefficients keyed by `(A, r)`.
pub fn joint_poly_a_r(n: usize, alpha: &Rational, beta: &Rational) -> Result<JointPoly> {
    joint_poly_a_r_capped(n, alpha, beta, DEFAULT_AB_CAP)
}

pub fn joint_poly_a_r_capped(n: usize, alpha: &Rational, beta: &Rational, cap: usize) -> Result<JointPoly> {
    let pa = Powers::new(alpha, 2 * n);
    let pb = Powers::new(beta, 2 * n);
    let mut d = JointPoly::zero();
    for ((na, nb, a, r), count) in ab_tally(n, cap)? {
        d.add_term((a, r), Rational::from_integer(count.into()) * pa.get(na) * pb.get(nb));
    }
    Ok(d)
}

/// `Z_n(αx, βy) = Σ_S α^{N_α} β^{N_β} x^{N_α} y^{N_β}`, keyed by `(N_α, N_β)`.
pub fn joint_poly_n(n: usize, alpha: &Rational, beta: &Rational) -> Result<JointPoly> {
    joint_poly_n_capped(n, alpha, beta, DEFAULT_AB_CAP)
}

pub fn joint_poly_n_capped(n: usize, alpha: &Rational, beta: &Rational, cap: usize) -> Result<JointPoly> {
    let pa = Powers::new(alpha, 2 * n);
    let pb = Powers::new(beta, 2 * n);
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for ((na, nb, _, _), count) in ab_tally(n, cap)? {
        *counts.entry((na, nb)).or_insert(0) += count;
    }
    let mut p = JointPoly::zero();
    for ((na, nb), count) in counts {
        p.add_term((na, nb), Rational::from_integer(count.into()) * pa.get(na) * pb.get(nb));
    }
    Ok(p)
}

/// [`joint_poly_n`] divided by its total, i.e. the joint law of `(N_α, N_β)`.
pub fn joint_poly_n_normalized(n: usize, alpha: &Rational, beta: &Rational) -> Result<JointPoly> {
    let p = joint_poly_n(n, alpha, beta)?;
    let total = p.total();
    if total.is_zero() {
        return Err(Error::Parameter("all tableaux have zero weight".into()));
    }
    Ok(p.scale(&(Rational::one() / total)))
}

/// Exact law of `key(S)` for `S` drawn from the αβ-tableaux of size `n` with
/// probability proportional to `α^{N_α} β^{N_β}`.
pub fn weighted_law<K, F>(n: usize, alpha: &Rational, beta: &Rational, cap: usize, mut key: F) -> Result<BTreeMap<K, Rational>>
where
    K: Ord,
    F: FnMut(&Tableau) -> K,
{
    let pa = Powers::new(alpha, 2 * n);
    let pb = Powers::new(beta, 2 * n);
    let mut law: BTreeMap<K, Rational> = BTreeMap::new();
    let mut total = Rational::zero();
    for t in enumerate_ab_capped(n, cap)? {
        let c = t.counts();
        let w = pa.get(c.n_alpha) * pb.get(c.n_beta);
        if w.is_zero() {
            continue;
        }
        total += &w;
        *law.entry(key(&t)).or_insert_with(Rational::zero) += w;
    }
    if total.is_zero() {
        return Err(Error::Parameter("all tableaux have zero weight".into()));
    }
    for p in law.values_mut() {
        *p /= &total;
    }
    Ok(law)
}

/// `α^{N_α} β^{N_β}` for an αβ-tableau.
pub fn ab_weight(t: &Tableau, alpha: &Rational, beta: &Rational) -> Rational {
    let c = t.counts();
    pow(alpha, c.n_alpha) * pow(beta, c.n_beta)
}
