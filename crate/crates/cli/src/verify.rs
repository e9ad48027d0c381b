//! The acceptance suite: fifteen checks, each comparing a computed quantity
//! with an independent count, formula, or exact enumeration.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use staircase_core::asep::{fill_uq, wtx, z_full};
use staircase_core::distributions::*;
use staircase_core::enumerate::*;
use staircase_core::eulerian::{c_table, eulerian, symbolic_triangle, v_triangle, RowStream};
use staircase_core::poly::{BivarPoly, JointPoly};
use staircase_core::rational::{int, pow, rat, rising_factorial, to_f64};
use staircase_core::sampler::{rng_for, urn_sample_with, Params, StepPlan};
use staircase_core::tableau::size_eight_example;
use staircase_core::{Rational, Symbol, Tableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    /// Every check at full size.
    Desk,
    /// Reduced sizes and sample counts, for a fast smoke run.
    Quick,
}

impl Level {
    fn pick<T>(self, desk: T, quick: T) -> T {
        match self {
            Level::Desk => desk,
            Level::Quick => quick,
        }
    }
}

type CheckResult = Result<String, String>;

pub struct Check {
    pub id: u8,
    pub name: &'static str,
    /// Wall-clock limit at desk level.
    pub budget: Option<Duration>,
    run: fn(Level) -> CheckResult,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub fn checks() -> Vec<Check> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Check { id: 1, name: "tableau counts", budget: secs(60), run: counting },
        Check { id: 2, name: "partition functions", budget: None, run: partition_functions },
        Check { id: 3, name: "generalized Eulerian triangle", budget: None, run: triangle },
        Check { id: 4, name: "law of A", budget: None, run: law_of_a },
        Check { id: 5, name: "moments of A", budget: None, run: moments },
        Check { id: 6, name: "generating function recursion", budget: None, run: generating_function },
        Check { id: 7, name: "sampler exactness", budget: secs(30), run: sampler },
        Check { id: 8, name: "urn equivalence", budget: None, run: urn },
        Check { id: 9, name: "Bernoulli decomposition", budget: None, run: decomposition },
        Check { id: 10, name: "symbol positions", budget: None, run: positions },
        Check { id: 11, name: "subtableau laws", budget: None, run: subtableaux },
        Check { id: 12, name: "pair laws", budget: None, run: pair_laws },
        Check { id: 13, name: "ASEP filling", budget: None, run: asep },
        Check { id: 14, name: "limit diagnostics", budget: secs(120), run: limits },
        Check { id: 15, name: "maximal tableaux", budget: None, run: maximal },
    ]
}

pub fn run_check(check: &Check, level: Level) -> Outcome {
    let start = Instant::now();
    let result = std::panic::catch_unwind(|| (check.run)(level))
        .unwrap_or_else(|_| Err("check panicked".to_string()));
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let (Level::Desk, Some(budget), true) = (level, check.budget, passed) {
        if elapsed > budget {
            passed = false;
            detail = format!("{detail}; over time budget of {}s", budget.as_secs());
        }
    }
    Outcome { id: check.id, name: check.name, passed, detail, elapsed }
}

pub fn run_all(level: Level) -> Vec<Outcome> {
    checks().iter().map(|c| run_check(c, level)).collect()
}

pub fn format_outcome(o: &Outcome) -> String {
    format!(
        "[{:>2}] {:<30} {}  ({:.1}s) {}",
        o.id,
        o.name,
        if o.passed { "PASS" } else { "FAIL" },
        o.elapsed.as_secs_f64(),
        o.detail
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: staircase_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn big(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

fn ab_grid() -> Vec<(Rational, Rational)> {
    vec![(int(0), int(0)), (int(0), int(1)), (int(1), int(0)), (int(1), int(1)), (rat(1, 2), rat(1, 2)), (int(2), rat(3, 7))]
}

fn weight_grid() -> Vec<(Rational, Rational)> {
    vec![(int(1), int(1)), (int(2), int(1)), (int(2), int(2)), (rat(1, 3), int(5)), (rat(3, 2), rat(2, 3))]
}

fn four_grid() -> Vec<[Rational; 4]> {
    vec![
        [int(1), int(1), int(1), int(1)],
        [int(2), int(1), int(0), int(0)],
        [int(1), int(2), int(3), int(0)],
        [int(0), int(1), int(1), int(2)],
        [rat(1, 2), int(0), int(0), int(3)],
        [int(0), int(1), int(0), int(1)],
    ]
}

/// `∏_{i<n} (α + β + γ + δ + i(α+γ)(β+δ))`.
fn product_formula(n: usize, [al, be, ga, de]: &[Rational; 4]) -> Rational {
    (0..n).map(|i| al + be + ga + de + int(i as i64) * (al + ga) * (be + de)).product()
}

fn counting(level: Level) -> CheckResult {
    let max_ab = level.pick(7, 5);
    for n in 1..=max_ab {
        let count = core(enumerate_ab(n))?.count();
        ensure(BigInt::from(count) == factorial(n + 1), || format!("αβ count at n={n} is {count}"))?;
        let maximal: Vec<Tableau> = core(max_symbol_tableaux(n))?.collect();
        let expect = factorial(n - 1);
        ensure(BigInt::from(maximal.len()) == &expect * 2, || format!("maximal count at n={n} is {}", maximal.len()))?;
        let full = maximal.iter().filter(|t| t.counts().n_alpha == n).count();
        let short = maximal.iter().filter(|t| t.counts().n_alpha + 1 == n).count();
        ensure(BigInt::from(full) == expect && BigInt::from(short) == expect, || {
            format!("maximal split at n={n} is {full}/{short}")
        })?;
    }
    for n in 1..=level.pick(4, 3) {
        let count = core(enumerate_four(n))?.count();
        let expect = BigInt::from(4u32).pow(n as u32) * factorial(n);
        ensure(BigInt::from(count) == expect, || format!("four-symbol count at n={n} is {count}"))?;
    }
    Ok(format!("n ≤ {max_ab}"))
}

fn partition_functions(level: Level) -> CheckResult {
    for w in four_grid() {
        for n in 1..=level.pick(4, 3) {
            let z = core(partition_function(n, &w[0], &w[1], &w[2], &w[3]))?;
            ensure(z == product_formula(n, &w), || format!("product formula fails at n={n}, weights {w:?}"))?;
            let (al, be) = (&w[0] + &w[2], &w[1] + &w[3]);
            let merged: Rational = core(enumerate_ab(n))?.map(|t| ab_weight(&t, &al, &be)).sum();
            ensure(z == merged, || format!("relabelling identity fails at n={n}, weights {w:?}"))?;
        }
    }
    for n in 1..=level.pick(7, 5) {
        let z: Rational = core(enumerate_ab(n))?.map(|t| ab_weight(&t, &int(2), &int(1))).sum();
        let double_factorial: BigInt = (1..=2 * n + 1).step_by(2).map(BigInt::from).product();
        ensure(z == big(double_factorial), || format!("Z_{n}(2,1) = {z}"))?;
    }
    Ok("six-point grid".into())
}

fn triangle(level: Level) -> CheckResult {
    let expect: Vec<Vec<BivarPoly>> = vec![
        vec![BivarPoly::constant(1)],
        vec![BivarPoly::a(), BivarPoly::b()],
        vec![
            BivarPoly::from_terms(&[(1, 2, 0)]),
            BivarPoly::from_terms(&[(1, 1, 0), (1, 0, 1), (2, 1, 1)]),
            BivarPoly::from_terms(&[(1, 0, 2)]),
        ],
        vec![
            BivarPoly::from_terms(&[(1, 3, 0)]),
            BivarPoly::from_terms(&[(1, 1, 0), (1, 0, 1), (3, 2, 0), (3, 1, 1), (3, 2, 1)]),
            BivarPoly::from_terms(&[(1, 1, 0), (1, 0, 1), (3, 1, 1), (3, 0, 2), (3, 1, 2)]),
            BivarPoly::from_terms(&[(1, 0, 3)]),
        ],
    ];
    ensure(symbolic_triangle(3) == expect, || "symbolic rows n ≤ 3 differ from the table".into())?;
    let n_max = level.pick(200, 60);
    for (a, b) in ab_grid() {
        let ab = &a + &b;
        for (n, row) in core(RowStream::new(&a, &b))?.take(n_max + 1).enumerate() {
            let sum = Rational::new(row.numer_sum(), row.denom.clone());
            ensure(sum == rising_factorial(&ab, n), || format!("row sum at n={n}, a={a}, b={b}"))?;
        }
    }
    Ok(format!("rows n ≤ {n_max}"))
}

fn enumerated_law_of_a(n: usize, alpha: &Rational, beta: &Rational) -> Result<DiscreteDist, String> {
    let law = core(weighted_law(n, alpha, beta, 8, |t| t.counts().diag_alpha))?;
    core(DiscreteDist::new(0, (0..=n).map(|k| law.get(&k).cloned().unwrap_or_else(Rational::zero)).collect()))
}

fn law_of_a(level: Level) -> CheckResult {
    for (alpha, beta) in weight_grid() {
        for n in 1..=level.pick(6, 4) {
            let exact = core(dist_a(n, &alpha.recip(), &beta.recip()))?;
            ensure(exact == enumerated_law_of_a(n, &alpha, &beta)?, || format!("n={n}, α={alpha}, β={beta}"))?;
        }
    }
    for n in 1..=7usize {
        let fact = big(factorial(n));
        let d = core(dist_a(n, &int(1), &int(1)))?;
        let d0 = core(dist_a(n, &int(0), &int(1)))?;
        for k in 0..=n as i64 {
            ensure(d.pmf(k) == big(eulerian(n + 1, k).into()) / (&fact * int(n as i64 + 1)), || {
                format!("Eulerian law at a=b=1, n={n}, k={k}")
            })?;
            ensure(d0.pmf(k) == big(eulerian(n, k - 1).into()) / &fact, || format!("Eulerian law at a=0, b=1, n={n}, k={k}"))?;
        }
    }
    let (zero, one) = (int(0), int(1));
    for n in 2..=level.pick(50, 20) {
        let lhs = core(dist_a(n, &zero, &one))?;
        let rhs = core(dist_a(n - 1, &one, &one))?.shifted(1);
        ensure(lhs.same_law(&rhs), || format!("a=0, b=1 shift at n={n}"))?;
        let lhs = core(dist_a(n, &zero, &zero))?;
        let rhs = if n == 2 { DiscreteDist::point(1) } else { core(dist_a(n - 2, &one, &one))?.shifted(1) };
        ensure(lhs.same_law(&rhs), || format!("a=b=0 shift at n={n}"))?;
    }
    Ok("enumeration, Eulerian and shift identities".into())
}

/// Law of `A` for `n = 0..=n_max` from one pass over the triangle.
fn laws_of_a(n_max: usize, a: &Rational, b: &Rational) -> Result<Vec<Option<DiscreteDist>>, String> {
    if a.is_zero() && b.is_zero() {
        return (0..=n_max).map(|n| Ok(if n < 2 { None } else { Some(core(dist_a(n, a, b))?) })).collect();
    }
    core(RowStream::new(a, b))?
        .take(n_max + 1)
        .map(|row| Ok(Some(core(DiscreteDist::from_weights(0, row.to_rationals()))?)))
        .collect()
}

/// Mean and variance of the law proportional to `weights`, from integer
/// sums.
fn integer_moments(weights: &[BigInt]) -> Option<(Rational, Rational)> {
    let total: BigInt = weights.iter().sum();
    if total.is_zero() {
        return None;
    }
    let first: BigInt = weights.iter().enumerate().map(|(k, w)| w * BigInt::from(k)).sum();
    let second: BigInt = weights.iter().enumerate().map(|(k, w)| w * BigInt::from(k * k)).sum();
    let mean = Rational::new(first, total.clone());
    let var = Rational::new(second, total) - &mean * &mean;
    Some((mean, var))
}

fn moments(level: Level) -> CheckResult {
    let n_max = level.pick(200, 60);
    for (a, b) in ab_grid() {
        let both_zero = a.is_zero() && b.is_zero();
        // At a = b = 0 the law is row n − 2 of the a = b = 1 triangle, shifted by one.
        let (sa, sb, lag) = if both_zero { (int(1), int(1), 2) } else { (a.clone(), b.clone(), 0) };
        for (m, row) in core(RowStream::new(&sa, &sb))?.take(n_max + 1 - lag).enumerate() {
            let n = m + lag;
            if n == 0 {
                continue;
            }
            let (mean, var) = integer_moments(&row.numer).ok_or_else(|| format!("empty row {m}"))?;
            let mean = if both_zero { mean + int(1) } else { mean };
            let closed = core(moments_a(n, &a, &b))?;
            ensure(closed == (mean, var.clone()), || format!("n={n}, a={a}, b={b}"))?;
            let n_r = int(n as i64);
            if n >= 2 && a == rat(1, 2) && b == rat(1, 2) {
                ensure(var == (&n_r + int(1)) / int(12), || format!("(n+1)/12 at n={n}"))?;
            }
            if a == int(1) && b == int(1) {
                ensure(var == (&n_r + int(2)) / int(12), || format!("(n+2)/12 at n={n}"))?;
            }
        }
    }
    Ok(format!("n ≤ {n_max}"))
}

fn generating_function(level: Level) -> CheckResult {
    for (alpha, beta) in weight_grid() {
        let (a, b) = (alpha.recip(), beta.recip());
        let triangle = core(v_triangle(5, &a, &b))?;
        let mut prev = JointPoly::one();
        for n in 1..=level.pick(5, 4) {
            let d = core(joint_poly_a_r(n, &alpha, &beta))?;
            let first = &prev.mul_monomial(&alpha, 1, 1) - &prev.mul_monomial(&alpha, 0, 1);
            let shifted = prev.shift_second(&beta);
            let second = &shifted.mul_monomial(&alpha, 0, 1) + &shifted.scale(&beta);
            ensure(d == &first + &second, || format!("recursion at n={n}, α={alpha}, β={beta}"))?;
            let scale = pow(&(&alpha * &beta), n);
            ensure(d.second_at_one() == triangle.poly(n).scale(&scale), || format!("reduction at n={n}, α={alpha}, β={beta}"))?;
            prev = d;
        }
    }
    let n_max = level.pick(50, 20);
    for b in [int(0), int(1), rat(1, 2), rat(7, 3)] {
        let c = core(c_table(n_max, &b))?;
        for n in 1..=n_max {
            let ni = n as i64;
            ensure(c.get(n, ni).is_one(), || format!("c[{n}][{n}] ≠ 1 at b={b}"))?;
            let expect = int(ni) * (int(ni) + int(2) * &b - int(1)) / int(2);
            ensure(c.get(n, ni - 1) == expect, || format!("c[{n}][{}] at b={b}", n - 1))?;
        }
    }
    Ok("n ≤ 5".into())
}

fn p_value(statistic: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    ChiSquared::new(dof as f64).map(|d| d.sf(statistic)).unwrap_or(0.0)
}

fn fit<K: Ord>(law: &BTreeMap<K, Rational>, observed: &BTreeMap<K, u64>) -> Result<f64, String> {
    let stray: u64 = observed.iter().filter(|(k, _)| law.get(k).is_none_or(|p| p.is_zero())).map(|(_, c)| c).sum();
    ensure(stray == 0, || format!("{stray} samples outside the support"))?;
    let cells = law.iter().map(|(k, p)| (p.clone(), observed.get(k).copied().unwrap_or(0))).collect();
    let chi = chi_square_cells(cells, 0);
    Ok(p_value(chi.statistic, chi.dof))
}

fn tally<K: Ord>(keys: impl Iterator<Item = K>) -> BTreeMap<K, u64> {
    let mut out = BTreeMap::new();
    for k in keys {
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

const SAMPLER_GRID: [(i64, i64); 3] = [(1, 1), (2, 1), (2, 2)];

fn sampler(level: Level) -> CheckResult {
    let samples = level.pick(100_000, 20_000);
    let n = 4;
    let mut worst = 1.0f64;
    for (i, (al, be)) in SAMPLER_GRID.into_iter().enumerate() {
        let (alpha, beta) = (int(al), int(be));
        let law: BTreeMap<Tableau, Rational> = core(weighted_law(n, &alpha, &beta, 8, |t| t.clone()))?;
        ensure(law.len() == 120, || format!("support has {} points", law.len()))?;
        let plan = core(StepPlan::new(n, &core(Params::from_weights(alpha.into(), beta.into(), rat(1, 2)))?))?;
        let mut rng = rng_for(2024 + i as u64, 0);
        let p = fit(&law, &tally((0..samples).map(|_| plan.sample(&mut rng))))?;
        ensure(p > 1e-3, || format!("p = {p:.2e} at (α,β)=({al},{be})"))?;
        worst = worst.min(p);
    }
    Ok(format!("{samples} samples per point, smallest p = {worst:.3}"))
}

fn urn(level: Level) -> CheckResult {
    let n_max = level.pick(50, 20);
    for (a, b) in ab_grid() {
        let laws = core(urn_laws(n_max, &a, &b))?;
        let triangle = laws_of_a(n_max, &a, &b)?;
        for (n, (u, t)) in laws.iter().zip(&triangle).enumerate().skip(1) {
            if let Some(t) = t {
                ensure(u.same_law(t), || format!("urn recursion differs at n={n}, a={a}, b={b}"))?;
            }
        }
    }
    let samples = level.pick(100_000, 20_000);
    let n = 4;
    let mut worst = 1.0f64;
    for (i, (al, be)) in SAMPLER_GRID.into_iter().enumerate() {
        let (a, b) = (rat(1, al), rat(1, be));
        let law: BTreeMap<usize, Rational> =
            core(dist_a(n, &a, &b))?.iter().map(|(k, p)| (k as usize, p.clone())).collect();
        let mut rng = rng_for(3024 + i as u64, 0);
        let mut draws = Vec::with_capacity(samples);
        for _ in 0..samples {
            draws.push(core(urn_sample_with(n, &a, &b, &mut rng))?.white_added);
        }
        let p = fit(&law, &tally(draws.into_iter()))?;
        ensure(p > 1e-3, || format!("urn p = {p:.2e} at (a,b)=({a},{b})"))?;
        worst = worst.min(p);
    }
    Ok(format!("n ≤ {n_max} exact, smallest p = {worst:.3}"))
}

fn decomposition(level: Level) -> CheckResult {
    let n_max = level.pick(30, 15);
    let mut worst = 0.0f64;
    for (a, b) in ab_grid() {
        let start = if a.is_zero() && b.is_zero() { 2 } else { 1 };
        for n in start..=n_max {
            let dec = core(bernoulli_decomposition(n, &a, &b))?;
            ensure(dec.xi.iter().all(|x| x.is_finite() && *x >= 0.0), || format!("root off the half-line at n={n}"))?;
            ensure(dec.xi.windows(2).all(|w| w[0] < w[1]), || format!("repeated root at n={n}, a={a}, b={b}"))?;
            let tv = core(dist_a(n, &a, &b))?.total_variation_f64(0, &dec.reconstruct());
            ensure(tv < 1e-9, || format!("total variation {tv:e} at n={n}, a={a}, b={b}"))?;
            worst = worst.max(tv);
        }
    }
    let rows = level.pick(200, 60);
    for (a, b) in ab_grid() {
        for (n, row) in core(RowStream::new(&a, &b))?.take(rows + 1).enumerate() {
            let weights: Vec<Rational> = row.numer.iter().cloned().map(Rational::from_integer).collect();
            ensure(is_log_concave(&weights), || format!("row n={n} not log-concave at a={a}, b={b}"))?;
        }
    }
    Ok(format!("n ≤ {n_max}, largest total variation {worst:.1e}"))
}

struct Frequencies {
    total: Rational,
    diag_mask: BTreeMap<u32, Rational>,
    cells: BTreeMap<(usize, usize, Symbol), Rational>,
}

fn frequencies(n: usize, alpha: &Rational, beta: &Rational) -> Result<Frequencies, String> {
    let mut f = Frequencies { total: Rational::zero(), diag_mask: BTreeMap::new(), cells: BTreeMap::new() };
    for t in core(enumerate_ab(n))? {
        let w = ab_weight(&t, alpha, beta);
        f.total += &w;
        let mask = (1..=n).filter(|&j| column_diagonal_is_alpha(&t, j)).map(|j| 1u32 << (j - 1)).sum();
        *f.diag_mask.entry(mask).or_insert_with(Rational::zero) += &w;
        for (i, j, s) in t.cells() {
            *f.cells.entry((i, j, s)).or_insert_with(Rational::zero) += &w;
        }
    }
    Ok(f)
}

fn positions(level: Level) -> CheckResult {
    for (alpha, beta) in weight_grid() {
        let (a, b) = (alpha.recip(), beta.recip());
        for n in 1..=level.pick(5, 4) {
            let f = frequencies(n, &alpha, &beta)?;
            let all_alpha = |cols: &[usize]| -> Rational {
                let need: u32 = cols.iter().map(|j| 1u32 << (j - 1)).sum();
                f.diag_mask.iter().filter(|(m, _)| *m & need == need).map(|(_, w)| w).sum::<Rational>() / &f.total
            };
            for i in 1..=n {
                ensure(core(diag_prob(n, &a, &b, i))? == all_alpha(&[n + 1 - i]), || format!("diagonal row {i}, n={n}"))?;
            }
            for mask in 1u32..(1 << n) {
                let cols: Vec<usize> = (1..=n).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                ensure(core(joint_diag_alpha(n, &a, &b, &cols))? == all_alpha(&cols), || format!("columns {cols:?}, n={n}"))?;
                if let [j, k] = cols[..] {
                    let cov = all_alpha(&[j, k]) - all_alpha(&[j]) * all_alpha(&[k]);
                    ensure(core(diag_cov(n, &a, &b, j, k))? == cov, || format!("covariance ({j},{k}), n={n}"))?;
                }
            }
            let zero = Rational::zero();
            for i in 1..n {
                for j in 1..=n - i {
                    let c = core(cell_prob(n, &a, &b, i, j))?;
                    let fa = f.cells.get(&(i, j, Symbol::Alpha)).unwrap_or(&zero) / &f.total;
                    let fb = f.cells.get(&(i, j, Symbol::Beta)).unwrap_or(&zero) / &f.total;
                    ensure(c.alpha == fa && c.beta == fb, || format!("box ({i},{j}), n={n}"))?;
                }
            }
        }
    }
    let cov = core(diag_cov(2, &int(1), &int(1), 1, 2))?;
    ensure(cov == rat(-1, 18), || format!("covariance at n=2 is {cov}"))?;
    Ok("exhaustive weighted frequencies".into())
}

fn subtableaux(level: Level) -> CheckResult {
    let mut count = 0;
    for (alpha, beta) in weight_grid() {
        let (a, b) = (alpha.recip(), beta.recip());
        for n in 1..=level.pick(5, 4) {
            for i in 1..=n {
                for j in 1..=n + 1 - i {
                    let report = core(subtableau_law_check(n, &a, &b, i, j))?;
                    ensure(report.equal(), || format!("n={n}, ({i},{j}), a={a}, b={b}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} laws compared"))
}

fn pair_laws(level: Level) -> CheckResult {
    for (alpha, beta) in weight_grid() {
        for n in 1..=level.pick(5, 4) {
            let pairs = core(dist_n_pairs(n, &alpha.recip(), &beta.recip()))?;
            let enumerated = core(joint_poly_n_normalized(n, &alpha, &beta))?;
            ensure(pairs.joint_pgf() == enumerated, || format!("n={n}, α={alpha}, β={beta}"))?;
        }
    }
    for n in 1..=20 {
        let pairs = core(dist_n_pairs(n, &int(1), &int(1)))?;
        let deficit = core(DiscreteDist::new(0, core(pairs.law_alpha())?.probs().iter().rev().cloned().collect()))?;
        let mut sum = DiscreteDist::point(0);
        for i in 2..=n + 1 {
            sum = sum.convolve(&core(DiscreteDist::bernoulli(&rat(1, i as i64)))?);
        }
        ensure(deficit.same_law(&sum), || format!("harmonic representation at n={n}"))?;
    }
    Ok("product law and harmonic representation".into())
}

const SIZE_EIGHT_FILLING: &str = "uauuuqqg\nubuuaqg\nuuauug\nqqqqd\nqdua\nqqd\nub\na\n";

fn asep(level: Level) -> CheckResult {
    let example = size_eight_example();
    let filled = core(fill_uq(&example))?;
    ensure(filled.exponents() == [5, 2, 3, 3, 13, 10], || format!("exponents {:?}", filled.exponents()))?;
    ensure(filled.render_text() == SIZE_EIGHT_FILLING, || "rendered filling differs".into())?;
    let n_max = level.pick(4, 3);
    for n in 1..=n_max {
        for t in core(enumerate_four(n))? {
            let e = core(wtx(&t))?;
            ensure(e.iter().sum::<usize>() == n * (n + 1) / 2, || format!("degree of {t:?}"))?;
        }
        for w in four_grid() {
            let one = int(1);
            let z = core(z_full(n, [&w[0], &w[1], &w[2], &w[3], &one, &one]))?;
            ensure(z == product_formula(n, &w), || format!("z_full at n={n}, weights {w:?}"))?;
        }
    }
    Ok(format!("size-8 filling reproduced, n ≤ {n_max}"))
}

fn limits(level: Level) -> CheckResult {
    let half = rat(1, 2);
    let n = 2000;
    let clt = core(clt_diagnostics(n, &half, &half))?;
    ensure(clt.ks_to_normal < 0.02, || format!("Kolmogorov distance {} at n={n}", clt.ks_to_normal))?;
    let small = core(clt_diagnostics(100, &half, &half))?;
    let large = core(clt_diagnostics(level.pick(1000, 400), &half, &half))?;
    ensure(large.llt_max_residual < small.llt_max_residual, || {
        format!("local residual {} not below {}", large.llt_max_residual, small.llt_max_residual)
    })?;
    let sizes: &[usize] = level.pick(&[10, 100, 1000, 10_000], &[10, 100, 1000]);
    let rows = core(n_alpha_growth_check(sizes, &int(1), &int(1)))?;
    let worst = rows.iter().map(|r| r.var_deviation.abs()).fold(0.0, f64::max);
    ensure(worst <= 2.0, || format!("variance deviation {worst}"))?;
    Ok(format!("KS {:.4}, largest variance deviation {worst:.2}", clt.ks_to_normal))
}

fn maximal(level: Level) -> CheckResult {
    for n in 1..=level.pick(6, 5) {
        for t in core(max_symbol_tableaux(n))? {
            ensure(t.get(1, 1).is_some(), || format!("box (1,1) empty in {t:?}"))?;
            let mut rest = t.clone();
            rest.set(1, 1, None);
            for j in 2..=n {
                let alphas = (1..=n + 1 - j).filter(|&i| rest.get(i, j) == Some(Symbol::Alpha)).count();
                ensure(alphas == 1, || format!("column {j} has {alphas} α after removing box (1,1)"))?;
            }
            for i in 2..=n {
                let betas = (1..=n + 1 - i).filter(|&j| rest.get(i, j) == Some(Symbol::Beta)).count();
                ensure(betas == 1, || format!("row {i} has {betas} β after removing box (1,1)"))?;
            }
            let c = rest.counts();
            ensure(c.n_alpha == n - 1 && c.n_beta == n - 1, || "symbol counts after removing box (1,1)".into())?;
        }
    }
    let samples = level.pick(100_000u64, 20_000);
    let n = 5;
    for (i, rho) in [rat(1, 2), rat(1, 5), rat(9, 10)].into_iter().enumerate() {
        let params = core(Params::new(int(0).into(), int(0).into(), rho.clone()))?;
        let plan = core(StepPlan::new(n, &params))?;
        let mut rng = rng_for(4024 + i as u64, 0);
        let hits = (0..samples).filter(|_| plan.sample(&mut rng).get(1, 1) == Some(Symbol::Alpha)).count();
        let p = to_f64(&rho);
        let sigma = (p * (1.0 - p) / samples as f64).sqrt();
        let freq = hits as f64 / samples as f64;
        ensure((freq - p).abs() <= 3.0 * sigma, || format!("box (1,1) frequency {freq} against rho {rho}"))?;
    }
    Ok(format!("structure n ≤ 6, {samples} samples per rho"))
}
