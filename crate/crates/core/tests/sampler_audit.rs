mod common;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand_core::RngCore;
use staircase_core::distributions::{chi_square_cells, diag_prob, dist_a};
use staircase_core::enumerate::{enumerate_four, joint_poly_n_normalized, max_symbol_tableaux};
use staircase_core::rational::{int, rat, to_f64};
use staircase_core::sampler::*;
use staircase_core::{ExtRational, Rational, Symbol, Tableau};

use common::{chi_square_p_value, exact_law, weight_grid};

/// Goodness-of-fit threshold. Seeds are fixed, so a pass is reproducible.
const MIN_P: f64 = 1e-4;

fn fit<K: Ord + std::fmt::Debug>(law: &BTreeMap<K, Rational>, observed: &BTreeMap<K, u64>) -> f64 {
    let stray: u64 = observed.iter().filter(|(k, _)| law.get(k).is_none_or(|p| p.is_zero())).map(|(_, c)| *c).sum();
    assert_eq!(stray, 0, "sampled outside the support");
    let cells = law.iter().map(|(k, p)| (p.clone(), observed.get(k).copied().unwrap_or(0))).collect();
    let chi = chi_square_cells(cells, 0);
    chi_square_p_value(chi.statistic, chi.dof)
}

fn tally<K: Ord>(keys: impl Iterator<Item = K>) -> BTreeMap<K, u64> {
    let mut out = BTreeMap::new();
    for k in keys {
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

#[test]
fn whole_tableau_law_small_sizes() {
    for (w, (alpha, beta)) in weight_grid().into_iter().enumerate() {
        let params = Params::from_weights(alpha.clone().into(), beta.clone().into(), rat(1, 2)).unwrap();
        for n in 1..=4 {
            let plan = StepPlan::new(n, &params).unwrap();
            let mut rng = rng_for(100 + w as u64, n as u64);
            let observed = tally((0..100_000).map(|_| plan.sample(&mut rng)));
            let p = fit(&exact_law(n, &alpha, &beta), &observed);
            assert!(p > MIN_P, "n={n} α={alpha} β={beta} p={p}");
        }
    }
}

#[test]
fn statistic_laws_at_larger_sizes() {
    for (w, (alpha, beta)) in weight_grid().into_iter().enumerate() {
        let (a, b) = (alpha.recip(), beta.recip());
        let params = Params::finite(a.clone(), b.clone()).unwrap();
        for n in [5, 6] {
            let plan = StepPlan::new(n, &params).unwrap();
            let mut rng = rng_for(200 + w as u64, n as u64);
            let samples: Vec<SampleStats> = (0..50_000).map(|_| SampleStats::of(&plan.sample(&mut rng))).collect();

            let law_a: BTreeMap<i64, Rational> = dist_a(n, &a, &b).unwrap().iter().map(|(k, p)| (k, p.clone())).collect();
            let p = fit(&law_a, &tally(samples.iter().map(|s| s.diag_alpha as i64)));
            assert!(p > MIN_P, "A: n={n} a={a} b={b} p={p}");

            let law_n: BTreeMap<(usize, usize), Rational> =
                joint_poly_n_normalized(n, &alpha, &beta).unwrap().terms().map(|(k, p)| (*k, p.clone())).collect();
            let p = fit(&law_n, &tally(samples.iter().map(|s| (s.n_alpha, s.n_beta))));
            assert!(p > MIN_P, "N: n={n} a={a} b={b} p={p}");
        }
    }
}

#[test]
fn first_column_marginal() {
    for (a, b) in [(int(1), int(1)), (rat(1, 3), int(5)), (int(0), int(2))] {
        let n = 10;
        let summary = sample_batch(n, &Params::finite(a.clone(), b.clone()).unwrap(), 7, 100_000).unwrap();
        let alpha_top: u64 = summary.diagonal_hist.iter().filter(|(w, _)| w.starts_with('a')).map(|(_, c)| *c).sum();
        let p = diag_prob(n, &a, &b, 1).unwrap();
        let law: BTreeMap<bool, Rational> = [(true, p.clone()), (false, int(1) - &p)].into();
        let observed: BTreeMap<bool, u64> = [(true, alpha_top), (false, summary.count - alpha_top)].into();
        assert!(fit(&law, &observed) > MIN_P, "a={a} b={b}");
    }
}

#[test]
fn batch_moments() {
    let half = rat(1, 2);
    let params = Params::finite(half.clone(), half.clone()).unwrap();
    let s = sample_batch(10, &params, 11, 200_000).unwrap();
    let se = (2.5f64 / 200_000.0).sqrt();
    assert!((to_f64(&s.mean_a()) - 5.0).abs() < 5.0 * se);
    let s = sample_batch(11, &params, 12, 200_000).unwrap();
    assert!((to_f64(&s.variance_a()) - 1.0).abs() < 0.02);
}

#[test]
fn infinite_parameters() {
    let inf = ExtRational::Infinite;
    let all_alpha = Params::new(int(1).into(), inf.clone(), rat(1, 2)).unwrap();
    let all_beta = Params::new(inf.clone(), int(1).into(), rat(1, 2)).unwrap();
    for n in 1..=6 {
        for seed in 0..20 {
            assert_eq!(sample_ab(n, &all_alpha, seed).unwrap(), Tableau::uniform_diagonal(n, Symbol::Alpha));
            assert_eq!(sample_ab(n, &all_beta, seed).unwrap(), Tableau::uniform_diagonal(n, Symbol::Beta));
        }
    }
    let coin = Params::new(inf.clone(), inf, rat(1, 3)).unwrap();
    let n = 4;
    let plan = StepPlan::new(n, &coin).unwrap();
    let mut rng = rng_for(3, 0);
    let samples: Vec<Tableau> = (0..30_000).map(|_| plan.sample(&mut rng)).collect();
    assert!(samples.iter().all(|t| t.cells().count() == n && t.is_valid()));
    let mut law = BTreeMap::new();
    for k in 0..=n {
        let choose = (1..=k).fold(1u64, |c, i| c * (n - i + 1) as u64 / i as u64);
        law.insert(k, int(choose as i64) * rat(1, 3).pow(k as i32) * rat(2, 3).pow((n - k) as i32));
    }
    assert!(fit(&law, &tally(samples.iter().map(|t| t.counts().diag_alpha))) > MIN_P);
}

#[test]
fn tie_rule_at_zero_parameters() {
    let n = 3;
    let law_a: BTreeMap<i64, Rational> = dist_a(n, &int(0), &int(0)).unwrap().iter().map(|(k, p)| (k, p.clone())).collect();
    for (i, rho) in [int(0), rat(1, 2), int(1), rat(1, 5)].into_iter().enumerate() {
        let params = Params::new(int(0).into(), int(0).into(), rho.clone()).unwrap();
        let s = sample_batch(n, &params, 40 + i as u64, 60_000).unwrap();
        let observed: BTreeMap<i64, u64> = s.a_hist.iter().map(|(k, c)| (*k as i64, *c)).collect();
        assert!(fit(&law_a, &observed) > MIN_P, "rho={rho}");
    }
    let maximal: Vec<Tableau> = max_symbol_tableaux(n).unwrap().collect();
    let uniform = rat(1, maximal.len() as i64);
    let law: BTreeMap<Tableau, Rational> = maximal.into_iter().map(|t| (t, uniform.clone())).collect();
    let plan = StepPlan::new(n, &Params::finite(int(0), int(0)).unwrap()).unwrap();
    let mut rng = rng_for(41, 0);
    assert!(fit(&law, &tally((0..60_000).map(|_| plan.sample(&mut rng)))) > MIN_P);
}

fn four_law(n: usize, w: [&Rational; 4]) -> BTreeMap<Tableau, Rational> {
    let mut law: BTreeMap<Tableau, Rational> = enumerate_four(n).unwrap().map(|t| {
        let weight = t.weight(w[0], w[1], w[2], w[3]);
        (t, weight)
    }).collect();
    let total: Rational = law.values().sum();
    for p in law.values_mut() {
        *p /= &total;
    }
    law
}

/// Independent sampler: every box gets a symbol with probability
/// proportional to its weight (empty has weight 1), kept only if valid.
fn rejection_sample<R: RngCore>(n: usize, w: [&Rational; 4], rng: &mut R) -> Tableau {
    let weight_f = [1.0, to_f64(w[0]), to_f64(w[1]), to_f64(w[2]), to_f64(w[3])];
    let total: f64 = weight_f.iter().sum();
    let symbols = [None, Some(Symbol::Alpha), Some(Symbol::Beta), Some(Symbol::Gamma), Some(Symbol::Delta)];
    loop {
        let mut t = Tableau::empty(n);
        for r in 1..=n {
            for c in 1..=n + 1 - r {
                let mut u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * total;
                let mut pick = 0;
                while pick < 4 && u >= weight_f[pick] {
                    u -= weight_f[pick];
                    pick += 1;
                }
                t.set(r, c, symbols[pick]);
            }
        }
        if t.is_valid() {
            return t;
        }
    }
}

#[test]
fn four_symbol_laws() {
    let one = int(1);
    let weights = [
        [one.clone(), one.clone(), one.clone(), one.clone()],
        [int(2), one.clone(), rat(1, 2), int(3)],
        [rat(1, 3), int(2), one.clone(), rat(1, 4)],
    ];
    for (i, w) in weights.iter().enumerate() {
        let w = [&w[0], &w[1], &w[2], &w[3]];
        for n in 1..=3 {
            let law = four_law(n, w);
            let plan = FourPlan::new(n, w).unwrap();
            let mut rng = rng_for(60 + i as u64, n as u64);
            let observed = tally((0..100_000).map(|_| plan.sample(&mut rng).unwrap()));
            let p = fit(&law, &observed);
            assert!(p > MIN_P, "n={n} weights {w:?} p={p}");
        }
        let mut rng = rng_for(70 + i as u64, 0);
        let observed = tally((0..20_000).map(|_| rejection_sample(3, w, &mut rng)));
        let p = fit(&four_law(3, w), &observed);
        assert!(p > MIN_P, "rejection oracle disagrees: weights {w:?} p={p}");
    }
}

#[test]
fn urn_matches_law_of_a() {
    for (i, (a, b)) in [(int(1), int(1)), (rat(1, 2), int(2)), (int(0), int(0)), (int(0), int(1))].into_iter().enumerate() {
        let n = 7;
        let law: BTreeMap<i64, Rational> = dist_a(n, &a, &b).unwrap().iter().map(|(k, p)| (k, p.clone())).collect();
        let mut rng = rng_for(80 + i as u64, 0);
        let observed = tally((0..50_000).map(|_| {
            let run = urn_sample_with(n, &a, &b, &mut rng).unwrap();
            assert_eq!(run.white_added + run.black_added, n);
            run.white_added as i64
        }));
        assert!(fit(&law, &observed) > MIN_P, "a={a} b={b}");
    }
}

#[test]
fn batches_are_reproducible_and_shard_independent() {
    let params = Params::finite(rat(2, 3), int(3)).unwrap();
    let count = 3 * SHARD_SIZE + 17;
    let whole = sample_batch(9, &params, 5, count).unwrap();
    assert_eq!(whole, sample_batch(9, &params, 5, count).unwrap());
    assert_eq!(whole.count, count);
    let plan = StepPlan::new(9, &params).unwrap();
    let mut merged = BatchSummary::default();
    for shard in (0..shard_count(count)).rev() {
        merged.merge(&sample_shard(&plan, 5, count, shard));
    }
    assert_eq!(merged, whole);
    assert_ne!(whole, sample_batch(9, &params, 6, count).unwrap());
    assert_eq!(sample_ab(6, &params, 1).unwrap(), sample_ab(6, &params, 1).unwrap());
}

#[test]
fn exact_bernoulli_extremes() {
    let mut rng = rng_for(9, 9);
    assert!((0..1000).all(|_| bernoulli(&mut rng, &Rational::one())));
    assert!((0..1000).all(|_| !bernoulli(&mut rng, &Rational::zero())));
    let tiny = rat(1, 1 << 40);
    assert!((0..10_000).all(|_| !bernoulli(&mut rng, &tiny)));
    let p = rat(1, 3);
    let hits = (0..90_000).filter(|_| bernoulli(&mut rng, &p)).count();
    assert!((hits as f64 - 30_000.0).abs() < 5.0 * (20_000f64).sqrt());
    let huge = Rational::new(num_bigint::BigInt::from(10).pow(30), num_bigint::BigInt::from(10).pow(30) * 3 + 1);
    let hits = (0..90_000).filter(|_| bernoulli(&mut rng, &huge)).count();
    assert!((hits as f64 - 30_000.0).abs() < 5.0 * (20_000f64).sqrt());
}

