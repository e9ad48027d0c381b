mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use staircase_core::distributions::*;
use staircase_core::enumerate::{ab_weight, enumerate_ab, joint_poly_n_normalized, weighted_law};
use staircase_core::eulerian::eulerian;
use staircase_core::rational::{int, rat, to_f64};
use staircase_core::{Rational, Symbol};

use common::{ab_grid, weight_grid};

fn enumerated_law_of_a(n: usize, alpha: &Rational, beta: &Rational) -> DiscreteDist {
    let law = weighted_law(n, alpha, beta, 8, |t| t.counts().diag_alpha).unwrap();
    DiscreteDist::new(0, (0..=n).map(|k| law.get(&k).cloned().unwrap_or_else(Rational::zero)).collect()).unwrap()
}

#[test]
fn law_of_a_matches_enumeration() {
    for (alpha, beta) in weight_grid() {
        for n in 1..=6 {
            let exact = dist_a(n, &alpha.recip(), &beta.recip()).unwrap();
            assert_eq!(exact, enumerated_law_of_a(n, &alpha, &beta), "n={n} α={alpha} β={beta}");
        }
    }
}

#[test]
fn law_of_a_specializations() {
    let big = |x| Rational::from_integer(BigInt::from(x));
    for n in 1..=7usize {
        let fact: Rational = (1..=n as i64).map(int).product();
        let d = dist_a(n, &int(1), &int(1)).unwrap();
        for k in 0..=n {
            assert_eq!(d.pmf(k as i64), big(eulerian(n + 1, k as i64)) / (&fact * int(n as i64 + 1)));
        }
        let d = dist_a(n, &int(0), &int(1)).unwrap();
        for k in 0..=n {
            assert_eq!(d.pmf(k as i64), big(eulerian(n, k as i64 - 1)) / &fact);
        }
    }
    assert_eq!(dist_a(2, &int(1), &int(1)).unwrap().probs(), [rat(1, 6), rat(4, 6), rat(1, 6)]);
}

#[test]
fn shift_identities() {
    let one = int(1);
    let zero = int(0);
    for n in 1..=50 {
        let lhs = dist_a(n, &zero, &one).unwrap();
        let rhs = if n == 1 { DiscreteDist::point(1) } else { dist_a(n - 1, &one, &one).unwrap().shifted(1) };
        assert!(lhs.same_law(&rhs), "n={n}");
    }
    for n in 2..=50 {
        let lhs = dist_a(n, &zero, &zero).unwrap();
        let rhs = if n == 2 { DiscreteDist::point(1) } else { dist_a(n - 2, &one, &one).unwrap().shifted(1) };
        assert!(lhs.same_law(&rhs), "n={n}");
    }
}

#[test]
fn b_is_a_with_parameters_swapped() {
    for (a, b) in ab_grid() {
        for n in 2..=50 {
            let law_a = dist_a(n, &b, &a).unwrap();
            let law_b: Vec<Rational> = dist_a(n, &a, &b).unwrap().probs().iter().rev().cloned().collect();
            assert_eq!(law_a.probs(), &law_b[..]);
        }
    }
}

#[test]
fn moments_match_the_law() {
    for (a, b) in ab_grid() {
        let start = if a.is_zero() && b.is_zero() { 2 } else { 1 };
        for n in start..=60 {
            let d = dist_a(n, &a, &b).unwrap();
            assert_eq!(moments_a(n, &a, &b).unwrap(), (d.mean(), d.variance()), "n={n} a={a} b={b}");
            assert!(d.is_log_concave() && d.is_unimodal());
        }
    }
}

#[test]
fn decomposition_reconstructs_the_law() {
    for (a, b) in ab_grid() {
        let start = if a.is_zero() && b.is_zero() { 2 } else { 1 };
        for n in start..=30 {
            let dec = bernoulli_decomposition(n, &a, &b).unwrap();
            assert_eq!(dec.p.len(), n);
            assert!(dec.xi.iter().all(|x| *x >= 0.0));
            assert!(dec.xi.windows(2).all(|w| w[0] < w[1]), "roots not simple");
            let law = dist_a(n, &a, &b).unwrap();
            let tv = law.total_variation_f64(0, &dec.reconstruct());
            assert!(tv < 1e-9, "n={n} a={a} b={b} tv={tv}");
            assert!((dec.mean() - to_f64(&law.mean())).abs() < 1e-9);
        }
    }
    let dec = bernoulli_decomposition(30, &rat(1, 2), &rat(1, 2)).unwrap();
    let tv = dist_a(30, &rat(1, 2), &rat(1, 2)).unwrap().total_variation_f64(0, &dec.reconstruct());
    assert!(tv < 1e-9);
}

#[test]
fn pair_product_matches_enumeration() {
    for (alpha, beta) in weight_grid() {
        for n in 1..=5 {
            let pairs = dist_n_pairs(n, &alpha.recip(), &beta.recip()).unwrap();
            let enumerated = joint_poly_n_normalized(n, &alpha, &beta).unwrap();
            assert_eq!(pairs.joint_pgf(), enumerated);
            let law = pairs.law_alpha().unwrap();
            assert_eq!(law.mean(), pairs.mean_alpha);
            assert_eq!(law.variance(), pairs.var_alpha);
            let mean_beta: Rational = enumerated.terms().map(|((_, j), p)| int(*j as i64) * p).sum();
            assert_eq!(mean_beta, pairs.mean_beta);
            let cross: Rational = enumerated.terms().map(|((i, j), p)| int((i * j) as i64) * p).sum();
            assert_eq!(cross - &pairs.mean_alpha * &pairs.mean_beta, pairs.cov);
        }
    }
}

#[test]
fn harmonic_representations() {
    for n in 1..=20 {
        let pairs = dist_n_pairs(n, &int(1), &int(1)).unwrap();
        let deficit =
            DiscreteDist::new(0, pairs.law_alpha().unwrap().probs().iter().rev().cloned().collect()).unwrap();
        let mut sum = DiscreteDist::point(0);
        for i in 2..=n + 1 {
            sum = sum.convolve(&DiscreteDist::bernoulli(&rat(1, i as i64)).unwrap());
        }
        assert!(deficit.same_law(&sum), "n={n}");

        let pairs = dist_n_pairs(n, &int(0), &int(1)).unwrap();
        let mut beta_deficit = DiscreteDist::point(n as i64);
        for s in &pairs.steps {
            beta_deficit = beta_deficit.convolve(&DiscreteDist::new(-1, vec![s.beta_prob(), int(1) - s.beta_prob()]).unwrap());
        }
        let mut expect = DiscreteDist::point(0);
        for i in 1..=n {
            expect = expect.convolve(&DiscreteDist::bernoulli(&rat(1, i as i64)).unwrap());
        }
        assert!(beta_deficit.same_law(&expect), "n={n}");
        assert_eq!(pairs.mean_alpha, int(n as i64));
    }
}

struct Frequencies {
    total: Rational,
    diag_mask: BTreeMap<u32, Rational>,
    cell_alpha: BTreeMap<(usize, usize), Rational>,
    cell_beta: BTreeMap<(usize, usize), Rational>,
}

fn frequencies(n: usize, alpha: &Rational, beta: &Rational) -> Frequencies {
    let mut f = Frequencies {
        total: Rational::zero(),
        diag_mask: BTreeMap::new(),
        cell_alpha: BTreeMap::new(),
        cell_beta: BTreeMap::new(),
    };
    for t in enumerate_ab(n).unwrap() {
        let w = ab_weight(&t, alpha, beta);
        f.total += &w;
        let mut mask = 0u32;
        for j in 1..=n {
            if column_diagonal_is_alpha(&t, j) {
                mask |= 1 << (j - 1);
            }
        }
        *f.diag_mask.entry(mask).or_insert_with(Rational::zero) += &w;
        for (i, j, s) in t.cells() {
            let map = if s == Symbol::Alpha { &mut f.cell_alpha } else { &mut f.cell_beta };
            *map.entry((i, j)).or_insert_with(Rational::zero) += &w;
        }
    }
    f
}

#[test]
fn position_formulas_match_enumeration() {
    for (alpha, beta) in weight_grid() {
        let (a, b) = (alpha.recip(), beta.recip());
        for n in 1..=5 {
            let f = frequencies(n, &alpha, &beta);
            let all_alpha = |cols: &[usize]| -> Rational {
                let need: u32 = cols.iter().map(|j| 1u32 << (j - 1)).sum();
                f.diag_mask.iter().filter(|(m, _)| *m & need == need).map(|(_, w)| w).sum::<Rational>() / &f.total
            };
            for i in 1..=n {
                assert_eq!(diag_prob(n, &a, &b, i).unwrap(), all_alpha(&[n + 1 - i]));
            }
            for mask in 1u32..(1 << n) {
                let cols: Vec<usize> = (1..=n).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                assert_eq!(joint_diag_alpha(n, &a, &b, &cols).unwrap(), all_alpha(&cols), "cols {cols:?}");
            }
            for j in 1..=n {
                for k in j + 1..=n {
                    let cov = all_alpha(&[j, k]) - all_alpha(&[j]) * all_alpha(&[k]);
                    assert_eq!(diag_cov(n, &a, &b, j, k).unwrap(), cov);
                    assert!(cov <= Rational::zero());
                }
            }
            let zero = Rational::zero();
            for i in 1..n {
                for j in 1..=n - i {
                    let c = cell_prob(n, &a, &b, i, j).unwrap();
                    assert_eq!(c.alpha, f.cell_alpha.get(&(i, j)).unwrap_or(&zero) / &f.total);
                    assert_eq!(c.beta, f.cell_beta.get(&(i, j)).unwrap_or(&zero) / &f.total);
                }
            }
            for k in 2..=n {
                assert_eq!(
                    line_filled_expectation(n, &a, &b, k).unwrap(),
                    int(k as i64 - 1) / (int(k as i64 - 1) + &a + &b)
                );
            }
        }
    }
    assert_eq!(diag_cov(2, &int(1), &int(1), 1, 2).unwrap(), rat(-1, 18));
}

#[test]
fn column_and_row_conventions_agree() {
    for (a, b) in ab_grid() {
        for n in 2..=8 {
            for j in 1..=n {
                assert_eq!(joint_diag_alpha(n, &a, &b, &[j]).unwrap(), diag_prob(n, &a, &b, n + 1 - j).unwrap());
            }
        }
    }
    assert_eq!(diag_prob(4, &int(0), &int(1), 4).unwrap(), rat(1, 4));
}

#[test]
fn subtableau_laws() {
    for (a, b) in [(int(1), int(1)), (rat(1, 2), int(2)), (int(3), rat(1, 3))] {
        for n in 1..=5 {
            for i in 1..=n {
                for j in 1..=n + 1 - i {
                    let report = subtableau_law_check(n, &a, &b, i, j).unwrap();
                    assert!(report.equal(), "n={n} ({i},{j}) a={a} b={b}: {:?}", report.first_difference);
                }
            }
        }
    }
    let report = subtableau_law_check(3, &int(1), &int(1), 1, 2).unwrap();
    assert_eq!((report.size, report.b_hat.clone()), (2, int(2)));
    assert!(subtableau_law_check(3, &int(0), &int(1), 1, 1).is_err());
}

#[test]
fn urn_recursion_matches_the_triangle() {
    for (a, b) in ab_grid() {
        let laws = urn_laws(50, &a, &b).unwrap();
        let start = if a.is_zero() && b.is_zero() { 2 } else { 0 };
        for (n, law) in laws.iter().enumerate().skip(start) {
            if n == 0 {
                assert_eq!(*law, DiscreteDist::point(0));
                continue;
            }
            assert!(law.same_law(&dist_a(n, &a, &b).unwrap()), "n={n} a={a} b={b}");
        }
    }
}

#[test]
fn limit_diagnostics() {
    let half = rat(1, 2);
    let small = clt_diagnostics(100, &half, &half).unwrap();
    let large = clt_diagnostics(1000, &half, &half).unwrap();
    assert!(large.llt_max_residual < small.llt_max_residual);
    assert!(large.ks_to_normal < small.ks_to_normal);
    assert!((large.mean - 500.0).abs() < 1e-9);
    let rows = n_alpha_growth_check(&[10, 100, 1000], &int(1), &int(1)).unwrap();
    assert!(rows.iter().all(|r| r.var_deviation.abs() <= 2.0 && r.cov.clone().abs() < int(1)));
    let rows = n_alpha_growth_check(&[10, 100], &int(0), &int(1)).unwrap();
    assert!(rows.iter().all(|r| r.mean_alpha == int(r.n as i64)));
}

#[test]
fn discrete_dist_helpers() {
    let d = DiscreteDist::new(0, vec![rat(1, 4), rat(1, 2), rat(1, 4)]).unwrap();
    assert_eq!(d.mean(), int(1));
    assert_eq!(d.variance(), rat(1, 2));
    assert!(DiscreteDist::new(0, vec![rat(1, 2)]).is_err());
    let e = d.shifted(1);
    assert_eq!(d.total_variation(&e), rat(1, 2));
    let mut obs = BTreeMap::new();
    obs.insert(0, 250u64);
    obs.insert(1, 500);
    obs.insert(2, 250);
    let chi = d.chi_square(&obs);
    assert_eq!((chi.statistic, chi.dof, chi.impossible), (0.0, 2, 0));
    assert!(Rational::one() > Rational::zero());
}
