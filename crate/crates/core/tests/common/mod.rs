#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use staircase_core::enumerate::{ab_weight, enumerate_ab};
use staircase_core::rational::{int, rat};
use staircase_core::{Rational, Symbol, Tableau};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// `(a, b)` pairs used throughout, including zeros.
pub fn ab_grid() -> Vec<(Rational, Rational)> {
    vec![(int(0), int(0)), (int(0), int(1)), (int(1), int(0)), (int(1), int(1)), (rat(1, 2), rat(1, 2)), (int(2), rat(3, 7))]
}

/// `(α, β)` pairs with both weights finite and positive.
pub fn weight_grid() -> Vec<(Rational, Rational)> {
    vec![(int(1), int(1)), (int(2), int(1)), (int(2), int(2)), (rat(1, 3), int(5)), (rat(3, 2), rat(2, 3))]
}

/// Every filling of the size-`n` staircase with `symbols` (or empty) that
/// passes validation.
pub fn naive_tableaux(n: usize, symbols: &[Symbol]) -> Vec<Tableau> {
    let boxes: Vec<(usize, usize)> =
        (1..=n).flat_map(|r| (1..=n + 1 - r).map(move |c| (r, c))).collect();
    let choices = symbols.len() + 1;
    let total = choices.pow(boxes.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut t = Tableau::empty(n);
        for &(r, c) in &boxes {
            let pick = code % choices;
            code /= choices;
            if pick > 0 {
                t.set(r, c, Some(symbols[pick - 1]));
            }
        }
        if t.is_valid() {
            out.push(t);
        }
    }
    out
}

/// Exact law of the αβ-tableau of size `n` at weights `(α, β)`.
pub fn exact_law(n: usize, alpha: &Rational, beta: &Rational) -> BTreeMap<Tableau, Rational> {
    let mut law = BTreeMap::new();
    let mut total = Rational::zero();
    for t in enumerate_ab(n).unwrap() {
        let w = ab_weight(&t, alpha, beta);
        total += &w;
        law.insert(t, w);
    }
    for p in law.values_mut() {
        *p /= &total;
    }
    law
}

/// Upper-tail probability of the chi-square distribution.
pub fn chi_square_p_value(statistic: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    ChiSquared::new(dof as f64).unwrap().sf(statistic)
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
