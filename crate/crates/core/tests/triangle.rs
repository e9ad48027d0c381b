mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use staircase_core::eulerian::*;
use staircase_core::poly::{BivarPoly, Poly};
use staircase_core::rational::{int, pow, rat, to_f64};
use staircase_core::Rational;

use common::ab_grid;

#[test]
fn small_rows_are_exact_polynomials() {
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
    let symbolic = symbolic_triangle(3);
    assert_eq!(symbolic, expect);
    assert_eq!(v_symbolic(2, 1).to_string(), "a + b + 2ab");
}

#[test]
fn symbolic_entries_have_exact_degree_and_match_numeric() {
    let rows = symbolic_triangle(9);
    let (a, b) = (rat(2, 5), rat(7, 3));
    let numeric = v_triangle(9, &a, &b).unwrap();
    for (n, row) in rows.iter().enumerate() {
        for (k, p) in row.iter().enumerate() {
            assert_eq!(p.total_degree(), Some(n), "v({n},{k})");
            assert!(p.all_coefficients_nonnegative());
            assert_eq!(p.eval(&a, &b), numeric.get(n, k as i64));
        }
    }
}

#[test]
fn row_sums_and_boundaries() {
    for (a, b) in ab_grid() {
        let s = &a + &b;
        let mut rise = Rational::one();
        for row in RowStream::new(&a, &b).unwrap().take(201) {
            let n = row.n;
            let values = row.to_rationals();
            let total: Rational = values.iter().sum();
            assert_eq!(total, rise, "row sum n={n} a={a} b={b}");
            assert_eq!(values[0], pow(&a, n));
            assert_eq!(values[n], pow(&b, n));
            rise *= &s + int(n as i64);
        }
    }
}

#[test]
fn reflection_symmetry() {
    for (a, b) in ab_grid() {
        let t = v_triangle(100, &a, &b).unwrap();
        let r = v_triangle(100, &b, &a).unwrap();
        for n in 0..=100 {
            for k in 0..=n {
                assert_eq!(t.get(n, k as i64), r.get(n, (n - k) as i64));
            }
        }
        let x = rat(3, 5);
        for n in [1, 7, 20] {
            let lhs = t.poly(n).eval(&x);
            let rhs = pow(&x, n) * r.poly(n).eval(&x.recip());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn degenerate_parameter_reductions() {
    for a in [int(1), rat(2, 3), int(4)] {
        let t0 = v_triangle(50, &a, &int(0)).unwrap();
        let t1 = v_triangle(49, &a, &int(1)).unwrap();
        let s0 = v_triangle(50, &int(0), &a).unwrap();
        let s1 = v_triangle(49, &int(1), &a).unwrap();
        for n in 1..=50 {
            for k in 0..=n as i64 {
                assert_eq!(t0.get(n, k), &a * t1.get(n - 1, k));
                assert_eq!(s0.get(n, k), &a * s1.get(n - 1, k - 1));
            }
        }
    }
}

#[test]
fn rows_are_log_concave() {
    for (a, b) in ab_grid() {
        for row in RowStream::new(&a, &b).unwrap().take(201) {
            let w = &row.numer;
            let first = w.iter().position(|x| !x.is_zero());
            let last = w.iter().rposition(|x| !x.is_zero());
            if let (Some(f), Some(l)) = (first, last) {
                assert!(w[f..=l].iter().all(|x| x > &BigInt::zero()));
            }
            for k in 1..row.n {
                assert!(&w[k] * &w[k] >= &w[k - 1] * &w[k + 1], "n={} k={k}", row.n);
            }
        }
    }
}

#[test]
fn polynomial_recursion() {
    let xs = [rat(3, 7), rat(-5, 2), int(2), rat(11, 13)];
    for (a, b) in ab_grid() {
        let t = v_triangle(100, &a, &b).unwrap();
        for n in 1..=100 {
            let prev = t.poly(n - 1);
            let cur = t.poly(n);
            for x in &xs {
                let one = Rational::one();
                let lhs = cur.eval(x);
                let rhs = ((int(n as i64 - 1) + &b) * x + &a) * prev.eval(x)
                    + x * (&one - x) * prev.derivative().eval(x);
                assert_eq!(lhs, rhs, "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn derivative_closed_forms() {
    for (a, b) in ab_grid() {
        let t = v_triangle(60, &a, &b).unwrap();
        for n in 0..=60 {
            let p = t.poly(n);
            let one = Rational::one();
            let (p0, p1, p2) = p_at_one(n, &a, &b).unwrap();
            assert_eq!(p.eval(&one), p0);
            assert_eq!(p.derivative().eval(&one), p1);
            assert_eq!(p.derivative().derivative().eval(&one), p2);
        }
    }
    let (p0, p1, p2) = p_at_one(3, &rat(1, 2), &rat(1, 2)).unwrap();
    let row = v_triangle(3, &rat(1, 2), &rat(1, 2)).unwrap().row(3);
    let k = |i: usize| int(i as i64);
    assert_eq!(p0, row.iter().sum::<Rational>());
    assert_eq!(p1, (0..4).map(|i| k(i) * &row[i]).sum::<Rational>());
    assert_eq!(p2, (0..4).map(|i| k(i) * (k(i) - int(1)) * &row[i]).sum::<Rational>());
}

#[test]
fn c_table_expansion() {
    for b in [int(0), int(1), rat(1, 2), rat(7, 3)] {
        let c = c_table(50, &b).unwrap();
        for n in 0..=50 {
            assert_eq!(c.get(n, n as i64), int(1));
            if n >= 1 {
                let nn = int(n as i64);
                assert_eq!(c.get(n, n as i64 - 1), &nn * (&nn + int(2) * &b - int(1)) / int(2));
            }
        }
        for a in [int(0), rat(3, 4), int(2)] {
            let t = v_triangle(12, &a, &b).unwrap();
            let s = &a + &b;
            for n in 0..=12 {
                let mut expansion = Poly::zero();
                for l in 0..=n {
                    let mut term = Poly::constant(c.get(n, l as i64) * rising_factorial(&s, l));
                    for _ in 0..n - l {
                        term = &term * &Poly::linear(int(-1), int(1));
                    }
                    expansion = &expansion + &term;
                }
                assert_eq!(expansion, t.poly(n), "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn eulerian_specializations() {
    let t10 = v_triangle(10, &int(1), &int(0)).unwrap();
    let t01 = v_triangle(10, &int(0), &int(1)).unwrap();
    let t11 = v_triangle(10, &int(1), &int(1)).unwrap();
    let big = |x: BigUint| Rational::from_integer(BigInt::from(x));
    for n in 0..=10usize {
        let mut total = BigUint::zero();
        for k in 0..=n as i64 {
            assert_eq!(t10.get(n, k), big(eulerian(n, k)));
            if n >= 1 {
                assert_eq!(t01.get(n, k), big(eulerian(n, k - 1)));
            }
            assert_eq!(t11.get(n, k), big(eulerian(n + 1, k)));
            total += eulerian(n, k);
        }
        let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
        assert_eq!(total, fact);
    }
    assert_eq!(eulerian(3, 1), BigUint::from(4u32));
    assert_eq!(v_symbolic(3, 1).eval(&int(1), &int(0)), int(4));
    let half = rat(1, 2);
    let tb = v_triangle(6, &half, &half).unwrap();
    let type_b: Vec<Rational> = (0..=3).map(|k| tb.get(3, k) * int(8)).collect();
    assert_eq!(type_b, [int(1), int(23), int(23), int(1)]);
}

#[test]
fn rising_factorial_values() {
    for n in 0..10 {
        let fact: i64 = (1..=n as i64 + 1).product();
        assert_eq!(rising_factorial(&int(2), n), int(fact));
    }
    assert_eq!(rising_factorial(&rat(3, 2), 2) * int(4), int(15));
    assert_eq!(rising_factorial(&rat(5, 9), 1), rat(5, 9));
    assert_eq!(rising_factorial(&rat(5, 9), 0), int(1));
}

#[test]
fn tilde_substitutes() {
    for n in 3..=30 {
        let row = tilde_row(n).unwrap();
        let prev = tilde_row(n - 1).unwrap();
        for k in 0..=n {
            let stay = if k < n { int(k as i64) * &prev[k] } else { int(0) };
            let step = if k >= 1 { int((n - k) as i64) * &prev[k - 1] } else { int(0) };
            assert_eq!(row[k], stay + step, "n={n} k={k}");
        }
    }
    let x = rat(2, 3);
    for n in 2..=12 {
        let one = int(1);
        let p = v_triangle(n, &one, &one).unwrap().poly(n - 2);
        assert_eq!(tilde_p_eval(n, &x).unwrap(), &x * p.eval(&x));
    }
}

#[test]
fn tilde_is_the_limit_at_zero() {
    for n in 2..=10 {
        let target = tilde_row(n).unwrap();
        let mut last = f64::INFINITY;
        for m in 1..=20 {
            let a = Rational::new(BigInt::one(), BigInt::one() << m);
            let row = v_triangle(n, &a, &a).unwrap().row(n);
            let err: f64 = row
                .iter()
                .zip(&target)
                .map(|(v, t)| to_f64(&(v / (int(2) * &a) - t)).abs())
                .fold(0.0, f64::max);
            assert!(err < last, "n={n} m={m}: {err} !< {last}");
            last = err;
        }
        let scale = target.iter().map(to_f64).fold(0.0, f64::max);
        assert!(last / scale < 1e-4, "n={n}: relative error {}", last / scale);
    }
}
