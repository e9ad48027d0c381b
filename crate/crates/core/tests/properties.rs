use num_traits::{One, Zero};
use proptest::prelude::*;
use staircase_core::asep::fill_uq;
use staircase_core::distributions::{dist_a, moments_a};
use staircase_core::rational::rat;
use staircase_core::sampler::{sample_ab, sample_four, Params};
use staircase_core::{Rational, Symbol, Tableau};

fn ratio() -> impl Strategy<Value = Rational> {
    (0i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn samples_are_valid(n in 0usize..30, a in ratio(), b in ratio(), seed in any::<u64>()) {
        let t = sample_ab(n, &Params::finite(a, b).unwrap(), seed).unwrap();
        prop_assert_eq!(t.size(), n);
        prop_assert!(t.is_valid());
        prop_assert!(t.is_alpha_beta());
        prop_assert!((1..=n).all(|i| t.diagonal(i).is_some()));
        let c = t.counts();
        prop_assert_eq!(c.diag_alpha + c.diag_beta, n);
        prop_assert!(c.alpha_rows <= c.n_alpha);
    }

    #[test]
    fn derived_tableaux_stay_valid(n in 1usize..14, w in prop::array::uniform4(positive()), seed in any::<u64>()) {
        let t = sample_four(n, [&w[0], &w[1], &w[2], &w[3]], seed).unwrap();
        prop_assert!(t.is_valid());
        let d = t.dagger();
        prop_assert!(d.is_valid());
        prop_assert_eq!(d.dagger(), t.clone());
        prop_assert!(t.reduced().is_alpha_beta() && t.reduced().is_valid());
        prop_assert_eq!(Tableau::parse_text(&t.render_text()).unwrap(), t.clone());
        for i in 1..=n {
            for j in 1..=n + 1 - i {
                let s = t.subtableau(i, j).unwrap();
                prop_assert_eq!(s.size(), n + 2 - i - j);
                prop_assert!(s.is_valid());
            }
        }
    }

    #[test]
    fn every_empty_box_gets_a_label(n in 1usize..14, w in prop::array::uniform4(positive()), seed in any::<u64>()) {
        let t = sample_four(n, [&w[0], &w[1], &w[2], &w[3]], seed).unwrap();
        let f = fill_uq(&t).unwrap();
        let e = f.exponents();
        prop_assert_eq!(e.iter().sum::<usize>(), n * (n + 1) / 2);
        for r in 1..=n {
            for c in 1..=n + 1 - r {
                prop_assert_eq!(t.get(r, c).is_none(), f.label(r, c).is_some());
            }
        }
        let mirrored = fill_uq(&t.dagger()).unwrap().exponents();
        prop_assert_eq!(mirrored[..4].to_vec(), vec![e[1], e[0], e[3], e[2]]);
    }

    #[test]
    fn law_of_a_is_a_log_concave_distribution(n in 2usize..40, a in ratio(), b in ratio()) {
        let d = dist_a(n, &a, &b).unwrap();
        prop_assert_eq!(d.probs().iter().sum::<Rational>(), Rational::one());
        prop_assert!(d.probs().iter().all(|p| *p >= Rational::zero()));
        prop_assert!(d.is_log_concave());
        prop_assert_eq!(moments_a(n, &a, &b).unwrap(), (d.mean(), d.variance()));
    }

    #[test]
    fn exchanging_symbols_reverses_the_law(n in 2usize..30, a in ratio(), b in ratio()) {
        let d = dist_a(n, &a, &b).unwrap();
        let e = dist_a(n, &b, &a).unwrap();
        let reversed: Vec<Rational> = e.probs().iter().rev().cloned().collect();
        prop_assert_eq!(d.probs(), &reversed[..]);
    }
}

#[test]
fn single_box_tableaux() {
    for s in Symbol::ALL {
        assert!(Tableau::uniform_diagonal(1, s).is_valid());
    }
    assert!(!Tableau::empty(1).is_valid());
}
