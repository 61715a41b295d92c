use proptest::prelude::*;

use pball_core::quad::{integrate_with, tail_bound, Tolerance};
use pball_core::series::{arcsin_series, assemble_expansion, b_coefficients, revert_series, sin_series};
use pball_core::{ball_integral, PExponent};

fn pe(p: f64) -> PExponent {
    PExponent::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sin_p_is_odd(p in 1.05f64..20.0, x in -50.0f64..50.0) {
        let p = pe(p);
        prop_assert_eq!(p.sin_p(-x), -p.sin_p(x));
        prop_assert_eq!(p.cos_p(-x), p.cos_p(x));
    }

    #[test]
    fn reflection_and_period(p in 1.05f64..20.0, x in -10.0f64..10.0) {
        let pp = pe(p);
        let pi = pp.pi_p();
        let scale = (x.abs() + 2.0 * pi).max(1.0);
        prop_assert!((pp.sin_p(pi - x) - pp.sin_p(x)).abs() < 1e-13 * scale);
        prop_assert!((pp.sin_p(x + 2.0 * pi) - pp.sin_p(x)).abs() < 1e-13 * scale);
    }

    #[test]
    fn pythagorean_identity(p in 1.05f64..20.0, x in -30.0f64..30.0) {
        let p = pe(p);
        let (s, c) = p.sin_cos_p(x);
        let sum = s.abs().powf(p.p()) + c.abs().powf(p.p());
        prop_assert!((sum - 1.0).abs() < 1e-12, "{}", sum);
    }

    #[test]
    fn sinc_bounded_by_one(p in 1.05f64..20.0, x in -100.0f64..100.0) {
        let s = pe(p).sinc_p(x);
        prop_assert!(s.abs() <= 1.0);
    }

    #[test]
    fn round_trip(p in 1.01f64..50.0, y in 0.0f64..=1.0) {
        let p = pe(p);
        let x = p.arcsin_p(y).unwrap();
        prop_assert!(x >= 0.0 && x <= p.half_pi_p());
        prop_assert!((p.sin_p(x) - y).abs() < 1e-12);
    }

    #[test]
    fn arcsin_p_is_increasing(p in 1.05f64..20.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        prop_assume!(a < b);
        let p = pe(p);
        prop_assert!(p.arcsin_p(a).unwrap() <= p.arcsin_p(b).unwrap());
    }

    #[test]
    fn pi_p_decreases_in_p(a in 1.05f64..30.0, b in 1.05f64..30.0) {
        prop_assume!(a < b);
        prop_assert!(pe(a).pi_p() > pe(b).pi_p());
    }

    #[test]
    fn p_two_reduces_to_classical(x in -20.0f64..20.0) {
        let p = pe(2.0);
        prop_assert!((p.sin_p(x) - x.sin()).abs() < 1e-12);
        prop_assert!((p.cos_p(x) - x.cos()).abs() < 1e-12);
    }

    #[test]
    fn b_one_vanishes(p in 1.01f64..50.0) {
        prop_assert!(b_coefficients(&pe(p), 6).unwrap().coef(1).abs() < 1e-14);
    }

    #[test]
    fn reversion_round_trip(p in 1.1f64..10.0) {
        // reverting the sine series gives back the arcsine series
        let p = pe(p);
        let a = arcsin_series(&p, 10);
        let s = revert_series(&a, &p, 10).unwrap();
        let back = revert_series(&s, &p, 10).unwrap();
        for k in 0..=10 {
            prop_assert!((back.coef(k) - a.coef(k)).abs() < 1e-10 * a.coef(k).abs().max(1.0));
        }
    }

    #[test]
    fn series_matches_sin_p_near_zero(p in 1.2f64..10.0) {
        let pp = pe(p);
        let s = sin_series(&pp, 12).unwrap();
        let x = 0.1;
        let series = if s.is_odd() { s.eval_x(x, p) } else { x * s.eval_x(x, p) };
        prop_assert!((series - pp.sin_p(x)).abs() < 1e-14);
    }

    #[test]
    fn integrate_is_exact_on_polynomials(c in prop::collection::vec(-3.0f64..3.0, 1..=8), a in -2.0f64..0.0, b in 0.5f64..3.0) {
        // degree 7 in x stays within the rule's exactness after the cubic
        // endpoint substitution
        let f = |x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
        let anti = |x: f64| c.iter().enumerate().rev().fold(0.0, |acc, (i, k)| acc * x + k / (i + 1) as f64) * x;
        let want = anti(b) - anti(a);
        let scale = c.iter().map(|k| k.abs()).sum::<f64>() * 3f64.powi(c.len() as i32) * (b - a);
        let tol = Tolerance { abs: 1e-14 * scale, rel: 1e-14 };
        let got = integrate_with(f, &[a, b], tol).unwrap().value;
        prop_assert!((got - want).abs() <= 1e-14 * scale, "{} vs {}", got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tails_obey_the_bound(p in 1.1f64..10.0, q in 2.0f64..50.0, k in 1usize..6) {
        let pp = pe(p);
        let alpha = k as f64 * pp.half_pi_p();
        let bound = tail_bound(&pp, alpha, q).unwrap().bound;
        // the piece up to 8 periods is already a lower bound for the tail;
        // tails can be tiny, so ask for relative accuracy
        let half = pp.half_pi_p();
        let points: Vec<f64> = (k..=16).map(|i| i as f64 * half).collect();
        let r = integrate_with(|x: f64| pp.sinc_p(x).abs().powf(q), &points, Tolerance::relative(1e-10)).unwrap();
        prop_assert!(r.value - r.err_est <= bound, "{} vs {}", r.value, bound);
    }

    #[test]
    fn expansion_order_gain(p in 1.5f64..4.0) {
        // R_1(2q)/R_1(q) ≈ 1/4 once the first-order term is removed
        let pp = pe(p);
        let e = assemble_expansion(&pp, 12).unwrap();
        let q = 400.0;
        let r = |q: f64| ball_integral(&pp, q, 1e-14).unwrap().value - e.evaluate(q, 1).unwrap();
        let ratio = r(2.0 * q) / r(q);
        prop_assert!((ratio - 0.25).abs() < 0.02, "{}", ratio);
    }
}
