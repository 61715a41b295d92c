//! Values checked against independent closed forms or brute-force sums.

use std::f64::consts::PI;

use pball_core::ball::{full_line_integral, phi};
use pball_core::quad::{integrate, tail_bound};
use pball_core::series::{assemble_expansion, b_coefficients, evaluate_expansion, sin_series};
use pball_core::special::gamma;
use pball_core::{ball_integral, limit_value, PExponent};

fn pe(p: f64) -> PExponent {
    PExponent::new(p).unwrap()
}

#[test]
fn pi_p_closed_form() {
    assert_eq!(pe(2.0).pi_p(), PI);
    for &p in &[1.5, 3.0, 4.0, 7.5] {
        let want = 2.0 * PI / (p * (PI / p).sin());
        assert!((pe(p).pi_p() - want).abs() < 1e-14 * want);
    }
    // π_4 = √2 π / 2
    assert!((pe(4.0).pi_p() - PI / 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn arcsin_p_against_direct_quadrature() {
    // F_p(y) = ∫_0^y (1 - t^p)^(-1/p) dt is smooth for y < 1
    for &(p, y) in &[(3.0, 0.5), (1.5, 0.9), (10.0, 0.99), (1.2, 0.3)] {
        let f = integrate(|t: f64| (1.0 - t.powf(p)).powf(-1.0 / p), 0.0, y, 1e-15).unwrap();
        let a = pe(p).arcsin_p(y).unwrap();
        assert!((a - f.value).abs() < 1e-13, "p = {p}, y = {y}: {a} vs {}", f.value);
    }
}

#[test]
fn sin_p_derivative_is_cos_p() {
    for &p in &[1.3, 2.5, 6.0] {
        let p = pe(p);
        for &x in &[0.2, 0.9, 1.4, 2.6, -3.3] {
            let h = 1e-5;
            let d = (p.sin_p(x + h) - p.sin_p(x - h)) / (2.0 * h);
            assert!((d - p.cos_p(x)).abs() < 1e-6, "x = {x}");
        }
    }
}

#[test]
fn tan_p_derivative_identity() {
    // (tan_p)' = 1 + tan_p^p on the first quadrant
    let p = pe(3.0);
    for &x in &[0.1, 0.5, 1.0] {
        let h = 1e-5;
        let d = (p.tan_p(x + h).unwrap() - p.tan_p(x - h).unwrap()) / (2.0 * h);
        let t = p.tan_p(x).unwrap();
        assert!((d - (1.0 + t.powf(3.0))).abs() < 1e-6 * d);
    }
}

#[test]
fn classical_sinc_integrals() {
    let p = pe(2.0);
    // ∫_0^∞ sinc² = π/2, sinc⁴ = π/3, |sinc|^6 = 11π/40
    for &(q, want) in &[(2.0, PI / 2.0), (4.0, PI / 3.0), (6.0, 11.0 * PI / 40.0)] {
        let v = ball_integral(&p, q, 1e-12).unwrap().raw;
        assert!((v - want).abs() < 1e-11, "q = {q}: {v} vs {want}");
    }
}

#[test]
fn ball_bound_at_q_two_is_attained() {
    // √q ∫_ℝ |sinc|^q ≤ √2 π, with equality at q = 2
    let p = pe(2.0);
    let v = 2f64.sqrt() * full_line_integral(&p, 2.0, 1e-12).unwrap();
    assert!((v - 2f64.sqrt() * PI).abs() < 1e-10);
    for &q in &[3.0f64, 10.0, 100.0] {
        let v = q.sqrt() * full_line_integral(&p, q, 1e-12).unwrap();
        assert!(v < 2f64.sqrt() * PI, "q = {q}: {v}");
    }
}

#[test]
fn limit_values_from_gamma() {
    assert!((limit_value(&pe(2.0)) - 2.1708037636748028).abs() < 1e-15);
    assert!((limit_value(&pe(1.5)) - 2.178977493367065).abs() < 1e-13);
    let want = gamma(1.0 / 3.0) * 12f64.powf(1.0 / 3.0) / 3.0;
    assert!((limit_value(&pe(3.0)) - want).abs() < 1e-14);
}

#[test]
fn p3_at_q_thousand_near_limit() {
    let p = pe(3.0);
    let v = ball_integral(&p, 1e3, 1e-12).unwrap().value;
    assert!((v - limit_value(&p)).abs() < 1e-2);
}

#[test]
fn phi_zero_matches_ball_integral() {
    let p = pe(2.5);
    let q = 7.0;
    let a = phi(&p, 0, q, 1e-12).unwrap() * q.powf(1.0 / 2.5);
    let b = ball_integral(&p, q, 1e-12).unwrap().value;
    assert!((a - b).abs() < 1e-11);
}

#[test]
fn sine_series_golden_values() {
    let s = sin_series(&pe(2.0), 6).unwrap();
    let mut fact = 1.0;
    for k in 0..=6 {
        if k > 0 {
            fact *= ((2 * k) * (2 * k + 1)) as f64;
        }
        let want = if k % 2 == 0 { 1.0 } else { -1.0 } / fact;
        assert!((s.coef(k) - want).abs() < 1e-15, "k = {k}");
    }
}

#[test]
fn b_two_closed_form() {
    for &p in &[1.5, 2.0, 4.0] {
        let b = b_coefficients(&pe(p), 6).unwrap();
        assert_eq!(b.coef(0), 1.0);
        let want = p * (-p * p + p + 1.0) / (2.0 * (2.0 * p + 1.0));
        assert!((b.coef(2) - want).abs() < 1e-13, "p = {p}");
    }
}

#[test]
fn expansion_golden_values() {
    let e = assemble_expansion(&pe(2.0), 12).unwrap();
    assert!((e.regrouped()[0] - 2.1708037636748028).abs() < 1e-15);
    assert!((e.regrouped()[1] / e.regrouped()[0] + 0.15).abs() < 1e-14);
    let v = evaluate_expansion(&e, 100.0, 1).unwrap();
    assert!((v - (1.5 * PI).sqrt() * (1.0 - 3.0 / 2000.0)).abs() < 1e-14);
}

#[test]
fn expansion_beats_leading_term() {
    let p = pe(2.0);
    let e = assemble_expansion(&p, 12).unwrap();
    let q = 200.0;
    let exact = ball_integral(&p, q, 1e-13).unwrap().value;
    let r0 = (e.evaluate(q, 0).unwrap() - exact).abs();
    let r1 = (e.evaluate(q, 1).unwrap() - exact).abs();
    let r3 = (e.evaluate(q, 3).unwrap() - exact).abs();
    assert!(r1 < r0 && r3 < r1, "{r0:e} {r1:e} {r3:e}");
}

#[test]
fn tail_bound_branches() {
    let p = pe(2.0);
    let q = 5.0;
    let t = tail_bound(&p, 1.0, q).unwrap();
    // α = 1 is covered by the large-α branch: 1/(q - 1)
    assert!((t.bound - 0.25).abs() < 1e-15);
    let small = tail_bound(&p, 0.999_999, q).unwrap().bound;
    assert!(small >= 0.25);
}
