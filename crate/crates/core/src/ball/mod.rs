//! `I_p(q) = q^(1/p) ∫_0^∞ |sinc_p x|^q dx`, its log-weighted moments
//! `φ_p(n, q)`, and the inequality and identity checks behind them.

mod fold;
mod verify;

pub use verify::{
    run_suite, verify_all, verify_bhayo, verify_beta_identities, verify_gamma_ratio,
    verify_jordan, verify_monotonic, verify_pythagorean, verify_symmetry, verify_tail,
    InequalityReport, Suite, Violation,
};

use crate::error::{domain, Error, Result};
use crate::ptrig::PExponent;
use crate::quad::{integrate_to_infinity_with, integrate_with, log_tail_bound, QuadResult, Tolerance};
use crate::special::gamma;

/// Truncation points are tried at `π_p·2^(k-1)` up to this `k`; past it the
/// tail is folded onto one period instead.
pub const MAX_TRUNCATION_DOUBLINGS: u32 = 10;

/// Periods integrated directly before a folded tail takes over.
const FOLD_START: usize = 8;

/// Above this `q` the integrand is formed as `exp(q ln|sinc_p|)`.
const LOG_FORM_Q: f64 = 50.0;

#[derive(Debug, Clone, Copy)]
pub struct BallIntegral {
    pub p: PExponent,
    pub q: f64,
    /// `q^(1/p) · raw`
    pub value: f64,
    /// `∫_0^∞ |sinc_p|^q`
    pub raw: f64,
    pub quad: QuadResult,
}

/// `lim_{q→∞} I_p(q) = Γ(1/p) (p(p+1))^(1/p) / p`.
pub fn limit_value(p: &PExponent) -> f64 {
    let p = p.p();
    gamma(1.0 / p) * (p * (p + 1.0)).powf(1.0 / p) / p
}

/// `I_p(q)` with total absolute error at most `tol` on the raw integral.
pub fn ball_integral(p: &PExponent, q: f64, tol: f64) -> Result<BallIntegral> {
    let quad = log_moment(p, 0, q, tol)?;
    Ok(BallIntegral {
        p: *p,
        q,
        value: q.powf(1.0 / p.p()) * quad.value,
        raw: quad.value,
        quad,
    })
}

/// `φ_p(n, q) = ∫_0^∞ (ln|sinc_p x|)^n |sinc_p x|^q dx` (unscaled).
pub fn phi(p: &PExponent, n: u32, q: f64, tol: f64) -> Result<f64> {
    Ok(log_moment(p, n, q, tol)?.value)
}

/// [`phi`] with its error bookkeeping.
pub fn phi_quad(p: &PExponent, n: u32, q: f64, tol: f64) -> Result<QuadResult> {
    log_moment(p, n, q, tol)
}

/// `∫_{-∞}^{∞} |sinc_p x|^q dx`, twice the half-line integral.
pub fn full_line_integral(p: &PExponent, q: f64, tol: f64) -> Result<f64> {
    Ok(2.0 * log_moment(p, 0, q, 0.5 * tol)?.value)
}

fn log_moment(p: &PExponent, n: u32, q: f64, tol: f64) -> Result<QuadResult> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(domain(format!("q must be a finite number above 1, got {q}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let f = |x: f64| integrand(p, n, q, x);
    let start = (n as f64 / q).exp().max(1.0);
    let tail = |alpha: f64| {
        if alpha < start {
            f64::INFINITY
        } else {
            log_tail_bound(alpha, q, n).unwrap_or(f64::INFINITY)
        }
    };
    // panels end at every multiple of π_p/2, where sin_p is not smooth
    let half = p.half_pi_p();
    match integrate_to_infinity_with(
        f,
        0.0,
        half,
        Tolerance::absolute(tol),
        tail,
        MAX_TRUNCATION_DOUBLINGS,
    ) {
        Err(Error::TailNotReached { .. }) => {}
        other => return other,
    }

    let points: Vec<f64> = (0..=2 * FOLD_START).map(|k| k as f64 * half).collect();
    let head = integrate_with(f, &points, Tolerance::absolute(0.5 * tol))?;
    let tail = fold::folded_tail(p, n, q, FOLD_START, 0.5 * tol)?;
    Ok(head.combine(tail))
}

/// `(ln|sinc_p x|)^n |sinc_p x|^q`, zero at the roots.
fn integrand(p: &PExponent, n: u32, q: f64, x: f64) -> f64 {
    if n == 0 && q <= LOG_FORM_Q {
        return p.sinc_p(x).abs().powf(q);
    }
    let l = p.ln_abs_sinc_p(x);
    let w = (q * l).exp();
    if w == 0.0 {
        return 0.0;
    }
    l.powi(n as i32) * w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiLimitCandidate {
    /// `(-1)^n Γ(1/p) (p(p+1))^(1/p) Γ(n + 1/p) / p`
    Stated,
    /// `(-1)^n (p(p+1))^(1/p) Γ(n + 1/p) / p`, the `n`-th derivative of the
    /// leading asymptote of `φ_p(q)`.
    Derivative,
}

#[derive(Debug, Clone)]
pub struct PhiLimitRow {
    pub q: f64,
    pub phi: f64,
    /// `q^(n + 1/p) φ_p(n, q)`
    pub scaled: f64,
}

#[derive(Debug, Clone)]
pub struct PhiLimitReport {
    pub p: f64,
    pub n: u32,
    pub rows: Vec<PhiLimitRow>,
    pub stated: f64,
    pub derivative: f64,
    /// Candidate nearer to the scaled value at the largest `q`.
    pub closer: PhiLimitCandidate,
}

/// Tracks `q^(n + 1/p) φ_p(n, q)` along `q_list` against both candidate
/// limits. Each `φ` is computed to relative accuracy `rel_tol` of its
/// expected size.
pub fn phi_limit_check(
    p: &PExponent,
    n: u32,
    q_list: &[f64],
    rel_tol: f64,
) -> Result<PhiLimitReport> {
    if q_list.is_empty() || q_list.iter().any(|q| !(*q > 1.0)) {
        return Err(domain("q list must be nonempty with every q above 1"));
    }
    if q_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("q list must be increasing"));
    }
    let pv = p.p();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let derivative = sign * (pv * (pv + 1.0)).powf(1.0 / pv) * gamma(n as f64 + 1.0 / pv) / pv;
    let stated = derivative * gamma(1.0 / pv);

    let exponent = n as f64 + 1.0 / pv;
    let mut rows = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let size = derivative.abs() * q.powf(-exponent);
        let v = phi(p, n, q, rel_tol * size)?;
        rows.push(PhiLimitRow {
            q,
            phi: v,
            scaled: q.powf(exponent) * v,
        });
    }
    let last = rows.last().expect("nonempty").scaled;
    let closer = if (last - stated).abs() < (last - derivative).abs() {
        PhiLimitCandidate::Stated
    } else {
        PhiLimitCandidate::Derivative
    };
    Ok(PhiLimitReport {
        p: pv,
        n,
        rows,
        stated,
        derivative,
        closer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pe(p: f64) -> PExponent {
        PExponent::new(p).unwrap()
    }

    #[test]
    fn classical_sinc_squared() {
        let b = ball_integral(&pe(2.0), 2.0, 1e-10).unwrap();
        assert!((b.raw - PI / 2.0).abs() < 1e-9, "{b:?}");
        assert!((b.value - PI / 2f64.sqrt()).abs() < 1e-9);
        assert!(b.quad.tail_remainder < 1e-10);
    }

    #[test]
    fn sinc_fourth_power() {
        // ∫_0^∞ sinc^4 = π/3
        let b = ball_integral(&pe(2.0), 4.0, 1e-11).unwrap();
        assert!((b.raw - PI / 3.0).abs() < 1e-10, "{}", b.raw);
    }

    #[test]
    fn folded_route_agrees_with_truncation() {
        for &(p, n) in &[(2.0, 0), (3.0, 0), (2.0, 1), (1.5, 2)] {
            let p = pe(p);
            let q = 6.0;
            let pi = p.pi_p();
            let f = |x: f64| integrand(&p, n, q, x);
            let truncated = integrate_to_infinity_with(
                f,
                0.0,
                pi,
                Tolerance::absolute(1e-12),
                |a| log_tail_bound(a, q, n).unwrap_or(f64::INFINITY),
                MAX_TRUNCATION_DOUBLINGS,
            )
            .unwrap();
            let points: Vec<f64> = (0..=FOLD_START).map(|k| k as f64 * pi).collect();
            let head = integrate_with(f, &points, Tolerance::absolute(1e-13)).unwrap();
            let tail = fold::folded_tail(&p, n, q, FOLD_START, 1e-13).unwrap();
            let v = head.value + tail.value;
            assert!((v - truncated.value).abs() < 1e-11, "n = {n}: {v} vs {}", truncated.value);
        }
    }

    #[test]
    fn phi_signs_and_first_moment() {
        let p = pe(2.0);
        assert!(phi(&p, 1, 2.0, 1e-9).unwrap() < 0.0);
        assert!(phi(&p, 2, 5.0, 1e-9).unwrap() > 0.0);
        let a = phi(&p, 0, 2.0, 1e-10).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_q() {
        let p = pe(2.0);
        assert!(ball_integral(&p, 1.0, 1e-9).is_err());
        assert!(ball_integral(&p, f64::NAN, 1e-9).is_err());
        assert!(ball_integral(&p, 2.0, 0.0).is_err());
        assert!(phi_limit_check(&p, 1, &[10.0, 5.0], 1e-9).is_err());
    }

    #[test]
    fn limit_values() {
        assert!((limit_value(&pe(2.0)) - (1.5 * PI).sqrt()).abs() < 1e-15);
        assert!((limit_value(&pe(1.5)) - 2.178977493367065).abs() < 1e-12);
    }
}
