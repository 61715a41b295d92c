//! `∫_{Kπ_p}^∞ (ln|sinc_p x|)^n |sinc_p x|^q dx` without truncation.
//!
//! `|sin_p|` has period `π_p`, so writing `x = kπ_p + t` folds the tail onto
//! one period:
//!
//! ```text
//! ∫_0^{π_p} |sin_p t|^q Σ_{k≥K} G(kπ_p + t) dt,   G(x) = (L - ln x)^n x^(-q),
//! ```
//!
//! with `L = ln|sin_p t|`. The inner sum takes direct terms up to `N` and
//! Euler–Maclaurin from there on, using the closed form of `∫_X^∞ G` and odd
//! derivatives of `G` from Taylor jets. This is what makes `q` close to 1
//! affordable: truncation would need `α^(1-q)` below the tolerance.

use crate::error::Result;
use crate::ptrig::PExponent;
use crate::quad::{integrate_with, QuadResult, Tolerance};

const JET: usize = 10;
// B_2, B_4, ..., B_10
const BERNOULLI: [f64; 5] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];

pub(crate) fn folded_tail(
    p: &PExponent,
    n: u32,
    q: f64,
    start_period: usize,
    tol: f64,
) -> Result<QuadResult> {
    let h = p.pi_p();
    let direct = 12usize.max((6.0 * (q + n as f64)).ceil() as usize);
    let switch = start_period + direct;
    let em = EulerMaclaurin { n, q, h };

    let g = |t: f64| {
        let s = p.sin_p(t);
        if s <= 0.0 {
            return 0.0;
        }
        let l = s.ln();
        let weight = (q * l).exp();
        if weight == 0.0 {
            return 0.0;
        }
        let mut sum = 0.0;
        for k in start_period..switch {
            let x = k as f64 * h + t;
            sum += (l - x.ln()).powi(n as i32) * x.powf(-q);
        }
        sum += em.tail(switch as f64 * h + t, l);
        weight * sum
    };

    let mut r = integrate_with(g, &[0.0, 0.5 * h, h], Tolerance::absolute(tol))?;
    // size of the last Euler–Maclaurin correction at the peak of |sin_p|
    r.tail_remainder = h * em.last_correction(switch as f64 * h + 0.5 * h, 0.0).abs();
    Ok(r)
}

struct EulerMaclaurin {
    n: u32,
    q: f64,
    h: f64,
}

impl EulerMaclaurin {
    /// `Σ_{k≥0} G(X + kh)`.
    fn tail(&self, x: f64, l: f64) -> f64 {
        let jet = self.jet(x, l);
        let scale = x.powf(-self.q);
        let mut sum = self.integral(x, l) / self.h + 0.5 * scale * jet[0];
        let r = self.h / x;
        let mut rp = r;
        for (j, b) in BERNOULLI.iter().enumerate() {
            let m = 2 * j + 1;
            sum -= b / (2 * j + 2) as f64 * jet[m] * scale * rp;
            rp *= r * r;
        }
        sum
    }

    fn last_correction(&self, x: f64, l: f64) -> f64 {
        let jet = self.jet(x, l);
        BERNOULLI[4] / 10.0 * jet[9] * x.powf(-self.q) * (self.h / x).powi(9)
    }

    /// `∫_X^∞ G = (-1)^n X^(1-q) n!/(q-1)^(n+1) Σ_{i≤n} z^i/i!`,
    /// `z = (q-1)(ln X - L)`.
    fn integral(&self, x: f64, l: f64) -> f64 {
        let qm = self.q - 1.0;
        let z = qm * (x.ln() - l);
        let (mut term, mut sum) = (1.0, 1.0);
        for i in 1..=self.n {
            term *= z / i as f64;
            sum += term;
        }
        let fact: f64 = (1..=self.n).map(|i| i as f64).product();
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        sign * x.powf(1.0 - self.q) * fact / qm.powi(self.n as i32 + 1) * sum
    }

    /// Taylor coefficients of `G(X(1 + η)) X^q` in `η`.
    fn jet(&self, x: f64, l: f64) -> [f64; JET] {
        // L - ln(X(1 + η)) = c0 - ln(1 + η)
        let mut u = [0.0; JET];
        u[0] = l - x.ln();
        for (m, um) in u.iter_mut().enumerate().skip(1) {
            *um = if m % 2 == 0 { 1.0 } else { -1.0 } / m as f64;
        }
        let mut prod = [0.0; JET];
        prod[0] = 1.0;
        for _ in 0..self.n {
            prod = mul(&prod, &u);
        }
        // (1 + η)^(-q)
        let mut v = [0.0; JET];
        v[0] = 1.0;
        for m in 1..JET {
            v[m] = v[m - 1] * (-self.q - (m - 1) as f64) / m as f64;
        }
        mul(&prod, &v)
    }
}

fn mul(a: &[f64; JET], b: &[f64; JET]) -> [f64; JET] {
    let mut out = [0.0; JET];
    for i in 0..JET {
        for j in 0..JET - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}
