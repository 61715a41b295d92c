//! Series of `arcsin_p` and `sin_p` at the origin, and the expansion of
//! `I_p(q)` in inverse powers of `q` obtained from them.
//!
//! Substituting `x = K u` with `K = (p(p+1))^(1/p)` gives
//! `|sinc_p(K u)|^q = e^(-q u^p) (e^(u^p) sinc_p(K u))^q`. The second factor
//! is `(1 + Σ_{j≥2} b_j w^j)^q = Σ_j c_j(q) w^j`, and integrating term by term
//! against `e^(-q w)` gives `K Σ_j c_j(q) Γ(j + 1/p) / (p q^(j + 1/p))`.
//! Since `c_j` has degree `⌊j/2⌋` in `q`, collecting powers of `1/q` yields
//! coefficients `g_m` that are final once the order reaches `2m`.

use super::{PowerSeries, QPolynomial};
use crate::error::{domain, Error, Result};
use crate::ptrig::PExponent;
use crate::special::gamma;

/// Truncation order used by the CLI and the checks; gives `g_0..g_6`.
pub const DEFAULT_ORDER: usize = 12;

/// `arcsin_p(x) = x Σ_k C(k)/(pk + 1) w^k` with `C(k)` the coefficients of
/// `(1 - w)^(-1/p)`.
pub fn arcsin_series(p: &PExponent, order: usize) -> PowerSeries {
    let p = p.p();
    let mut c = 1.0;
    let coefs = (0..=order)
        .map(|k| {
            if k > 0 {
                c *= (1.0 / p + (k - 1) as f64) / k as f64;
            }
            c / (p * k as f64 + 1.0)
        })
        .collect();
    PowerSeries::new(coefs, true).expect("nonempty")
}

/// Inverts an odd series `y A(y^p)` with `A(0) = 1`: returns `B` with
/// `x B(x^p)` the inverse function, flagged odd.
///
/// Solves `B · A(w B^p) = 1` by Newton iteration on formal series. Each step
/// doubles the number of correct coefficients.
pub fn revert_series(s: &PowerSeries, p: &PExponent, order: usize) -> Result<PowerSeries> {
    if !s.is_odd() || s.coef(0) != 1.0 {
        return Err(domain("reversion needs an odd series with unit leading coefficient"));
    }
    let order = order.min(s.order());
    let p = p.p();
    let a = s.truncate(order).with_odd(false);
    let mut da = a.derivative().coefs().to_vec();
    // z A'(z) only needs A' to one order less; pad to keep the order
    da.push(0.0);
    let da = PowerSeries::new(da, false)?;
    let w = PowerSeries::variable(order);

    let mut b = PowerSeries::constant(1.0, order);
    let steps = usize::BITS - order.leading_zeros() + 2;
    for _ in 0..steps {
        let z = w.mul(&b.powf(p)?);
        let az = a.compose(&z)?;
        let residual = b.mul(&az).sub(&PowerSeries::constant(1.0, order));
        let slope = az.add(&z.mul(&da.compose(&z)?).scale(p));
        b = b.sub(&residual.mul(&slope.recip()?));
    }

    let z = w.mul(&b.powf(p)?);
    let check = b.mul(&a.compose(&z)?);
    let residual = (0..=order)
        .map(|k| (check.coef(k) - if k == 0 { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    if residual > 1e-12 {
        return Err(Error::Convergence {
            what: "series reversion",
            iterations: steps as usize,
            residual,
        });
    }
    Ok(b.with_odd(true))
}

/// `sin_p(x) = x Σ_j a_j w^j`.
pub fn sin_series(p: &PExponent, order: usize) -> Result<PowerSeries> {
    revert_series(&arcsin_series(p, order), p, order)
}

/// Coefficients `b_j` of `exp(u^p) sinc_p(K u)` in `w = u^p`.
pub fn b_coefficients(p: &PExponent, order: usize) -> Result<PowerSeries> {
    let a = sin_series(p, order)?;
    let s = p.p() * (p.p() + 1.0);
    let mut scale = 1.0;
    let scaled: Vec<f64> = a
        .coefs()
        .iter()
        .map(|c| {
            let v = c * scale;
            scale *= s;
            v
        })
        .collect();
    let scaled = PowerSeries::new(scaled, false)?;
    Ok(PowerSeries::variable(order).exp()?.mul(&scaled))
}

/// Coefficients `c_j(q)` of `(Σ b_j w^j)^q`, as polynomials in `q`.
///
/// `b_0 = 1` and `b_1` vanishes identically, so `b_1` is dropped and
/// `c_j = Σ_m binom(q, m) [w^j] T^m` with `T = Σ_{j≥2} b_j w^j`.
pub fn c_coefficients(p: &PExponent, order: usize) -> Result<Vec<QPolynomial>> {
    let b = b_coefficients(p, order)?;
    let mut t = b.coefs().to_vec();
    t[0] = 0.0;
    if t.len() > 1 {
        t[1] = 0.0;
    }
    let t = PowerSeries::new(t, false)?;

    let mut c = vec![QPolynomial::zero(); order + 1];
    let mut power = PowerSeries::constant(1.0, order);
    for m in 0..=order / 2 {
        let binom = QPolynomial::binomial(m);
        for (j, cj) in c.iter_mut().enumerate() {
            let v = power.coef(j);
            if v != 0.0 {
                *cj = cj.add(&binom.scale(v));
            }
        }
        power = power.mul(&t);
    }
    Ok(c)
}

/// Expansion `I_p(q) ~ Σ_m g_m / q^m`.
#[derive(Debug, Clone)]
pub struct AsymptoticExpansion {
    p: PExponent,
    order: usize,
    c: Vec<QPolynomial>,
    regrouped: Vec<f64>,
}

impl AsymptoticExpansion {
    pub fn p(&self) -> &PExponent {
        &self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn c(&self) -> &[QPolynomial] {
        &self.c
    }

    /// `g_0..=g_{order/2}`.
    pub fn regrouped(&self) -> &[f64] {
        &self.regrouped
    }

    /// Highest `m` whose `g_m` is final at this order.
    pub fn stable_order(&self) -> usize {
        self.order / 2
    }

    /// `K c_j(q) Γ(j + 1/p) / (p q^j)`.
    pub fn term(&self, j: usize, q: f64) -> f64 {
        let p = self.p.p();
        scale(p) * self.c[j].eval(q) * gamma(j as f64 + 1.0 / p) / (p * q.powi(j as i32))
    }

    /// `K Γ(1/p) / p`, the limit of `I_p(q)`.
    pub fn leading_closed_form(&self) -> f64 {
        let p = self.p.p();
        scale(p) * gamma(1.0 / p) / p
    }

    /// `g_0 (-p² + p + 1)(p + 1) / (2p(2p + 1))`.
    pub fn first_order_closed_form(&self) -> f64 {
        let p = self.p.p();
        self.leading_closed_form() * (-p * p + p + 1.0) * (p + 1.0) / (2.0 * p * (2.0 * p + 1.0))
    }

    pub fn evaluate(&self, q: f64, m_max: usize) -> Result<f64> {
        evaluate_expansion(self, q, m_max)
    }
}

fn scale(p: f64) -> f64 {
    (p * (p + 1.0)).powf(1.0 / p)
}

pub fn assemble_expansion(p: &PExponent, order: usize) -> Result<AsymptoticExpansion> {
    if order < 2 {
        return Err(domain(format!("expansion order must be at least 2, got {order}")));
    }
    let c = c_coefficients(p, order)?;
    let pv = p.p();
    let k = scale(pv);
    let stable = order / 2;
    let mut regrouped = vec![0.0; stable + 1];
    for (j, cj) in c.iter().enumerate() {
        let weight = k * gamma(j as f64 + 1.0 / pv) / pv;
        for (m, coef) in cj.coefs().iter().enumerate() {
            if let Some(n) = j.checked_sub(m).filter(|&n| n <= stable) {
                regrouped[n] += weight * coef;
            }
        }
    }
    Ok(AsymptoticExpansion {
        p: *p,
        order,
        c,
        regrouped,
    })
}

/// `Σ_{m ≤ m_max} g_m / q^m`.
pub fn evaluate_expansion(e: &AsymptoticExpansion, q: f64, m_max: usize) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(domain(format!("expansion needs q > 1, got {q}")));
    }
    if m_max > e.stable_order() {
        return Err(domain(format!(
            "m_max = {m_max} exceeds the stable order {} at truncation {}",
            e.stable_order(),
            e.order
        )));
    }
    Ok(e.regrouped[..=m_max]
        .iter()
        .rev()
        .fold(0.0, |acc, g| acc / q + g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pe(p: f64) -> PExponent {
        PExponent::new(p).unwrap()
    }

    #[test]
    fn arcsin_coefficients() {
        let s = arcsin_series(&pe(2.0), 3);
        assert_eq!(s.coef(0), 1.0);
        assert!((s.coef(1) - 1.0 / 6.0).abs() < 1e-16);
        assert!((s.coef(2) - 3.0 / 40.0).abs() < 1e-16);
        let s = arcsin_series(&pe(3.0), 1);
        assert!((s.coef(1) - 1.0 / 12.0).abs() < 1e-16);
    }

    #[test]
    fn sine_series_at_p2() {
        let a = sin_series(&pe(2.0), 6).unwrap();
        let mut f = 1.0;
        for k in 0..=6 {
            let want = if k % 2 == 0 { 1.0 } else { -1.0 } / f;
            assert!((a.coef(k) - want).abs() < 1e-15, "k = {k}: {} vs {want}", a.coef(k));
            f *= ((2 * k + 2) * (2 * k + 3)) as f64;
        }
    }

    #[test]
    fn reversion_rejects_bad_input() {
        let s = PowerSeries::new(vec![2.0, 1.0], true).unwrap();
        assert!(revert_series(&s, &pe(2.0), 1).is_err());
        let s = PowerSeries::new(vec![1.0, 1.0], false).unwrap();
        assert!(revert_series(&s, &pe(2.0), 1).is_err());
    }

    #[test]
    fn b_and_c_low_orders() {
        let b = b_coefficients(&pe(2.0), 4).unwrap();
        assert!((b.coef(0) - 1.0).abs() < 1e-16);
        assert!(b.coef(1).abs() < 1e-15);
        assert!((b.coef(2) + 0.2).abs() < 1e-14);
        let c = c_coefficients(&pe(2.0), 6).unwrap();
        assert_eq!(c[0].coefs(), &[1.0]);
        assert_eq!(c[1].coefs(), &[0.0]);
        for (j, cj) in c.iter().enumerate() {
            assert!(cj.degree() <= j / 2, "c_{j} has degree {}", cj.degree());
        }
        let q = 7.0;
        let want = q * b.coef(4) + q * (q - 1.0) / 2.0 * b.coef(2).powi(2);
        assert!((c[4].eval(q) - want).abs() < 1e-13);
    }

    #[test]
    fn leading_coefficients_at_p2() {
        let e = assemble_expansion(&pe(2.0), DEFAULT_ORDER).unwrap();
        let g = e.regrouped();
        assert_eq!(g.len(), 7);
        assert!((g[0] - (1.5 * std::f64::consts::PI).sqrt()).abs() < 1e-14);
        assert!((g[1] / g[0] + 0.15).abs() < 1e-13);
        let v = e.evaluate(100.0, 1).unwrap();
        assert!((v - g[0] * (1.0 - 0.0015)).abs() < 1e-13);
        assert!(e.evaluate(100.0, 7).is_err());
        assert!(e.evaluate(0.5, 1).is_err());
        assert!(assemble_expansion(&pe(2.0), 1).is_err());
    }
}
