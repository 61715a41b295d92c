//! Truncated power series in the graded variable `w = x^p`.
//!
//! The expansions around `x = 0` of `arcsin_p`, `sin_p` and their relatives
//! only involve powers `x^(pk)`, possibly times one leading `x`. Grading by
//! `w` turns them into ordinary power series; the leading `x` is carried as
//! a flag.

mod expansion;

pub use expansion::{
    arcsin_series, assemble_expansion, b_coefficients, c_coefficients, evaluate_expansion,
    revert_series, sin_series, AsymptoticExpansion, DEFAULT_ORDER,
};

use crate::error::{domain, Result};

/// `Σ coefs[k] w^k` (times `x` when `odd`), exact to order `coefs.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coefs: Vec<f64>,
    odd: bool,
}

impl PowerSeries {
    pub fn new(coefs: Vec<f64>, odd: bool) -> Result<Self> {
        if coefs.is_empty() {
            return Err(domain("a power series needs at least one coefficient"));
        }
        Ok(PowerSeries { coefs, odd })
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coefs = vec![0.0; order + 1];
        coefs[0] = c;
        PowerSeries { coefs, odd: false }
    }

    /// The series `w`.
    pub fn variable(order: usize) -> Self {
        let mut coefs = vec![0.0; order + 1];
        if order > 0 {
            coefs[1] = 1.0;
        }
        PowerSeries { coefs, odd: false }
    }

    pub fn coefs(&self) -> &[f64] {
        &self.coefs
    }

    /// Coefficient of `w^k`; zero above the truncation order.
    pub fn coef(&self, k: usize) -> f64 {
        self.coefs.get(k).copied().unwrap_or(0.0)
    }

    pub fn order(&self) -> usize {
        self.coefs.len() - 1
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    /// Same coefficients with the leading-`x` flag replaced.
    pub fn with_odd(mut self, odd: bool) -> Self {
        self.odd = odd;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order()) + 1;
        PowerSeries {
            coefs: self.coefs[..n].to_vec(),
            odd: self.odd,
        }
    }

    pub fn add(&self, other: &PowerSeries) -> Self {
        assert_eq!(self.odd, other.odd, "adding series of different parity");
        let n = self.order().min(other.order()) + 1;
        PowerSeries {
            coefs: (0..n).map(|k| self.coefs[k] + other.coefs[k]).collect(),
            odd: self.odd,
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        PowerSeries {
            coefs: self.coefs.iter().map(|v| c * v).collect(),
            odd: self.odd,
        }
    }

    /// Cauchy product. At most one factor may carry the leading `x`.
    pub fn mul(&self, other: &PowerSeries) -> Self {
        assert!(!(self.odd && other.odd), "x^2 is not a power of w");
        let n = self.order().min(other.order()) + 1;
        let coefs = (0..n)
            .map(|k| (0..=k).map(|i| self.coefs[i] * other.coefs[k - i]).sum())
            .collect();
        PowerSeries {
            coefs,
            odd: self.odd || other.odd,
        }
    }

    /// `d/dw`, exact to one order less.
    pub fn derivative(&self) -> Self {
        let coefs = if self.order() == 0 {
            vec![0.0]
        } else {
            (1..self.coefs.len())
                .map(|k| k as f64 * self.coefs[k])
                .collect()
        };
        PowerSeries {
            coefs,
            odd: self.odd,
        }
    }

    /// `self(inner(w))`; `inner` must be even with zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self> {
        if inner.odd || inner.coefs[0] != 0.0 {
            return Err(domain("inner series must be even with zero constant term"));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = PowerSeries::constant(self.coefs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coefs[0] += self.coefs[k];
        }
        Ok(acc.with_odd(self.odd))
    }

    /// `self^alpha` for an even series with positive constant term.
    pub fn powf(&self, alpha: f64) -> Result<Self> {
        let g0 = self.even_positive_head("power")?;
        let g = &self.coefs;
        let mut f = vec![0.0; g.len()];
        f[0] = g0.powf(alpha);
        for n in 1..g.len() {
            let s: f64 = (1..=n)
                .map(|k| ((alpha + 1.0) * k as f64 - n as f64) * g[k] * f[n - k])
                .sum();
            f[n] = s / (n as f64 * g0);
        }
        Ok(PowerSeries {
            coefs: f,
            odd: false,
        })
    }

    pub fn recip(&self) -> Result<Self> {
        if self.odd || self.coefs[0] == 0.0 {
            return Err(domain("reciprocal needs an even series with nonzero constant term"));
        }
        let g = &self.coefs;
        let mut f = vec![0.0; g.len()];
        f[0] = 1.0 / g[0];
        for n in 1..g.len() {
            let s: f64 = (1..=n).map(|k| g[k] * f[n - k]).sum();
            f[n] = -s / g[0];
        }
        Ok(PowerSeries {
            coefs: f,
            odd: false,
        })
    }

    pub fn exp(&self) -> Result<Self> {
        if self.odd {
            return Err(domain("exp of an odd series"));
        }
        let g = &self.coefs;
        let mut f = vec![0.0; g.len()];
        f[0] = g[0].exp();
        for n in 1..g.len() {
            let s: f64 = (1..=n).map(|k| k as f64 * g[k] * f[n - k]).sum();
            f[n] = s / n as f64;
        }
        Ok(PowerSeries {
            coefs: f,
            odd: false,
        })
    }

    pub fn ln(&self) -> Result<Self> {
        let g0 = self.even_positive_head("logarithm")?;
        let g = &self.coefs;
        let mut f = vec![0.0; g.len()];
        f[0] = g0.ln();
        for n in 1..g.len() {
            let s: f64 = (1..n).map(|k| k as f64 * f[k] * g[n - k]).sum();
            f[n] = (g[n] - s / n as f64) / g0;
        }
        Ok(PowerSeries {
            coefs: f,
            odd: false,
        })
    }

    /// Value of the coefficient polynomial at `w`.
    pub fn eval_w(&self, w: f64) -> f64 {
        self.coefs.iter().rev().fold(0.0, |acc, c| acc * w + c)
    }

    /// Value of the represented function at `x`, with `w = |x|^p`.
    pub fn eval_x(&self, x: f64, p: f64) -> f64 {
        let v = self.eval_w(x.abs().powf(p));
        if self.odd {
            x * v
        } else {
            v
        }
    }

    fn even_positive_head(&self, what: &str) -> Result<f64> {
        let g0 = self.coefs[0];
        if self.odd || !(g0 > 0.0) {
            return Err(domain(format!(
                "{what} needs an even series with positive constant term"
            )));
        }
        Ok(g0)
    }
}

/// Polynomial in `q` with real coefficients, `coefs[m]` multiplying `q^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolynomial {
    coefs: Vec<f64>,
}

impl QPolynomial {
    pub fn new(mut coefs: Vec<f64>) -> Self {
        while coefs.len() > 1 && coefs.last() == Some(&0.0) {
            coefs.pop();
        }
        if coefs.is_empty() {
            coefs.push(0.0);
        }
        QPolynomial { coefs }
    }

    pub fn zero() -> Self {
        QPolynomial::new(vec![0.0])
    }

    /// `q(q-1)···(q-m+1)/m!`.
    pub fn binomial(m: usize) -> Self {
        let mut poly = QPolynomial::new(vec![1.0]);
        for i in 0..m {
            let factor = QPolynomial::new(vec![-(i as f64), 1.0]).scale(1.0 / (i + 1) as f64);
            poly = poly.mul(&factor);
        }
        poly
    }

    pub fn coefs(&self) -> &[f64] {
        &self.coefs
    }

    pub fn coef(&self, m: usize) -> f64 {
        self.coefs.get(m).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coefs.len() - 1
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.coefs.iter().rev().fold(0.0, |acc, c| acc * q + c)
    }

    pub fn add(&self, other: &QPolynomial) -> Self {
        let n = self.coefs.len().max(other.coefs.len());
        QPolynomial::new((0..n).map(|m| self.coef(m) + other.coef(m)).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        QPolynomial::new(self.coefs.iter().map(|v| c * v).collect())
    }

    pub fn mul(&self, other: &QPolynomial) -> Self {
        let mut out = vec![0.0; self.coefs.len() + other.coefs.len() - 1];
        for (i, a) in self.coefs.iter().enumerate() {
            for (j, b) in other.coefs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn exp_ln_and_powers() {
        let w = PowerSeries::variable(6);
        let e = w.exp().unwrap();
        let want: Vec<f64> = (0..7)
            .scan(1.0, |f, k| {
                let v = 1.0 / *f;
                *f *= (k + 1) as f64;
                Some(v)
            })
            .collect();
        assert!(close(e.coefs(), &want, 1e-16));
        assert!(close(e.ln().unwrap().coefs(), w.coefs(), 1e-15));

        // (1 - w)^(-1/2) against the binomial series
        let one_minus = PowerSeries::new(vec![1.0, -1.0, 0.0, 0.0, 0.0], false).unwrap();
        let s = one_minus.powf(-0.5).unwrap();
        assert!(close(s.coefs(), &[1.0, 0.5, 0.375, 0.3125, 0.2734375], 1e-16));
        let r = one_minus.recip().unwrap();
        assert!(close(r.coefs(), &[1.0; 5], 0.0));
        assert!(close(s.mul(&s).mul(&one_minus).coefs(), &[1.0, 0.0, 0.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn composition() {
        // exp(w) ∘ (w + w^2) = 1 + w + 3/2 w^2 + 7/6 w^3
        let e = PowerSeries::variable(3).exp().unwrap();
        let inner = PowerSeries::new(vec![0.0, 1.0, 1.0, 0.0], false).unwrap();
        let c = e.compose(&inner).unwrap();
        assert!(close(c.coefs(), &[1.0, 1.0, 1.5, 7.0 / 6.0], 1e-15));
        assert!(e.compose(&e).is_err());
    }

    #[test]
    fn mixed_orders_truncate_to_the_shorter() {
        let a = PowerSeries::constant(2.0, 5);
        let b = PowerSeries::variable(2);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!(a.add(&PowerSeries::constant(1.0, 3)).coefs(), &[3.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn odd_flag_evaluation() {
        let s = PowerSeries::new(vec![1.0, -1.0 / 6.0], true).unwrap();
        let x: f64 = 0.1;
        assert!((s.eval_x(x, 2.0) - (x - x.powi(3) / 6.0)).abs() < 1e-16);
        assert!((s.eval_x(-x, 2.0) + s.eval_x(x, 2.0)).abs() < 1e-17);
    }

    #[test]
    fn binomial_polynomials() {
        let b3 = QPolynomial::binomial(3);
        assert_eq!(b3.degree(), 3);
        assert!((b3.eval(7.0) - 35.0).abs() < 1e-12);
        assert!((b3.eval(2.0)).abs() < 1e-15);
        assert!((QPolynomial::binomial(2).eval(0.5) + 0.125).abs() < 1e-16);
        assert_eq!(QPolynomial::zero().degree(), 0);
    }
}
