//! Grid checks of the inequalities and identities around `I_p(q)`.
//!
//! Each check turns an inequality into a margin that must be nonnegative
//! (or positive, for strict ones) and is evaluated in a form that keeps
//! relative precision where the two sides nearly cancel. Points are
//! evaluated in parallel; reports are assembled in grid order.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::ptrig::PExponent;
use crate::quad::{integrate_with, tail_bound, Tolerance};
use crate::series::{arcsin_series, PowerSeries};
use crate::special::{beta, gamma_ratio_scaled};

use super::fold::folded_tail;

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub x: f64,
    pub margin: f64,
}

/// Outcome of one check over a sampled grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub suite: String,
    pub grid: String,
    pub points: usize,
    /// Smallest margin seen; negative when something failed.
    pub max_slack: f64,
    pub violations: Vec<Violation>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `margins[i]` at `xs[i]`; `strict` demands margins above zero.
    fn from_margins(suite: &str, grid: String, xs: &[f64], margins: &[f64], strict: bool) -> Self {
        let mut max_slack = f64::INFINITY;
        let mut violations = Vec::new();
        for (index, (&x, &margin)) in xs.iter().zip(margins).enumerate() {
            max_slack = max_slack.min(margin);
            let ok = if strict { margin > 0.0 } else { margin >= 0.0 };
            if !ok {
                violations.push(Violation { index, x, margin });
            }
        }
        InequalityReport {
            suite: suite.to_string(),
            grid,
            points: xs.len(),
            max_slack,
            violations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Jordan,
    Bhayo,
    Beta,
    GammaRatio,
    Tail,
    Monotonic,
    Pythagorean,
    Symmetry,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Jordan,
        Suite::Bhayo,
        Suite::Beta,
        Suite::GammaRatio,
        Suite::Tail,
        Suite::Monotonic,
        Suite::Pythagorean,
        Suite::Symmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jordan => "jordan",
            Suite::Bhayo => "bhayo",
            Suite::Beta => "beta",
            Suite::GammaRatio => "gamma-ratio",
            Suite::Tail => "tail",
            Suite::Monotonic => "monotonic",
            Suite::Pythagorean => "pythagorean",
            Suite::Symmetry => "symmetry",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

pub fn run_suite(suite: Suite, p: &PExponent, samples: usize) -> Result<Vec<InequalityReport>> {
    if samples == 0 {
        return Err(domain("need at least one sample"));
    }
    match suite {
        Suite::Jordan => Ok(vec![verify_jordan(p, samples)]),
        Suite::Bhayo => verify_bhayo(p, samples),
        Suite::Beta => verify_beta_identities(p),
        Suite::GammaRatio => {
            let q_list = log_grid(10.0, 1e4, samples.max(2));
            GAMMA_PAIRS
                .iter()
                .map(|&(a, b)| verify_gamma_ratio(a, b, &q_list))
                .collect()
        }
        Suite::Tail => verify_tail(p, samples),
        Suite::Monotonic => Ok(verify_monotonic(p, samples)),
        Suite::Pythagorean => Ok(vec![verify_pythagorean(p, samples)]),
        Suite::Symmetry => Ok(verify_symmetry(p, samples)),
    }
}

pub fn verify_all(p: &PExponent, samples: usize) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        out.extend(run_suite(suite, p, samples)?);
    }
    Ok(out)
}

/// `i·end/n` for `i = 1..=n`.
fn right_grid(end: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| end * (i as f64 / n as f64)).collect()
}

/// `n` points strictly inside `(0, end)`.
fn open_grid(end: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| end * (i as f64 / (n + 1) as f64)).collect()
}

/// `n` points evenly spaced on `[a, b]`.
fn closed_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (a + b)];
    }
    (0..n)
        .map(|i| a + (b - a) * (i as f64 / (n - 1) as f64))
        .collect()
}

fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    let mut v: Vec<f64> = (0..n)
        .map(|i| (la + (lb - la) * (i as f64 / (n - 1) as f64)).exp())
        .collect();
    v[0] = a;
    v[n - 1] = b;
    v
}

fn margins<F: Fn(f64) -> f64 + Sync>(xs: &[f64], f: F) -> Vec<f64> {
    xs.par_iter().map(|&x| f(x)).collect()
}

/// `2/π_p ≤ sinc_p x < 1` on `(0, π_p/2]`.
pub fn verify_jordan(p: &PExponent, samples: usize) -> InequalityReport {
    let xs = right_grid(p.half_pi_p(), samples);
    let lower = 2.0 / p.pi_p();
    let m = margins(&xs, |x| {
        let low = p.sinc_p(x) - lower;
        // sinc_p < 1 is checked through the deficit, which stays
        // resolvable where sinc_p rounds to 1
        let high = p.sinc_deficit(x);
        if high > 0.0 {
            low
        } else {
            high.min(-f64::MIN_POSITIVE)
        }
    });
    InequalityReport::from_margins(
        "jordan",
        format!("{samples} points on (0, pi_p/2], p = {}", p.p()),
        &xs,
        &m,
        false,
    )
}

/// `|sinc_p| ≤ 1` on `[-4π_p, 4π_p]`, and `sinc_p` strictly decreasing on
/// `(0, π_p/2)`.
pub fn verify_monotonic(p: &PExponent, samples: usize) -> Vec<InequalityReport> {
    let span = 4.0 * p.pi_p();
    let xs = closed_grid(-span, span, samples);
    let m = margins(&xs, |x| {
        let s = p.sinc_p(x).abs();
        if s < 0.5 {
            1.0 - s
        } else {
            // sinc_p is positive here
            p.sinc_deficit(x)
        }
    });
    let bound = InequalityReport::from_margins(
        "sinc-bound",
        format!("{samples} points on [-4 pi_p, 4 pi_p], p = {}", p.p()),
        &xs,
        &m,
        false,
    );

    let xs = open_grid(p.half_pi_p(), samples + 1);
    let deficits = margins(&xs, |x| p.sinc_deficit(x));
    let steps: Vec<f64> = deficits.windows(2).map(|w| w[1] - w[0]).collect();
    let decreasing = InequalityReport::from_margins(
        "sinc-decreasing",
        format!("{} consecutive pairs in (0, pi_p/2), p = {}", samples, p.p()),
        &xs[..samples],
        &steps,
        true,
    );
    vec![bound, decreasing]
}

/// Both Bhayo-type bounds on `y / arcsin_p y`, plus the domain facts for the
/// lower one.
pub fn verify_bhayo(p: &PExponent, samples: usize) -> Result<Vec<InequalityReport>> {
    let pv = p.p();
    let c1 = 1.0 / (pv * (pv + 1.0));
    let x_star = ((-(2.0 / p.pi_p()).powf(pv * (pv + 1.0))).ln_1p() / pv).exp();
    let alpha1 = p.arcsin_p(x_star)?;

    let dom = [x_star, 1.0 - x_star, alpha1, p.half_pi_p() - alpha1];
    let domain_report = InequalityReport::from_margins(
        "bhayo-domain",
        format!("x* = {x_star} and arcsin_p(x*) = {alpha1}, p = {pv}"),
        &[x_star, x_star, alpha1, alpha1],
        &dom,
        true,
    );

    let series = LogMarginSeries::new(p);
    let ys = open_grid(x_star, samples);
    // margins are divided by u/(p(p+1)) so they stay representable at
    // large p, where u = y^p is tiny
    let lower = margins(&ys, |y| {
        let u = y.powf(pv);
        if u <= LogMarginSeries::RADIUS {
            series.eval_scaled(u) / c1
        } else {
            let f = p.arcsin_p(y).unwrap_or(f64::NAN);
            (-(f / y - 1.0).ln_1p() - c1 * (-u).ln_1p()) / (c1 * u)
        }
    });
    let lower = InequalityReport::from_margins(
        "bhayo-lower",
        format!("{samples} points on (0, x*), p = {pv}"),
        &ys,
        &lower,
        true,
    );

    let ys = open_grid(1.0, samples);
    let upper = margins(&ys, |y| {
        let u = y.powf(pv);
        if u <= 0.5 {
            excess_beyond_first(pv, u) / c1
        } else {
            let f = p.arcsin_p(y).unwrap_or(f64::NAN);
            (f / y - 1.0 - c1 * u) / (c1 * u)
        }
    });
    let upper = InequalityReport::from_margins(
        "bhayo-upper",
        format!("{samples} points on (0, 1), p = {pv}"),
        &ys,
        &upper,
        true,
    );
    Ok(vec![domain_report, lower, upper])
}

/// `Σ_{k≥2} C_k u^(k-1)/(pk + 1)`: `(arcsin_p(y)/y - 1 - u/(p(p+1)))/u`
/// without the cancellation.
fn excess_beyond_first(p: f64, u: f64) -> f64 {
    let inv_p = 1.0 / p;
    let mut binom = inv_p;
    let mut uk = 1.0;
    let mut sum = 0.0;
    for k in 2..2000 {
        let kf = k as f64;
        binom *= (inv_p + kf - 1.0) / kf;
        uk *= u;
        let term = binom * uk / (p * kf + 1.0);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Power series in `u = y^p` of `-ln(arcsin_p(y)/y) - ln(1 - u)/(p(p+1))`,
/// whose constant and linear terms vanish.
struct LogMarginSeries {
    coefs: PowerSeries,
}

impl LogMarginSeries {
    const RADIUS: f64 = 0.25;
    const ORDER: usize = 60;

    fn new(p: &PExponent) -> Self {
        let c1 = 1.0 / (p.p() * (p.p() + 1.0));
        let ratio = arcsin_series(p, Self::ORDER).with_odd(false);
        let log_ratio = ratio.ln().expect("positive constant term");
        let mut coefs: Vec<f64> = log_ratio.coefs().iter().map(|c| -c).collect();
        for (k, c) in coefs.iter_mut().enumerate().skip(1) {
            *c += c1 / k as f64;
        }
        coefs[0] = 0.0;
        coefs[1] = 0.0;
        LogMarginSeries {
            coefs: PowerSeries::new(coefs, false).expect("nonempty"),
        }
    }

    /// The lower margin divided by `u`.
    fn eval_scaled(&self, u: f64) -> f64 {
        let shifted = PowerSeries::new(self.coefs.coefs()[1..].to_vec(), false).expect("nonempty");
        shifted.eval_w(u)
    }
}

const GAMMA_PAIRS: [(f64, f64); 5] = [(0.0, 0.5), (1.0, 0.0), (0.5, 0.0), (-0.3, 0.7), (2.0, -0.5)];

/// `r(q) = Γ(q + a)/Γ(q + b) · q^(b - a)`: `|r - 1|` nonincreasing along
/// `q_list` and below `5/q` at the last point.
pub fn verify_gamma_ratio(a: f64, b: f64, q_list: &[f64]) -> Result<InequalityReport> {
    if q_list.is_empty() || q_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("q list must be nonempty and increasing"));
    }
    let dev: Vec<f64> = q_list
        .iter()
        .map(|&q| Ok((gamma_ratio_scaled(q, a, b)? - 1.0).abs()))
        .collect::<Result<_>>()?;
    // consecutive deviations may tie at rounding level when r ≡ 1
    let mut m: Vec<f64> = dev
        .windows(2)
        .map(|w| w[0] - w[1] + 4.0 * f64::EPSILON)
        .collect();
    let q_max = *q_list.last().expect("nonempty");
    m.push(5.0 / q_max - dev[dev.len() - 1]);
    let mut xs = q_list[1..].to_vec();
    xs.push(q_max);
    let mut report = InequalityReport::from_margins(
        "gamma-ratio",
        format!("a = {a}, b = {b}, {} values of q in [{}, {q_max}]", q_list.len(), q_list[0]),
        &xs,
        &m,
        false,
    );
    // the bound at q_max is strict
    let last = m.len() - 1;
    if m[last] == 0.0 {
        report.violations.push(Violation {
            index: last,
            x: q_max,
            margin: 0.0,
        });
    }
    Ok(report)
}

const BETA_MU: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];
const BETA_LAMBDA: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
const BETA_NU: [f64; 4] = [0.5, 1.0, 2.0, 3.5];
const BETA_B: [f64; 3] = [0.5, 1.0, 2.0];
const BETA_TOL: f64 = 1e-8;

/// Beta-function evaluations of `∫_0^1 x^(μ-1)(1-x^λ)^(ν-1)` and of
/// `∫_0^∞ x^(μ-1)(1+b x^p)^(-ν)`, each against quadrature.
pub fn verify_beta_identities(p: &PExponent) -> Result<Vec<InequalityReport>> {
    let mut finite = Vec::new();
    for &mu in &BETA_MU {
        for &lambda in &BETA_LAMBDA {
            for &nu in &BETA_NU {
                finite.push((mu, lambda, nu));
            }
        }
    }
    let m: Vec<f64> = finite
        .par_iter()
        .map(|&(mu, lambda, nu)| {
            let closed = beta(mu / lambda, nu) / lambda;
            // 1 - x^λ without cancellation near x = 1
            let f = |x: f64| x.powf(mu - 1.0) * (-(lambda * x.ln()).exp_m1()).powf(nu - 1.0);
            let q = integrate_with(f, &[0.0, 1.0], Tolerance::absolute(1e-12))?;
            Ok(BETA_TOL - (q.value - closed).abs())
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = (0..finite.len()).map(|i| i as f64).collect();
    let finite_report = InequalityReport::from_margins(
        "beta-finite",
        format!("{} (mu, lambda, nu) triples, tolerance {BETA_TOL:e}", finite.len()),
        &xs,
        &m,
        false,
    );

    // On [1, ∞) substitute x = 1/s: s^(pν-μ-1) (s^p + b)^(-ν) on (0, 1].
    // Grid points keep both endpoint exponents at or above -1/2.
    let pv = p.p();
    let mut improper = Vec::new();
    for &mu in &BETA_MU {
        for &nu in &BETA_NU {
            for &b in &BETA_B {
                if pv * nu - mu >= 0.5 {
                    improper.push((mu, nu, b));
                }
            }
        }
    }
    let m: Vec<f64> = improper
        .par_iter()
        .map(|&(mu, nu, b)| {
            let closed = b.powf(-mu / pv) * beta(mu / pv, nu - mu / pv) / pv;
            let near = |x: f64| x.powf(mu - 1.0) * (1.0 + b * x.powf(pv)).powf(-nu);
            let far = |s: f64| s.powf(pv * nu - mu - 1.0) * (s.powf(pv) + b).powf(-nu);
            let a = integrate_with(near, &[0.0, 1.0], Tolerance::absolute(1e-12))?;
            let c = integrate_with(far, &[0.0, 1.0], Tolerance::absolute(1e-12))?;
            Ok(BETA_TOL - (a.value + c.value - closed).abs())
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = (0..improper.len()).map(|i| i as f64).collect();
    let improper_report = InequalityReport::from_margins(
        "beta-improper",
        format!(
            "{} (mu, nu, b) triples with p nu - mu >= 1/2, p = {pv}, tolerance {BETA_TOL:e}",
            improper.len()
        ),
        &xs,
        &m,
        false,
    );
    Ok(vec![finite_report, improper_report])
}

const TAIL_Q: [f64; 4] = [1.5, 2.0, 5.0, 20.0];
const TAIL_PERIODS: usize = 8;
const TAIL_REL: f64 = 1e-12;

/// Computed `∫_α^∞ |sinc_p|^q` against the explicit tail bound, for `α` on a
/// grid over `(0, 8π_p]` and several `q`.
///
/// The tail at `8π_p` comes from the folded sum; smaller `α` accumulate the
/// panels in between, from the far end inwards.
pub fn verify_tail(p: &PExponent, samples: usize) -> Result<Vec<InequalityReport>> {
    let end = TAIL_PERIODS as f64 * p.pi_p();
    let alphas = right_grid(end, samples);
    let mut reports = Vec::new();
    for &q in &TAIL_Q {
        let far = folded_tail(p, 0, q, TAIL_PERIODS, 1e-14)?;
        let far = far.value;
        let f = |x: f64| p.sinc_p(x).abs().powf(q);
        let mut edges = vec![0.0];
        edges.extend_from_slice(&alphas);
        let pieces: Vec<f64> = edges
            .par_windows(2)
            .map(|w| {
                // sin_p is smooth between multiples of π_p/2
                let half = p.half_pi_p();
                let mut pts = vec![w[0]];
                let mut k = (w[0] / half).floor() as usize + 1;
                while (k as f64) * half < w[1] {
                    let r = k as f64 * half;
                    if r > w[0] {
                        pts.push(r);
                    }
                    k += 1;
                }
                pts.push(w[1]);
                // near the roots sin_p inherits the rounding of the reduced
                // argument, so each piece is only asked for accuracy relative
                // to the tail it is added to
                let tol = Tolerance {
                    abs: TAIL_REL * far,
                    rel: TAIL_REL,
                };
                Ok(integrate_with(f, &pts, tol)?.value)
            })
            .collect::<Result<_>>()?;
        // tails[i] = ∫_{alphas[i]}^∞
        let mut tails = vec![0.0; samples];
        let mut acc = far;
        for i in (0..samples).rev() {
            tails[i] = acc;
            acc += pieces[i];
        }
        // each tail is known to relative accuracy TAIL_REL; near p = 1 the
        // bound is attained to rounding
        let m: Vec<f64> = alphas
            .iter()
            .zip(&tails)
            .map(|(&a, &t)| Ok(tail_bound(p, a, q)?.bound - t * (1.0 - TAIL_REL)))
            .collect::<Result<_>>()?;
        reports.push(InequalityReport::from_margins(
            "tail",
            format!("q = {q}, {samples} values of alpha on (0, 8 pi_p], p = {}", p.p()),
            &alphas,
            &m,
            false,
        ));
    }
    Ok(reports)
}

const PYTHAGOREAN_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-14;
const PERIOD_TOL: f64 = 1e-12;

/// `|sin_p|^p + |cos_p|^p = 1` on `[-4π_p, 4π_p]`.
pub fn verify_pythagorean(p: &PExponent, samples: usize) -> InequalityReport {
    let span = 4.0 * p.pi_p();
    let xs = closed_grid(-span, span, samples);
    let pv = p.p();
    let m = margins(&xs, |x| {
        let (s, c) = p.sin_cos_p(x);
        PYTHAGOREAN_TOL - (s.abs().powf(pv) + c.abs().powf(pv) - 1.0).abs()
    });
    InequalityReport::from_margins(
        "pythagorean",
        format!("{samples} points on [-4 pi_p, 4 pi_p], p = {pv}, tolerance {PYTHAGOREAN_TOL:e}"),
        &xs,
        &m,
        false,
    )
}

/// Oddness, reflection about `π_p/2`, and `2π_p`-periodicity of `sin_p`.
///
/// Shifted arguments carry the rounding of `x ± π_p/2` or `x + 2π_p`, so the
/// reflection and period tolerances grow with `π_p` once it exceeds 4
/// (`p` below about 1.5).
pub fn verify_symmetry(p: &PExponent, samples: usize) -> Vec<InequalityReport> {
    let span = 2.0 * p.pi_p();
    let scale = (p.pi_p() / 4.0).max(1.0);
    let xs = closed_grid(0.0, span, samples);
    let h = p.half_pi_p();
    let odd = margins(&xs, |x| SYMMETRY_TOL - (p.sin_p(-x) + p.sin_p(x)).abs());
    let refl = margins(&xs, |x| {
        scale * SYMMETRY_TOL - (p.sin_p(h - x) - p.sin_p(h + x)).abs()
    });
    let xs_period = closed_grid(-span, span, samples);
    let per = margins(&xs_period, |x| {
        scale * PERIOD_TOL - (p.sin_p(x + span) - p.sin_p(x)).abs()
    });
    let grid = format!("{samples} points on [0, 2 pi_p], p = {}", p.p());
    vec![
        InequalityReport::from_margins("odd", grid.clone(), &xs, &odd, false),
        InequalityReport::from_margins("reflection", grid, &xs, &refl, false),
        InequalityReport::from_margins(
            "periodic",
            format!("{samples} points on [-2 pi_p, 2 pi_p], p = {}", p.p()),
            &xs_period,
            &per,
            false,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn log_margin_series_matches_direct_form() {
        let p = PExponent::new(2.0).unwrap();
        let s = LogMarginSeries::new(&p);
        let c1 = 1.0 / 6.0;
        for &y in &[0.3f64, 0.45] {
            let u = y * y;
            let direct = -(y.asin() / y).ln() - c1 * (1.0 - u).ln();
            assert!((s.eval_scaled(u) * u - direct).abs() < 1e-15, "{} vs {direct}", s.eval_scaled(u) * u);
        }
        // leading coefficient is positive
        assert!(s.coefs.coef(2) > 0.0);
    }

    #[test]
    fn gamma_ratio_examples() {
        let qs = [10.0, 100.0, 1e4];
        assert!(verify_gamma_ratio(0.3, 0.3, &qs).unwrap().passed());
        assert!(verify_gamma_ratio(1.0, 0.0, &qs).unwrap().passed());
        assert!(verify_gamma_ratio(0.0, 0.5, &qs).unwrap().passed());
    }

    #[test]
    fn failing_margins_are_listed_in_grid_order() {
        let r = InequalityReport::from_margins("t", String::new(), &[1.0, 2.0, 3.0], &[-1.0, 0.5, -2.0], false);
        assert_eq!(r.violations.iter().map(|v| v.index).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(r.max_slack, -2.0);
        assert!(!r.passed());
    }
}
