//! Adaptive quadrature and the tail estimates used to truncate improper
//! integrals of `|sinc_p|^q`.
//!
//! Every panel `[a, b]` is first mapped through `x = a + (b - a)·t²(3 - 2t)`.
//! The map has zero slope at both ends, so integrable endpoint singularities
//! of order up to `(x - a)^(-1/2)` become bounded and logarithmic ones become
//! harmless. The mapped integrand is then integrated by a 7/15-point
//! Gauss–Kronrod pair with global adaptive bisection. Neither rule samples
//! the panel ends.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};
use crate::ptrig::PExponent;

/// Panel cap for one adaptive integration.
pub const MAX_PANELS: usize = 10_000;

/// Default cap on the doubling search for a truncation point.
pub const MAX_DOUBLINGS: u32 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadResult {
    pub value: f64,
    /// Absolute quadrature error estimate (sum of per-panel `|K15 - G7|`).
    pub err_est: f64,
    /// Number of panels in the final partition.
    pub subdivisions: usize,
    /// Upper bound on the mass discarded by truncating an infinite range.
    pub tail_remainder: f64,
}

impl QuadResult {
    /// Quadrature estimate plus truncation bound.
    pub fn total_error(&self) -> f64 {
        self.err_est + self.tail_remainder
    }

    /// Sums two results over adjacent ranges.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            err_est: self.err_est + other.err_est,
            subdivisions: self.subdivisions + other.subdivisions,
            tail_remainder: self.tail_remainder + other.tail_remainder,
        }
    }
}

/// Stopping rule: total error estimate `≤ max(abs, rel·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    pub fn relative(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel }
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    fn halve(self) -> Self {
        Tolerance {
            abs: 0.5 * self.abs,
            rel: 0.5 * self.rel,
        }
    }

    fn check(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if ok(self.abs) && ok(self.rel) && (self.abs > 0.0 || self.rel > 0.0) {
            Ok(())
        } else {
            Err(domain(format!("invalid tolerance {self:?}")))
        }
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    integrate_with(f, &[a, b], Tolerance::absolute(tol))
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the panels
/// delimited by `points`. Use this to put known kinks, roots or
/// singularities on panel boundaries.
pub fn integrate_with<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<QuadResult> {
    tol.check()?;
    if points.len() < 2 {
        return Err(domain("need at least two breakpoints"));
    }
    if points.iter().any(|x| !x.is_finite()) || points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("breakpoints must be finite and strictly increasing"));
    }
    if points.len() - 1 > MAX_PANELS {
        return Err(domain(format!(
            "{} initial panels exceed the cap of {MAX_PANELS}",
            points.len() - 1
        )));
    }

    let mut heap = BinaryHeap::with_capacity(2 * points.len());
    let mut frozen = Vec::new();
    let (mut total, mut total_err) = (0.0, 0.0);
    for (seg, w) in points.windows(2).enumerate() {
        let panel = Panel::new(&f, seg, w[0], w[1], 0.0, 1.0)?;
        total += panel.value;
        total_err += panel.err;
        heap.push(panel);
    }

    let mut converged = true;
    while total_err > tol.target(total) {
        if heap.len() + frozen.len() >= MAX_PANELS {
            converged = false;
            break;
        }
        let Some(worst) = heap.pop() else {
            converged = false;
            break;
        };
        let mid = 0.5 * (worst.t0 + worst.t1);
        if worst.t1 - worst.t0 < 1e-13 || mid <= worst.t0 || mid >= worst.t1 {
            frozen.push(worst);
            continue;
        }
        let (a, b) = (points[worst.seg], points[worst.seg + 1]);
        let left = Panel::new(&f, worst.seg, a, b, worst.t0, mid)?;
        let right = Panel::new(&f, worst.seg, a, b, mid, worst.t1)?;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    // Fixed summation order (by position) so results do not depend on the
    // refinement history.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|x, y| x.seg.cmp(&y.seg).then(x.t0.total_cmp(&y.t0)));
    let result = QuadResult {
        value: panels.iter().map(|p| p.value).sum(),
        err_est: panels.iter().map(|p| p.err).sum(),
        subdivisions: panels.len(),
        tail_remainder: 0.0,
    };
    if converged || result.err_est <= tol.target(result.value) {
        Ok(result)
    } else {
        Err(Error::NonConvergence {
            partial: result,
            tol: tol.target(result.value),
        })
    }
}

/// Finds the first `α = a + spacing·2^k`, `k ≤ max_doublings`, with
/// `tail(α) < target`. Returns `(α, k, tail(α))`.
pub fn truncation_point<T: Fn(f64) -> f64>(
    a: f64,
    spacing: f64,
    target: f64,
    tail: T,
    max_doublings: u32,
) -> std::result::Result<(f64, u32, f64), Error> {
    let mut last = (a, f64::INFINITY);
    for k in 0..=max_doublings {
        let alpha = a + spacing * (1u64 << k) as f64;
        let bound = tail(alpha);
        if bound < target {
            return Ok((alpha, k, bound));
        }
        last = (alpha, bound);
    }
    Err(Error::TailNotReached {
        last_alpha: last.0,
        last_bound: last.1,
        target,
    })
}

/// `∫_a^∞ f`, truncated at the first `α` in `a + spacing·2^k` whose tail
/// bound is below `tol/2`; `[a, α]` is integrated to `tol/2` on panels of
/// width `spacing`. `tail(α)` must bound `∫_α^∞ |f|` and be nonincreasing.
pub fn integrate_to_infinity<F, T>(
    f: F,
    a: f64,
    spacing: f64,
    tol: f64,
    tail: T,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    integrate_to_infinity_with(f, a, spacing, Tolerance::absolute(tol), tail, MAX_DOUBLINGS)
}

pub fn integrate_to_infinity_with<F, T>(
    f: F,
    a: f64,
    spacing: f64,
    tol: Tolerance,
    tail: T,
    max_doublings: u32,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    tol.check()?;
    if !(spacing > 0.0 && spacing.is_finite() && a.is_finite()) {
        return Err(domain(format!("bad truncation grid a = {a}, spacing = {spacing}")));
    }
    if tol.abs <= 0.0 {
        return Err(domain("truncating an infinite range needs an absolute tolerance"));
    }
    let (_, k, bound) = truncation_point(a, spacing, 0.5 * tol.abs, tail, max_doublings)?;
    let n = 1usize << k;
    let points: Vec<f64> = (0..=n).map(|i| a + spacing * i as f64).collect();
    match integrate_with(f, &points, tol.halve()) {
        Ok(mut r) => {
            r.tail_remainder = bound;
            Ok(r)
        }
        Err(Error::NonConvergence { mut partial, tol }) => {
            partial.tail_remainder = bound;
            Err(Error::NonConvergence { partial, tol })
        }
        Err(e) => Err(e),
    }
}

/// Explicit upper bound for `∫_α^∞ |sinc_p x|^q dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub alpha: f64,
    pub q: f64,
    pub bound: f64,
}

/// `α^(1-q)/(q-1)` for `α ≥ 1`, and `(sin_p α/α)^q (1-α) + 1/(q-1)` for
/// `0 < α < 1`.
pub fn tail_bound(p: &PExponent, alpha: f64, q: f64) -> Result<TailBound> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(domain(format!("tail bound needs alpha > 0, got {alpha}")));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(domain(format!("tail bound needs q > 1, got {q}")));
    }
    let bound = if alpha >= 1.0 {
        alpha.powf(1.0 - q) / (q - 1.0)
    } else {
        p.sinc_p(alpha).powf(q) * (1.0 - alpha) + 1.0 / (q - 1.0)
    };
    Ok(TailBound { alpha, q, bound })
}

/// Upper bound for `∫_α^∞ |ln|sinc_p x||^n |sinc_p x|^q dx`.
///
/// Uses `|sinc_p x| ≤ 1/x` and the monotonicity of `s ↦ |ln s|^n s^q` on
/// `(0, e^(-n/q)]`, giving `∫_α^∞ (ln x)^n x^(-q) dx` in closed form. Valid
/// for `α ≥ max(1, e^(n/q))`; reduces to the `α ≥ 1` branch of
/// [`tail_bound`] at `n = 0`.
pub fn log_tail_bound(alpha: f64, q: f64, n: u32) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(domain(format!("log tail bound needs q > 1, got {q}")));
    }
    if !(alpha >= 1.0 && alpha.ln() >= n as f64 / q) {
        return Err(domain(format!(
            "log tail bound needs alpha ≥ max(1, e^(n/q)), got alpha = {alpha}"
        )));
    }
    // n!/(q-1)^(n+1) · α^(1-q) · Σ_{i≤n} ((q-1) ln α)^i / i!
    let l = alpha.ln();
    let qm = q - 1.0;
    let mut sum = 0.0;
    let mut term = 1.0 / qm; // i = n: (ln α)^n / (q-1)
    for i in (0..=n).rev() {
        if i == n {
            term = l.powi(n as i32) / qm;
        } else {
            term *= (i + 1) as f64 / (qm * l.max(f64::MIN_POSITIVE));
        }
        sum += term;
    }
    if l == 0.0 {
        // only the i = 0 term survives: n!/(q-1)^(n+1)
        sum = (1..=n).map(|i| i as f64).product::<f64>() / qm.powi(n as i32 + 1);
    }
    Ok(alpha.powf(1.0 - q) * sum)
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    seg: usize,
    t0: f64,
    t1: f64,
    value: f64,
    err: f64,
}

impl Panel {
    /// GK15 over `[t0, t1]` of the mapped integrand of segment `[a, b]`.
    fn new<F: Fn(f64) -> f64>(f: &F, seg: usize, a: f64, b: f64, t0: f64, t1: f64) -> Result<Self> {
        let len = b - a;
        let g = |t: f64| -> Result<f64> {
            let jac = 6.0 * t * (1.0 - t);
            let x = a + len * (t * t * (3.0 - 2.0 * t));
            // the Jacobian vanishes at the ends, so nodes rounding onto an
            // endpoint carry no weight
            if jac <= 0.0 || x <= a || x >= b {
                return Ok(0.0);
            }
            let v = f(x);
            if v.is_nan() {
                return Err(Error::Evaluation { x });
            }
            Ok(v * jac * len)
        };

        let c = 0.5 * (t0 + t1);
        let h = 0.5 * (t1 - t0);
        let fc = g(c)?;
        let mut kronrod = fc * WGK[7];
        let mut gauss = fc * WG[3];
        for j in 0..7 {
            let dx = h * XGK[j];
            let s = g(c - dx)? + g(c + dx)?;
            kronrod += WGK[j] * s;
            if j % 2 == 1 {
                gauss += WG[j / 2] * s;
            }
        }
        Ok(Panel {
            seg,
            t0,
            t1,
            value: kronrod * h,
            err: ((kronrod - gauss) * h).abs(),
        })
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // max-heap on error; ties broken by position for determinism
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then(other.seg.cmp(&self.seg))
            .then(other.t0.total_cmp(&self.t0))
    }
}
