//! Generalized p-trigonometric functions.
//!
//! `sin_p` is the inverse of `F_p(y) = ∫₀^y (1 - t^p)^(-1/p) dt` on
//! `[0, π_p/2]`, extended to the real line as an odd, `2π_p`-periodic function
//! symmetric about `π_p/2`. `F_p` itself is evaluated through the incomplete
//! Beta function, `F_p(y) = (1/p) B(y^p; 1/p, 1 - 1/p)`, which has no endpoint
//! singularity to fight.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::special::beta_cf;

/// Below this |x| `sinc_p` switches to its two-term Maclaurin polynomial.
pub const SINC_SERIES_CUTOFF: f64 = 1e-4;

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 100;

/// `π_p = 2π / (p sin(π/p))`.
pub fn pi_p(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(2.0 * PI / (p * (PI / p).sin()))
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(domain(format!("p must be a finite real > 1, got {p}")))
    }
}

/// A validated exponent `p ∈ (1, ∞)` together with the constants every
/// p-trigonometric evaluation needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PExponent {
    p: f64,
    pi_p: f64,
    beta_const: f64,
    /// `1 - 1/p`
    conj: f64,
    /// `arcsin_p((1/2)^(1/p))`: the point where `sin_p^p = cos_p^p = 1/2`.
    split_x: f64,
    sinc_a1: f64,
    sinc_a2: f64,
}

/// Position of an angle after folding into the fundamental quarter period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAngle {
    /// 0..=3, the quarter of `[0, 2π_p)` the folded |x| falls in.
    pub quadrant: u8,
    /// Offset in `[0, π_p/2]` at which the first-quadrant functions are evaluated.
    pub offset: f64,
    /// Whether the original argument was negative.
    pub negative: bool,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        check_p(p)?;
        let beta_const = PI / (PI / p).sin();
        let mut pe = PExponent {
            p,
            pi_p: 2.0 * beta_const / p,
            beta_const,
            conj: 1.0 - 1.0 / p,
            split_x: 0.0,
            sinc_a1: -1.0 / (p * (p + 1.0)),
            sinc_a2: (-p * p + 2.0 * p + 1.0) / (2.0 * p * p * (p + 1.0) * (2.0 * p + 1.0)),
        };
        pe.split_x = pe.arcsin_p(0.5f64.powf(1.0 / p))?;
        Ok(pe)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn pi_p(&self) -> f64 {
        self.pi_p
    }

    pub fn half_pi_p(&self) -> f64 {
        0.5 * self.pi_p
    }

    /// `B(1/p, 1 - 1/p) = π / sin(π/p)`.
    pub fn beta_const(&self) -> f64 {
        self.beta_const
    }

    /// `F_p(y)` on `[0, 1]`.
    pub fn arcsin_p(&self, y: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&y) {
            return Err(domain(format!("arcsin_p needs y in [0, 1], got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if y == 1.0 {
            return Ok(self.half_pi_p());
        }
        let lu = self.p * y.ln();
        self.arcsin_from_parts(y, lu.exp(), -lu.exp_m1())
    }

    /// Odd extension of [`arcsin_p`](Self::arcsin_p) to `[-1, 1]`.
    pub fn arcsin_p_signed(&self, y: f64) -> Result<f64> {
        if y < 0.0 {
            Ok(-self.arcsin_p(-y)?)
        } else {
            self.arcsin_p(y)
        }
    }

    /// `F_p(y)` given `u = y^p` and `w = 1 - y^p` (both passed in so they
    /// can be formed without cancellation).
    fn arcsin_from_parts(&self, y: f64, u: f64, w: f64) -> Result<f64> {
        let a = 1.0 / self.p;
        let b = self.conj;
        let front = y * w.powf(b);
        if u < (a + 1.0) / 3.0 {
            Ok(front * beta_cf(u, a, b)?)
        } else {
            Ok(self.half_pi_p() - front * beta_cf(w, b, a)? / (self.p - 1.0))
        }
    }

    /// `π_p/2 - F_p(y)` as a function of `w = 1 - y^p`, with `v = w^(1 - 1/p)`
    /// passed alongside; for `p` near 1, `w` can underflow while `v` does not.
    fn complement_from_w(&self, w: f64, v: f64) -> Result<(f64, f64)> {
        let a = 1.0 / self.p;
        let b = self.conj;
        let y = ((-w).ln_1p() * a).exp();
        let front = y * v;
        let h = if w < (b + 1.0) / 3.0 {
            front * beta_cf(w, b, a)? / (self.p - 1.0)
        } else {
            self.half_pi_p() - front * beta_cf(1.0 - w, a, b)?
        };
        Ok((h, y))
    }

    /// Folds `x` into the first quadrant.
    pub fn reduce(&self, x: f64) -> ReducedAngle {
        let negative = x < 0.0;
        let r = x.abs() % (2.0 * self.pi_p);
        let h = self.half_pi_p();
        let (quadrant, offset) = if r <= h {
            (0, r)
        } else if r <= self.pi_p {
            (1, self.pi_p - r)
        } else if r <= 3.0 * h {
            (2, r - self.pi_p)
        } else {
            (3, 2.0 * self.pi_p - r)
        };
        ReducedAngle {
            quadrant,
            offset,
            negative,
        }
    }

    /// `(sin_p x, cos_p x)`, surfacing an inverter failure as an error.
    pub fn try_sin_cos_p(&self, x: f64) -> Result<(f64, f64)> {
        if !x.is_finite() {
            return Err(domain(format!("sin_p needs a finite argument, got {x}")));
        }
        let r = self.reduce(x);
        let (s, c) = self.first_quadrant(r.offset)?;
        let (s, c) = match r.quadrant {
            0 => (s, c),
            1 => (s, -c),
            2 => (-s, -c),
            _ => (-s, c),
        };
        Ok(if r.negative { (-s, c) } else { (s, c) })
    }

    /// `(sin_p x, cos_p x)`. NaN for non-finite `x`.
    ///
    /// # Panics
    /// If the safeguarded Newton inverter fails to converge, which would be a
    /// defect in this crate rather than a property of the input.
    pub fn sin_cos_p(&self, x: f64) -> (f64, f64) {
        if !x.is_finite() {
            return (f64::NAN, f64::NAN);
        }
        match self.try_sin_cos_p(x) {
            Ok(v) => v,
            Err(e) => panic!("sin_p inverter failed at p = {}, x = {x}: {e}", self.p),
        }
    }

    pub fn sin_p(&self, x: f64) -> f64 {
        self.sin_cos_p(x).0
    }

    /// Derivative of `sin_p`; `(1 - sin_p^p)^(1/p)` on the first quadrant.
    pub fn cos_p(&self, x: f64) -> f64 {
        self.sin_cos_p(x).1
    }

    pub fn tan_p(&self, x: f64) -> Result<f64> {
        let (s, c) = self.try_sin_cos_p(x)?;
        if c == 0.0 {
            return Err(Error::Pole { x });
        }
        Ok(s / c)
    }

    /// `sin_p x / x`, with the removable singularity filled in.
    pub fn sinc_p(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax == 0.0 {
            1.0
        } else if ax < SINC_SERIES_CUTOFF {
            let w = ax.powf(self.p);
            1.0 + w * (self.sinc_a1 + w * self.sinc_a2)
        } else {
            self.sin_p(x) / x
        }
    }

    /// `1 - sinc_p x`, accurate in relative terms even where `sinc_p x`
    /// rounds to 1.
    pub fn sinc_deficit(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax == 0.0 {
            return 0.0;
        }
        if ax <= self.split_x {
            let s = self.arcsin_excess(self.sin_p(ax));
            s / (1.0 + s)
        } else {
            1.0 - self.sin_p(ax) / ax
        }
    }

    /// `ln |sinc_p x|`; `-∞` at the roots.
    pub fn ln_abs_sinc_p(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax == 0.0 {
            return 0.0;
        }
        if ax <= self.split_x {
            -self.arcsin_excess(self.sin_p(ax)).ln_1p()
        } else {
            (self.sin_p(ax).abs() / ax).ln()
        }
    }

    /// `F_p(y)/y - 1 = Σ_{k≥1} C_k y^(pk) / (pk + 1)`, summed term by term.
    /// All terms are positive; valid for `y^p ≤ 1/2`.
    pub(crate) fn arcsin_excess(&self, y: f64) -> f64 {
        let u = y.powf(self.p);
        let inv_p = 1.0 / self.p;
        let mut binom = 1.0;
        let mut uk = 1.0;
        let mut sum = 0.0;
        for k in 1..400 {
            let kf = k as f64;
            binom *= (inv_p + kf - 1.0) / kf;
            uk *= u;
            let term = binom * uk / (self.p * kf + 1.0);
            sum += term;
            if term <= 1e-17 * sum {
                break;
            }
        }
        sum
    }

    /// `arcsin_p((1/2)^(1/p))`, where the inverter switches variables.
    pub fn split_point(&self) -> f64 {
        self.split_x
    }

    fn first_quadrant(&self, t: f64) -> Result<(f64, f64)> {
        if t <= 0.0 {
            return Ok((0.0, 1.0));
        }
        let d = self.half_pi_p() - t;
        if d <= 0.0 {
            return Ok((1.0, 0.0));
        }
        if t <= self.split_x {
            self.invert_low(t)
        } else {
            self.invert_high(d)
        }
    }

    /// Solves `F_p(y) = x` for `y^p ≤ 1/2` by Newton's method with a
    /// maintained bracket; `F_p' = (1 - y^p)^(-1/p)` stays in `[1, 2^(1/p)]`.
    fn invert_low(&self, x: f64) -> Result<(f64, f64)> {
        let p = self.p;
        let r = x / self.pi_p;
        let mut y = (2.0 * r + r * r).min(1.0 - 1e-16);
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut residual = f64::NAN;
        for _ in 0..NEWTON_MAX_ITER {
            let lu = p * y.ln();
            let w = -lu.exp_m1();
            residual = self.arcsin_from_parts(y, lu.exp(), w)? - x;
            if residual == 0.0 {
                return Ok((y, w.powf(1.0 / p)));
            }
            if residual > 0.0 {
                hi = y;
            } else {
                lo = y;
            }
            let mut next = y - residual * w.powf(1.0 / p);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let step = (next - y).abs();
            y = next;
            if step <= NEWTON_TOL * y || hi - lo <= f64::EPSILON * hi {
                let w = -(p * y.ln()).exp_m1();
                return Ok((y, w.powf(1.0 / p)));
            }
        }
        Err(Error::Convergence {
            what: "sin_p inverter (lower branch)",
            iterations: NEWTON_MAX_ITER,
            residual,
        })
    }

    /// Solves `π_p/2 - F_p(y) = d` for `cos_p^p = 1 - y^p < 1/2`, in the
    /// variable `v = (1 - y^p)^(1 - 1/p)`, in which the complement is close to
    /// linear (`dH/dv = y^(1-p) / (p - 1)`). Keeps `cos_p` accurate near `π_p/2`.
    fn invert_high(&self, d: f64) -> Result<(f64, f64)> {
        let p = self.p;
        let inv_conj = 1.0 / self.conj;
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut v = ((p - 1.0) * d).min(0.5);
        let mut residual = f64::NAN;
        for _ in 0..NEWTON_MAX_ITER {
            let w = v.powf(inv_conj);
            let (h, y) = self.complement_from_w(w, v)?;
            residual = h - d;
            if residual == 0.0 {
                return Ok((y, v.powf(1.0 / (p - 1.0))));
            }
            if residual > 0.0 {
                hi = v;
            } else {
                lo = v;
            }
            let mut next = v - residual * (p - 1.0) * y.powf(p - 1.0);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let step = (next - v).abs();
            v = next;
            if step <= NEWTON_TOL * v || hi - lo <= f64::EPSILON * hi {
                let w = v.powf(inv_conj);
                let y = ((-w).ln_1p() / p).exp();
                return Ok((y, v.powf(1.0 / (p - 1.0))));
            }
        }
        Err(Error::Convergence {
            what: "sin_p inverter (upper branch)",
            iterations: NEWTON_MAX_ITER,
            residual,
        })
    }
}
