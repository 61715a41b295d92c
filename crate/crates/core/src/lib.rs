//! Generalized trigonometric functions `sin_p` and the asymptotics of
//! `q^(1/p) ∫_0^∞ |sinc_p x|^q dx`.
//!
//! ```
//! use pball_core::{ball_integral, limit_value, PExponent};
//!
//! let p = PExponent::new(2.0)?;
//! let i = ball_integral(&p, 1e4, 1e-9)?;
//! assert!((i.value - limit_value(&p)).abs() < 3e-3);
//! # Ok::<(), pball_core::Error>(())
//! ```

pub mod ball;
pub mod error;
pub mod ptrig;
pub mod quad;
pub mod series;
pub mod special;

pub use ball::{ball_integral, limit_value, phi, phi_limit_check, BallIntegral, InequalityReport, Suite};
pub use error::{Error, Result};
pub use ptrig::PExponent;
pub use quad::{QuadResult, Tolerance};
pub use series::{assemble_expansion, AsymptoticExpansion, PowerSeries};
