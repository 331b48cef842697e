//! Quaternionic fractional Hankel transform on the weighted half-line space
//! `L^{2,α}(ℝ⁺, x^α e^{-x} dx)` and its realisation through the slice second
//! Bargmann transform.
//!
//! The crate is organised bottom-up:
//!
//! * [`quaternion`]: Hamilton algebra and the slice (complex-plane) calculus.
//! * [`specfun`]: log-gamma, Laguerre polynomials, modified Bessel functions.
//! * [`hilbert`]: Gauss–Laguerre rules, the weighted inner product and the
//!   orthonormal Laguerre basis.
//! * [`kernel`]: the fractional kernel as a Laguerre series and in closed form.
//! * [`transform`]: the transform via its spectral and kernel-quadrature paths.
//! * [`bargmann`]: the slice second Bargmann transform, Bergman pairing, the
//!   `Γ_θ` action and the composed transform.
//! * [`io`]: CSV/JSON file formats used by the command-line front end.
//! * [`verify`]: the property suite backing `qfht verify` and the acceptance tests.

pub mod bargmann;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod kernel;
pub mod quaternion;
pub mod specfun;
pub mod transform;
pub mod verify;

mod quadrature;

pub use error::{Error, Result};
pub use hilbert::{CoeffVector, GaussLaguerreRule, RadialSignal};
pub use quaternion::{ImaginaryUnit, Quaternion, SliceForm};
