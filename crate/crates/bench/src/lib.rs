//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use qfht_core::hilbert::{build_rule, GaussLaguerreRule};
use qfht_core::{CoeffVector, Quaternion, RadialSignal};

pub const ALPHA: f64 = 1.5;

/// Rule sizes swept by the size-dependent benchmarks.
pub const SIZES: [usize; 3] = [32, 128, 512];

pub fn rule(m: usize) -> Arc<GaussLaguerreRule> {
    Arc::new(build_rule(ALPHA, m).expect("benchmark rule sizes are valid"))
}

/// Smooth, decaying signal with all four components populated.
pub fn signal(rule: Arc<GaussLaguerreRule>) -> RadialSignal {
    RadialSignal::from_fn(rule, |x| {
        let e = (-0.5 * x).exp();
        Quaternion::new(e, x * e, 0.5 * (1.0 - x) * e, (0.3 * x).sin() * e)
    })
}

/// Coefficients with slowly decaying, non-commuting entries.
pub fn coeffs(len: usize) -> CoeffVector {
    CoeffVector::new(
        (0..len)
            .map(|n| Quaternion::new(1.0, -0.5, 0.25, n as f64 / len as f64) / (1.0 + n as f64))
            .collect(),
    )
}

/// Parameter off the real axis with `|θ| < 1`.
pub fn theta() -> Quaternion {
    Quaternion::new(0.3, -0.2, 0.5, 0.1)
}
