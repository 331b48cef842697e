//! Gauss rules from three-term recurrences (Golub–Welsch).
//!
//! Nodes are eigenvalues of the Jacobi matrix, polished by Newton steps on the
//! orthonormal polynomial. Weights use the Christoffel form
//! `w_i = 1 / Σ_{k<M} p_k(x_i)²`, evaluated with a running log-scale so that
//! rules whose extreme weights underflow still report exact log-weights.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Monic recurrence `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}` with total mass `mu0`.
pub(crate) struct Recurrence {
    pub a: Vec<f64>,
    /// `b[k]` for `k ≥ 1`; `b[0]` is unused.
    pub b: Vec<f64>,
    pub mu0: f64,
}

pub(crate) struct GaussRule {
    pub nodes: Vec<f64>,
    pub log_weights: Vec<f64>,
}

const RESCALE: f64 = 1e100;

struct Eval {
    p: f64,
    dp: f64,
    /// ln Σ_{k<M} p_k²
    log_sum_sq: f64,
}

impl Recurrence {
    /// Orthonormal `p_M`, its derivative, and `ln Σ_{k<M} p_k²` at `x`, all
    /// sharing one scale factor that is folded into `log_sum_sq`.
    fn eval(&self, m: usize, x: f64) -> Eval {
        let mut prev = 0.0;
        let mut dprev = 0.0;
        let mut cur = 1.0 / self.mu0.sqrt();
        let mut dcur = 0.0;
        let mut sum = 0.0;
        let mut log_scale = 0.0;
        for k in 0..m {
            sum += cur * cur;
            let sb_next = self.b[k + 1].sqrt();
            let sb = if k == 0 { 0.0 } else { self.b[k].sqrt() };
            let next = ((x - self.a[k]) * cur - sb * prev) / sb_next;
            let dnext = (cur + (x - self.a[k]) * dcur - sb * dprev) / sb_next;
            prev = cur;
            dprev = dcur;
            cur = next;
            dcur = dnext;
            if cur.abs() > RESCALE || prev.abs() > RESCALE {
                let s = 1.0 / RESCALE;
                prev *= s;
                dprev *= s;
                cur *= s;
                dcur *= s;
                sum *= s * s;
                log_scale += RESCALE.ln();
            }
        }
        Eval {
            p: cur,
            dp: dcur,
            log_sum_sq: sum.ln() + 2.0 * log_scale,
        }
    }
}

/// `m`-point Gauss rule; the recurrence must provide `a[0..m]` and `b[1..=m]`.
pub(crate) fn gauss_rule(rec: &Recurrence, m: usize) -> Result<GaussRule> {
    assert!(rec.a.len() >= m && rec.b.len() > m);
    let jacobi = DMatrix::from_fn(m, m, |r, c| {
        if r == c {
            rec.a[r]
        } else if r + 1 == c {
            rec.b[c].sqrt()
        } else if c + 1 == r {
            rec.b[r].sqrt()
        } else {
            0.0
        }
    });
    let eig = nalgebra::SymmetricEigen::try_new(jacobi, f64::EPSILON, 100 * m.max(10))
        .ok_or_else(|| Error::Numerical(format!("Jacobi eigen-solve for {m} nodes did not converge")))?;
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    let mut log_weights = Vec::with_capacity(m);
    for x in nodes.iter_mut() {
        for _ in 0..4 {
            let e = rec.eval(m, *x);
            if e.dp == 0.0 {
                break;
            }
            let step = e.p / e.dp;
            // only accept refinement, never a jump to a neighbouring root
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
        log_weights.push(-rec.eval(m, *x).log_sum_sq);
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) || nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("Gauss nodes are not distinct".into()));
    }
    Ok(GaussRule { nodes, log_weights })
}
