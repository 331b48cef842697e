//! Property suite behind `qfht verify` and the acceptance tests.
//!
//! Each check returns a [`PropertyReport`] with the largest deviation seen and
//! the tolerance it is held to. Randomised checks draw from a ChaCha stream
//! seeded per check, so reports are reproducible for a given seed.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bargmann::{
    bargmann_forward, bargmann_inverse, bergman_inner, frht_via_bargmann, DiscQuadratureRule,
    SliceRegularSeries,
};
use crate::error::Result;
use crate::hilbert::{build_rule, inner_product, phi_all_scaled, synthesize, CoeffVector, RadialSignal};
use crate::kernel::{r_closed, r_series, KernelConfig};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::transform::{
    frht_inverse, frht_spectral, hankel_grid, hankel_reference, verify_plancherel,
    FrhtOperator, HANKEL_STEP,
};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_VAR: &str = "QFHT_SEED";

/// Seed from `QFHT_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> std::result::Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{SEED_VAR}={s:?} is not an unsigned integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Measured quantities that are reported but not held to a tolerance.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<(String, f64)>,
}

impl PropertyReport {
    fn new(property: &str, max_deviation: f64, tolerance: f64) -> Self {
        PropertyReport {
            property: property.to_string(),
            max_deviation,
            tolerance,
            pass: max_deviation.is_finite() && max_deviation < tolerance,
            notes: Vec::new(),
        }
    }

    fn note(mut self, name: &str, value: f64) -> Self {
        self.notes.push((name.to_string(), value));
        self
    }

    /// Forces failure when a side condition is not met.
    fn require(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }

    fn failed(property: &str, tolerance: f64, err: crate::Error) -> Self {
        PropertyReport {
            property: property.to_string(),
            max_deviation: f64::INFINITY,
            tolerance,
            pass: false,
            notes: vec![(format!("error: {err}"), f64::NAN)],
        }
    }
}

pub const ORTHONORMALITY: &str = "orthonormality";
pub const EIGEN_RELATION: &str = "eigen_relation_quadrature";
pub const HILLE_HARDY: &str = "series_closed_form_equivalence";
pub const PLANCHEREL: &str = "plancherel_unit_parameter";
pub const INVERSION: &str = "inversion";
pub const SEMIGROUP: &str = "same_slice_semigroup";
pub const FOURIER_BESSEL: &str = "fourier_bessel_limit";
pub const BARGMANN_ISOMETRY: &str = "bargmann_isometry_round_trip";
pub const SLICE_INDEPENDENCE: &str = "bergman_slice_independence";
pub const THREE_PATHS: &str = "three_path_consistency";
pub const CONTRACTION: &str = "contraction";
pub const CONTINUITY: &str = "continuity_in_parameter";

/// Rule size for the kernel-quadrature eigen-relation check. Unit parameters
/// off the real axis need more nodes than the default 128 to resolve the
/// oscillating kernel.
pub const EIGEN_RULE_SIZE: usize = 256;

pub struct Suite {
    seed: u64,
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite { seed }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    pub fn run_all(&self) -> Vec<PropertyReport> {
        vec![
            self.orthonormality(),
            self.eigen_relation(),
            self.hille_hardy(),
            self.plancherel(),
            self.inversion(),
            self.semigroup(),
            self.fourier_bessel(),
            self.bargmann_isometry(),
            self.slice_independence(),
            self.three_paths(),
            self.contraction(),
            self.continuity(),
        ]
    }

    /// `max |⟨φ_n, φ_m⟩ − δ_nm|`, `n, m ≤ 30`, `M = 128`.
    pub fn orthonormality(&self) -> PropertyReport {
        let tol = 1e-10;
        let run = || -> Result<f64> {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0, 2.5] {
                let rule = build_rule(alpha, 128)?;
                let rows: Vec<Vec<f64>> = rule
                    .nodes()
                    .iter()
                    .zip(rule.log_weights())
                    .map(|(&x, &lw)| phi_all_scaled(31, alpha, x, 0.5 * lw))
                    .collect();
                for n in 0..=30 {
                    for m in 0..=30 {
                        let g: f64 = rows.iter().map(|r| r[n] * r[m]).sum();
                        let d = if n == m { 1.0 } else { 0.0 };
                        worst = worst.max((g - d).abs());
                    }
                }
            }
            Ok(worst)
        };
        report(ORTHONORMALITY, tol, run())
    }

    /// `‖𝓛_θ φ_n − φ_n θⁿ‖ / ‖φ_n‖` by kernel quadrature, `n ≤ 15`.
    pub fn eigen_relation(&self) -> PropertyReport {
        let tol = 1e-8;
        let thetas = [
            Quaternion::real(0.5),
            Quaternion::new((PI / 3.0).cos(), 0.0, (PI / 3.0).sin(), 0.0) * 0.9,
            (Quaternion::I + Quaternion::J) * FRAC_1_SQRT_2,
        ];
        let run = || -> Result<f64> {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0, 2.5] {
                let rule = Arc::new(build_rule(alpha, EIGEN_RULE_SIZE)?);
                let basis: Vec<RadialSignal> = (0..=15)
                    .map(|n| synthesize(&CoeffVector::basis(n, n + 1), &rule))
                    .collect();
                for &t in &thetas {
                    let kernel = FrhtOperator::new(t, rule.clone())?.quadrature_kernel()?;
                    for (n, f) in basis.iter().enumerate() {
                        let out = kernel.apply(f)?;
                        let expect = f.scale_right(t.powi(n as u32));
                        worst = worst.max(out.sub(&expect)?.norm() / f.norm());
                    }
                }
            }
            Ok(worst)
        };
        report(EIGEN_RELATION, tol, run())
    }

    /// `|r_series − r_closed| / |r_closed|` on the `α × x × y` grid.
    pub fn hille_hardy(&self) -> PropertyReport {
        let tol = 1e-9;
        let thetas = hille_hardy_parameters();
        let run = || -> Result<f64> {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0, 2.0, 3.5] {
                let cfg = KernelConfig::new(alpha)?;
                for &x in &[0.1, 1.0, 5.0, 10.0] {
                    for &y in &[0.1, 1.0, 5.0, 10.0] {
                        for &t in &thetas {
                            let s = r_series(t, x, y, &cfg)?;
                            let c = r_closed(t, alpha, x, y)?;
                            worst = worst.max((s - c).norm() / c.norm());
                        }
                    }
                }
            }
            Ok(worst)
        };
        report(HILLE_HARDY, tol, run())
    }

    /// `|‖𝓛f‖ − ‖f‖|` for random unit `θ`, plus the inner-product identity
    /// for coefficients inside the slice of `θ`.
    pub fn plancherel(&self) -> PropertyReport {
        let tol = 1e-12;
        let mut rng = self.rng(4);
        let mut run = || -> Result<(f64, f64)> {
            let rule = Arc::new(build_rule(1.0, 32)?);
            let (mut worst, mut cross) = (0.0_f64, 0.0_f64);
            for _ in 0..100 {
                let t = random_unit_quaternion(&mut rng);
                let op = FrhtOperator::new(t, rule.clone())?;
                let f = random_coeffs(&mut rng, 21);
                let g = random_coeffs(&mut rng, 21);
                worst = worst.max((op.apply_spectral(&f).norm() - f.norm()).abs());

                let unit = ImaginaryUnit::of(&t);
                let fs = confine(&f, unit);
                let gs = confine(&g, unit);
                worst = worst.max(verify_plancherel(&op, &fs, &gs)?);
                cross = cross.max(verify_plancherel(&op, &f, &g)?);
            }
            Ok((worst, cross))
        };
        match run() {
            Ok((w, cross)) => PropertyReport::new(PLANCHEREL, w, tol)
                .note("cross_slice_inner_product_deviation", cross),
            Err(e) => PropertyReport::failed(PLANCHEREL, tol, e),
        }
    }

    /// `𝓛_{1/θ} 𝓛_θ = id` on 21 coefficients for `|θ| ∈ {1, 0.5}`.
    pub fn inversion(&self) -> PropertyReport {
        let tol = 1e-10;
        let mut rng = self.rng(5);
        let mut run = || -> Result<f64> {
            let rule = Arc::new(build_rule(1.0, 32)?);
            let mut worst: f64 = 0.0;
            for _ in 0..50 {
                for modulus in [1.0, 0.5] {
                    let t = random_unit_quaternion(&mut rng) * modulus;
                    let op = FrhtOperator::new(t, rule.clone())?;
                    let inv = frht_inverse(&op)?;
                    let c = random_coeffs(&mut rng, 21);
                    worst = worst.max(inv.apply_spectral(&op.apply_spectral(&c)).max_diff(&c));
                }
            }
            Ok(worst)
        };
        report(INVERSION, tol, run())
    }

    /// `|(θη)ⁿ − θⁿηⁿ|` for `θ, η` in one slice; a cross-slice pair must differ.
    pub fn semigroup(&self) -> PropertyReport {
        let tol = 1e-12;
        let mut rng = self.rng(6);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let unit = ImaginaryUnit::of(&random_unit_quaternion(&mut rng));
            let t = unit.embed(random_disc_point(&mut rng));
            let e = unit.embed(random_disc_point(&mut rng));
            for n in 0..=40u32 {
                let d = (t.powi(n) * e.powi(n) - (t * e).powi(n)).norm();
                worst = worst.max(d);
            }
        }
        let c = CoeffVector::new(vec![Quaternion::ONE; 4]);
        let (a, b) = (Quaternion::I * 0.5, Quaternion::J * 0.5);
        let witness = frht_spectral(&frht_spectral(&c, b), a).max_diff(&frht_spectral(&c, a * b));
        PropertyReport::new(SEMIGROUP, worst, tol)
            .note("cross_slice_witness_deviation", witness)
            .require(witness > 1e-3)
    }

    /// `𝓛_{−1}φ(y²) = e^{y²/2} y^{−α} (H_α ψ)(y)`, `ψ(u) = u^α e^{−u²/2} φ(u²)`.
    pub fn fourier_bessel(&self) -> PropertyReport {
        let tol = 2e-6;
        let run = || -> Result<f64> {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0, 2.5] {
                let rule = Arc::new(build_rule(alpha, 128)?);
                let op = FrhtOperator::new(Quaternion::real(-1.0), rule.clone())?;
                let phi1 = |x: f64| crate::hilbert::phi(1, alpha, x);
                let tests: [&dyn Fn(f64) -> f64; 2] = [&|x: f64| (-x / 2.0).exp(), &phi1];
                for g in tests {
                    let f = RadialSignal::from_fn(rule.clone(), |x| Quaternion::real(g(x)));
                    let psi = hankel_grid(|u| u.powf(alpha) * (-u * u / 2.0).exp() * g(u * u));
                    for k in 0..=29 {
                        let y = 0.1 + 2.9 * k as f64 / 29.0;
                        let lhs = op.eval_at(&f, y * y)?;
                        let h = hankel_reference(&psi, HANKEL_STEP, alpha, y)?;
                        let rhs = (y * y / 2.0).exp() * y.powf(-alpha) * h;
                        worst = worst.max((lhs - Quaternion::real(rhs)).norm());
                    }
                }
            }
            Ok(worst)
        };
        report(FOURIER_BESSEL, tol, run())
    }

    /// Bergman isometry and `𝒜⁻¹𝒜 = id` on `span{φ_0..φ_10}`.
    pub fn bargmann_isometry(&self) -> PropertyReport {
        let iso_tol = 1e-7;
        let trip_tol = 1e-6;
        let mut rng = self.rng(8);
        let mut run = || -> Result<(f64, f64)> {
            let (mut iso, mut trip) = (0.0_f64, 0.0_f64);
            for alpha in [0.5, 1.0, 2.5] {
                let rule = Arc::new(build_rule(alpha, 128)?);
                let disc = DiscQuadratureRule::with_defaults(alpha)?;
                for _ in 0..5 {
                    let unit = ImaginaryUnit::of(&random_unit_quaternion(&mut rng));
                    let f = synthesize(&random_coeffs(&mut rng, 11), &rule);
                    let g = synthesize(&random_coeffs(&mut rng, 11), &rule);
                    let af = bargmann_forward(&f, 10)?;
                    let ag = bargmann_forward(&g, 10)?;
                    let lhs = bergman_inner(&af, &ag, &disc, unit)?;
                    iso = iso.max((lhs - inner_product(&f, &g)?).norm());
                    let back = bargmann_inverse(&af, &rule, &disc, unit)?;
                    trip = trip.max(back.sub(&f)?.norm());
                }
            }
            Ok((iso, trip))
        };
        match run() {
            Ok((iso, trip)) => {
                // both parts share one line; report the worse ratio to tolerance
                let dev = (iso / iso_tol).max(trip / trip_tol) * iso_tol;
                PropertyReport::new(BARGMANN_ISOMETRY, dev, iso_tol)
                    .note("isometry_deviation", iso)
                    .note("round_trip_deviation", trip)
            }
            Err(e) => PropertyReport::failed(BARGMANN_ISOMETRY, iso_tol, e),
        }
    }

    /// `⟨f_n a, f_m b⟩_I` against `⟨f_n a, f_m b⟩_J` for two units, `n, m ≤ 10`.
    pub fn slice_independence(&self) -> PropertyReport {
        let tol = 1e-9;
        let mut rng = self.rng(9);
        let mut run = || -> Result<(f64, f64)> {
            let alpha = 1.5;
            let disc = DiscQuadratureRule::with_defaults(alpha)?;
            let units = [ImaginaryUnit::I, ImaginaryUnit::new([0.0, 1.0, 1.0])?];
            let (mut worst, mut ortho) = (0.0_f64, 0.0_f64);
            for n in 0..=10 {
                for m in 0..=10 {
                    let a = random_quaternion(&mut rng);
                    let b = random_quaternion(&mut rng);
                    let fa = scaled(&SliceRegularSeries::basis(n, alpha), a);
                    let fb = scaled(&SliceRegularSeries::basis(m, alpha), b);
                    let vi = bergman_inner(&fa, &fb, &disc, units[0])?;
                    let vj = bergman_inner(&fa, &fb, &disc, units[1])?;
                    worst = worst.max((vi - vj).norm());
                    for u in units {
                        let g = bergman_inner(
                            &SliceRegularSeries::basis(n, alpha),
                            &SliceRegularSeries::basis(m, alpha),
                            &disc,
                            u,
                        )?;
                        let d = if n == m { 1.0 } else { 0.0 };
                        ortho = ortho.max((g - Quaternion::real(d)).norm());
                    }
                }
            }
            Ok((worst, ortho))
        };
        match run() {
            Ok((w, ortho)) => PropertyReport::new(SLICE_INDEPENDENCE, w.max(ortho), tol)
                .note("unit_dependence", w)
                .note("monomial_orthonormality_deviation", ortho),
            Err(e) => PropertyReport::failed(SLICE_INDEPENDENCE, tol, e),
        }
    }

    /// Spectral, kernel-quadrature and Bargmann transforms pairwise.
    pub fn three_paths(&self) -> PropertyReport {
        let tol = 1e-6;
        let mut rng = self.rng(10);
        let thetas = [Quaternion::J * 0.5, (Quaternion::ONE + Quaternion::I) * (0.9 * FRAC_1_SQRT_2)];
        let mut run = || -> Result<f64> {
            let alpha = 1.0;
            let rule = Arc::new(build_rule(alpha, 128)?);
            let disc = DiscQuadratureRule::with_defaults(alpha)?;
            let mut worst: f64 = 0.0;
            for &t in &thetas {
                let op = FrhtOperator::new(t, rule.clone())?;
                let kernel = op.quadrature_kernel()?;
                for _ in 0..10 {
                    let c = random_coeffs(&mut rng, 10);
                    let f = synthesize(&c, &rule);
                    let spectral = synthesize(&frht_spectral(&c, t), &rule);
                    let quad = kernel.apply(&f)?;
                    let unit = ImaginaryUnit::of(&random_unit_quaternion(&mut rng));
                    let via = frht_via_bargmann(&f, t, 9, &disc, unit)?;
                    worst = worst
                        .max(spectral.sub(&quad)?.norm())
                        .max(spectral.sub(&via)?.norm())
                        .max(quad.sub(&via)?.norm());
                }
            }
            Ok(worst)
        };
        report(THREE_PATHS, tol, run())
    }

    /// `‖𝓛_θ f‖ ≤ ‖f‖ + 1e-12` for `|θ| ∈ {0.3, 0.9, 1}`.
    pub fn contraction(&self) -> PropertyReport {
        let tol = 1e-12;
        let mut rng = self.rng(11);
        let mut excess: f64 = 0.0;
        let mut loose_bound_ok = true;
        for modulus in [0.3_f64, 0.9, 1.0] {
            for _ in 0..100 {
                let t = random_unit_quaternion(&mut rng) * modulus;
                let c = random_coeffs(&mut rng, 21);
                let out = frht_spectral(&c, t).norm();
                excess = excess.max(out - c.norm());
                if modulus < 1.0 {
                    loose_bound_ok &= out <= c.norm() / (1.0 - modulus * modulus).sqrt();
                }
            }
        }
        PropertyReport::new(CONTRACTION, excess.max(0.0), tol).require(loose_bound_ok)
    }

    /// `‖𝓛_{θ(1−ε)}f − 𝓛_θ f‖` decreases like `ε`.
    pub fn continuity(&self) -> PropertyReport {
        let tol = 0.25;
        let mut rng = self.rng(12);
        let eps = [1e-2, 1e-4, 1e-6];
        let mut worst: f64 = 0.0;
        let mut monotone = true;
        for _ in 0..20 {
            let t = random_unit_quaternion(&mut rng);
            let c = random_coeffs(&mut rng, 21);
            let base = frht_spectral(&c, t);
            let d: Vec<f64> = eps
                .iter()
                .map(|e| distance(&frht_spectral(&c, t * (1.0 - e)), &base))
                .collect();
            monotone &= d.windows(2).all(|w| w[1] < w[0]);
            for k in 0..eps.len() - 1 {
                let ratio = (d[k] / eps[k]) / (d[k + 1] / eps[k + 1]);
                worst = worst.max((ratio - 1.0).abs());
            }
        }
        PropertyReport::new(CONTINUITY, worst, tol).require(monotone)
    }
}

fn report(name: &str, tol: f64, r: Result<f64>) -> PropertyReport {
    match r {
        Ok(d) => PropertyReport::new(name, d, tol),
        Err(e) => PropertyReport::failed(name, tol, e),
    }
}

fn distance(a: &CoeffVector, b: &CoeffVector) -> f64 {
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| (*x - *y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Parameters of norm at most 0.9, real and off-axis.
pub fn hille_hardy_parameters() -> Vec<Quaternion> {
    vec![
        Quaternion::ZERO,
        Quaternion::real(0.5),
        Quaternion::real(-0.9),
        Quaternion::J * 0.9,
        Quaternion::new(0.6, 0.3, 0.0, -0.4),
        Quaternion::new((PI / 3.0).cos(), 0.0, (PI / 3.0).sin(), 0.0) * 0.9,
        Quaternion::new(-0.5, 0.4, 0.4, 0.4),
    ]
}

fn scaled(f: &SliceRegularSeries, a: Quaternion) -> SliceRegularSeries {
    SliceRegularSeries::new(f.coeffs.iter().map(|&c| c * a).collect())
}

fn confine(c: &CoeffVector, unit: ImaginaryUnit) -> CoeffVector {
    CoeffVector::new(c.coeffs.iter().map(|q| unit.embed(unit.project(q))).collect())
}

pub fn random_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn random_unit_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let q = random_quaternion(rng);
        let n = q.norm();
        if n > 0.1 && n <= 1.0 {
            return q / n;
        }
    }
}

fn random_disc_point<R: Rng>(rng: &mut R) -> num_complex::Complex64 {
    num_complex::Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(-PI..PI))
}

pub fn random_coeffs<R: Rng>(rng: &mut R, len: usize) -> CoeffVector {
    CoeffVector::new((0..len).map(|_| random_quaternion(rng)).collect())
}
