use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use proptest::prelude::*;

use qfht_core::bargmann::{
    bergman_inner, gamma_action, star_product, DiscQuadratureRule, SliceRegularSeries,
};
use qfht_core::hilbert::{analyze, build_rule, inner_product, synthesize, GaussLaguerreRule};
use qfht_core::kernel::{r_closed, r_series, KernelConfig};
use qfht_core::specfun::laguerre;
use qfht_core::transform::frht_spectral;
use qfht_core::{CoeffVector, ImaginaryUnit, Quaternion};

fn comp() -> impl Strategy<Value = f64> {
    -3.0..3.0
}

fn quat() -> impl Strategy<Value = Quaternion> {
    (comp(), comp(), comp(), comp()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    (comp(), comp(), comp())
        .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-2)
        .prop_map(|(x, y, z)| ImaginaryUnit::new([x, y, z]).unwrap())
}

/// Quaternion of norm at most `r`.
fn ball(r: f64) -> impl Strategy<Value = Quaternion> {
    (quat(), 0.0..r).prop_filter("nonzero", |(q, _)| q.norm() > 1e-3).prop_map(|(q, s)| q * (s / q.norm()))
}

fn unit_quat() -> impl Strategy<Value = Quaternion> {
    quat().prop_filter("nonzero", |q| q.norm() > 1e-2).prop_map(|q| q / q.norm())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = CoeffVector> {
    prop::collection::vec(quat(), 1..=max_len).prop_map(CoeffVector::new)
}

fn series(len: usize) -> impl Strategy<Value = SliceRegularSeries> {
    prop::collection::vec(quat(), len).prop_map(SliceRegularSeries::new)
}

fn rule64() -> Arc<GaussLaguerreRule> {
    static R: OnceLock<Arc<GaussLaguerreRule>> = OnceLock::new();
    R.get_or_init(|| Arc::new(build_rule(1.5, 64).unwrap())).clone()
}

fn disc() -> &'static DiscQuadratureRule {
    static D: OnceLock<DiscQuadratureRule> = OnceLock::new();
    D.get_or_init(|| DiscQuadratureRule::with_defaults(1.5).unwrap())
}

proptest! {
    #[test]
    fn product_norm_is_multiplicative(a in quat(), b in quat()) {
        let lhs = (a * b).norm();
        prop_assert!((lhs - a.norm() * b.norm()).abs() <= 1e-13 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn inverse_is_two_sided(q in quat()) {
        prop_assume!(q.norm() > 1e-3);
        let inv = q.inverse().unwrap();
        prop_assert!((q * inv - Quaternion::ONE).norm() < 1e-13);
        prop_assert!((inv * q - Quaternion::ONE).norm() < 1e-13);
    }

    #[test]
    fn polar_power_matches_repeated_product(q in ball(1.3), n in 0u32..=32) {
        let mut rep = Quaternion::ONE;
        for _ in 0..n {
            rep *= q;
        }
        prop_assert!((q.powi(n) - rep).norm() <= 1e-11 * (1.0 + rep.norm()));
    }

    #[test]
    fn one_slice_commutes(u in unit(), a in (comp(), comp()), b in (comp(), comp())) {
        let p = u.embed(Complex64::new(a.0, a.1));
        let q = u.embed(Complex64::new(b.0, b.1));
        prop_assert!((p * q - q * p).norm() < 1e-13 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn slice_form_reconstructs(q in quat()) {
        let f = q.slice_form();
        prop_assert!((0.0..=std::f64::consts::PI).contains(&f.angle));
        prop_assert!((f.reconstruct() - q).norm() < 1e-14 * (1.0 + q.norm()));
    }

    #[test]
    fn laguerre_recurrence_restarts_consistently(
        n in 2usize..=40,
        alpha in prop::sample::select(vec![0.5, 1.0, 2.5]),
        x in 0.0..50.0f64,
    ) {
        // (n+1)L_{n+1} = (2n+1+α−x)L_n − (n+α)L_{n−1}, each value from a fresh recurrence
        let lhs = (n as f64 + 1.0) * laguerre(n + 1, alpha, x);
        let rhs = (2.0 * n as f64 + 1.0 + alpha - x) * laguerre(n, alpha, x)
            - (n as f64 + alpha) * laguerre(n - 1, alpha, x);
        let scale = lhs.abs().max((n as f64 + alpha) * laguerre(n - 1, alpha, x).abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
    }

    #[test]
    fn laguerre_generating_function(x in 0.0..10.0f64, z in -0.5..0.5f64, alpha in 0.5..3.0f64) {
        let sum: f64 = (0..200).map(|n| laguerre(n, alpha, x) * z.powi(n as i32)).sum();
        let closed = (1.0 - z).powf(-alpha - 1.0) * (x * z / (z - 1.0)).exp();
        prop_assert!((sum - closed).abs() < 1e-9 * closed.abs().max(1.0));
    }

    #[test]
    fn analyze_inverts_synthesize(c in coeffs(21)) {
        let r = rule64();
        let back = analyze(&synthesize(&c, &r), c.len() - 1).unwrap();
        prop_assert!(back.max_diff(&c) < 1e-11);
    }

    #[test]
    fn parseval_on_synthesised_signals(c in coeffs(21), d in coeffs(21)) {
        let r = rule64();
        let f = synthesize(&c, &r);
        let g = synthesize(&d, &r);
        let lhs = inner_product(&f, &g).unwrap();
        prop_assert!((lhs - c.inner(&d)).norm() < 1e-10);
    }

    #[test]
    fn series_matches_closed_form_off_axis(
        t in ball(0.9),
        alpha in prop::sample::select(vec![0.5, 1.0, 2.0, 3.5]),
        x in prop::sample::select(vec![0.1, 1.0, 5.0, 10.0]),
        y in prop::sample::select(vec![0.1, 1.0, 5.0, 10.0]),
    ) {
        let cfg = KernelConfig::new(alpha).unwrap();
        let s = r_series(t, x, y, &cfg).unwrap();
        let c = r_closed(t, alpha, x, y).unwrap();
        prop_assert!((s - c).norm() < 1e-9 * c.norm());
    }

    #[test]
    fn kernel_stays_in_the_slice(t in ball(1.0), x in 0.05..20.0f64, y in 0.05..20.0f64) {
        prop_assume!((t - Quaternion::ONE).norm() > 1e-3);
        let v = r_closed(t, 1.5, x, y).unwrap();
        let unit = ImaginaryUnit::of(&t);
        let inside = unit.embed(unit.project(&v));
        prop_assert!((v - inside).norm() <= 1e-13 * v.norm().max(1.0));
    }

    #[test]
    fn conjugate_parameter_conjugates_kernel(t in ball(0.95), x in 0.05..10.0f64, y in 0.05..10.0f64) {
        let a = r_closed(t.conj(), 2.0, x, y).unwrap();
        let b = r_closed(t, 2.0, x, y).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn same_slice_semigroup(u in unit(), a in ball(1.0), b in ball(1.0), c in coeffs(30)) {
        let t = u.embed(Complex64::new(a.w, a.vector_norm()));
        let e = u.embed(Complex64::new(b.w, -b.vector_norm()));
        let seq = frht_spectral(&frht_spectral(&c, e), t);
        let joint = frht_spectral(&c, t * e);
        prop_assert!(seq.max_diff(&joint) < 1e-12 * (1.0 + c.norm()));
    }

    #[test]
    fn transform_never_expands(t in ball(1.0), c in coeffs(30)) {
        prop_assert!(frht_spectral(&c, t).norm() <= c.norm() + 1e-12);
    }

    #[test]
    fn unit_parameter_preserves_norm(t in unit_quat(), c in coeffs(30)) {
        prop_assert!((frht_spectral(&c, t).norm() - c.norm()).abs() < 1e-12 * (1.0 + c.norm()));
    }

    #[test]
    fn star_product_is_associative(a in series(5), b in series(5), c in series(5)) {
        let l = star_product(&star_product(&a, &b), &c);
        let r = star_product(&a, &star_product(&b, &c));
        for (x, y) in l.coeffs.iter().zip(&r.coeffs) {
            prop_assert!((*x - *y).norm() < 1e-13 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn rotation_preserves_bergman_norm(t in unit_quat(), f in series(12), u in unit()) {
        let g = gamma_action(&f, t).unwrap();
        prop_assert!((g.norm(1.5) - f.norm(1.5)).abs() < 1e-10 * (1.0 + f.norm(1.5)));
        let a = bergman_inner(&g, &g, disc(), u).unwrap();
        prop_assert!((a.w.sqrt() - f.norm(1.5)).abs() < 1e-10 * (1.0 + f.norm(1.5)));
    }

    #[test]
    fn rotation_preserves_pairing_inside_its_slice(
        t in unit_quat(),
        a in prop::collection::vec((comp(), comp()), 12),
        b in prop::collection::vec((comp(), comp()), 12),
    ) {
        let u = ImaginaryUnit::of(&t);
        let f = SliceRegularSeries::new(a.iter().map(|&(x, y)| u.embed(Complex64::new(x, y))).collect());
        let g = SliceRegularSeries::new(b.iter().map(|&(x, y)| u.embed(Complex64::new(x, y))).collect());
        let before = bergman_inner(&f, &g, disc(), u).unwrap();
        let after = bergman_inner(&gamma_action(&f, t).unwrap(), &gamma_action(&g, t).unwrap(), disc(), u).unwrap();
        prop_assert!((before - after).norm() < 1e-10 * (1.0 + before.norm()));
    }
}
