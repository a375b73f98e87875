//! Cross-checks of the library against independent computations.

use std::f64::consts::{PI, TAU};

use minkowski::calculus::{finite_difference_hessian, jet_of_norm_squared};
use minkowski::conjecture::{sweep_vectors, test_conjecture, Verdict};
use minkowski::energy::{
    angle_distance, crit_condition_residual, find_critical_points, lagrange_residual_normalized, CriticalKind,
};
use minkowski::MinkowskiNorm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `E_X(y) = ¼ Xᵀ ∇²(F²) X` with the Hessian from central differences only.
fn fd_energy(norm: &MinkowskiNorm, x: [f64; 2], theta: f64) -> f64 {
    let y = [theta.cos(), theta.sin()];
    let h = finite_difference_hessian(norm, &y, 1e-4).unwrap();
    0.25 * (h[(0, 0)] * x[0] * x[0] + 2.0 * h[(0, 1)] * x[0] * x[1] + h[(1, 1)] * x[1] * x[1])
}

/// Minimizes `f` on `[a, b]` by golden-section search.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    while b - a > 1e-13 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

/// Zeros of the Lagrange residual on the circle, found as refined local
/// minima of its magnitude on a dense grid.
fn lagrange_roots(norm: &MinkowskiNorm, x: [f64; 2]) -> Vec<f64> {
    let metric = norm.as_mth_root().unwrap();
    let res = |t: f64| lagrange_residual_normalized(metric, &x, &[t.cos(), t.sin()]).unwrap();
    let n = 1 << 14;
    let dt = TAU / n as f64;
    let vals: Vec<f64> = (0..n).map(|k| res(k as f64 * dt)).collect();
    let mut roots = Vec::new();
    for k in 0..n {
        let (prev, cur, next) = (vals[(k + n - 1) % n], vals[k], vals[(k + 1) % n]);
        if cur <= prev && cur < next {
            let t = golden_min(res, (k as f64 - 1.0) * dt, (k as f64 + 1.0) * dt);
            if res(t) <= 1e-7 {
                roots.push(t.rem_euclid(TAU));
            }
        }
    }
    roots
}

#[test]
fn hessian_matches_finite_differences_at_500_points() {
    let f = MinkowskiNorm::paper_metric();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let t = rng.gen_range(0.0..TAU);
        let r = rng.gen_range(0.5..2.0);
        let y = [r * t.cos(), r * t.sin()];
        let jet = jet_of_norm_squared(&f, &y).unwrap();
        let fd = finite_difference_hessian(&f, &y, 1e-4).unwrap();
        worst = worst.max((jet.hess - fd).abs().max());
    }
    assert!(worst <= 1e-5, "max entry error {worst:e}");
}

#[test]
fn lagrange_roots_match_critical_points() {
    let f = MinkowskiNorm::paper_metric();
    for x in [[1.0, 3.0], [0.3, -1.1], [2.0, 0.5], [-1.0, 0.2]] {
        let roots = lagrange_roots(&f, x);
        let points = find_critical_points(&f, &x, 4096).unwrap();
        assert_eq!(roots.len(), points.len(), "X = {x:?}: roots {roots:?}");
        for p in &points {
            let matches = roots.iter().filter(|&&r| angle_distance(r, p.theta) <= 1e-6).count();
            assert_eq!(matches, 1, "X = {x:?}, point {p:?}, roots {roots:?}");
        }
    }
}

#[test]
fn critical_points_lie_on_the_factored_loci() {
    let f = MinkowskiNorm::paper_metric();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let phi = rng.gen_range(0.0..TAU);
        let x = [2.0 * phi.cos(), 2.0 * phi.sin()];
        let points = find_critical_points(&f, &x, 4096).unwrap();
        for p in &points {
            let u = [p.theta.cos(), p.theta.sin()];
            assert!(crit_condition_residual(x, u).abs() <= 1e-8, "X = {x:?}: {p:?}");
        }
        let loci = [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, phi];
        for locus in loci {
            for t in [locus, locus + PI] {
                assert!(
                    points.iter().any(|p| angle_distance(p.theta, t) <= 1e-6),
                    "X = {x:?}: locus {t} missing from {points:?}"
                );
            }
        }
        // the multiples of a generic X are horizontal inflections
        for t in [phi, phi + PI] {
            let p = points.iter().find(|p| angle_distance(p.theta, t) <= 1e-6).unwrap();
            assert_eq!(p.kind, CriticalKind::Inflection, "X = {x:?}: {p:?}");
        }
    }
}

#[test]
fn c_12_has_negative_determinant_somewhere() {
    // scan det(g) with the jet engine
    let f = MinkowskiNorm::quartic_family(12.0);
    let min_det = (0..4096)
        .map(|k| {
            let t = TAU * k as f64 / 4096.0;
            let h = jet_of_norm_squared(&f, &[t.cos(), t.sin()]).unwrap().hess * 0.5;
            h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(1, 0)]
        })
        .fold(f64::INFINITY, f64::min);
    assert!(min_det < -1.0, "{min_det}");
}

#[test]
fn c_2_1_refutes_in_all_eight_directions() {
    // brute-force minimum of the finite-difference energy over 20000 angles
    let f = MinkowskiNorm::quartic_family(2.1);
    let n = 20_000;
    let mut oracle_refuted = 0;
    for k in 0..8 {
        let phi = TAU * k as f64 / 8.0;
        let x = [phi.cos(), phi.sin()];
        let fx = f.eval(&x).unwrap();
        let min = (0..n).map(|j| fd_energy(&f, x, TAU * j as f64 / n as f64)).fold(f64::INFINITY, f64::min);
        if 0.5 * fx * fx - min > 1e-3 {
            oracle_refuted += 1;
        }
    }
    assert_eq!(oracle_refuted, 8);
    let sweep = sweep_vectors(&f, 8, 4096).unwrap();
    assert_eq!(sweep.refuted, 8);
    assert!(sweep.reports.iter().all(|r| r.margin > 6e-3));
}

#[test]
fn paper_metric_refutes_in_all_eight_directions() {
    let f = MinkowskiNorm::paper_metric();
    for k in 0..8 {
        let phi = TAU * k as f64 / 8.0;
        let x = [phi.cos(), phi.sin()];
        let fx = f.eval(&x).unwrap();
        let min = (0..4000).map(|j| fd_energy(&f, x, TAU * j as f64 / 4000.0)).fold(f64::INFINITY, f64::min);
        assert!(0.5 * fx * fx - min > 1e-2, "direction {k}");
    }
    assert_eq!(sweep_vectors(&f, 8, 4096).unwrap().refuted, 8);
}

#[test]
fn global_min_does_not_increase_under_refinement() {
    let f = MinkowskiNorm::paper_metric();
    for x in [[1.0, 0.0], [1.0, 3.0], [0.4, -0.9]] {
        let coarse = test_conjecture(&f, &x, 1024).unwrap();
        let fine = test_conjecture(&f, &x, 8192).unwrap();
        assert!(fine.global_min <= coarse.global_min + 1e-8);
    }
}

#[test]
fn verdict_is_scale_invariant() {
    let f = MinkowskiNorm::paper_metric();
    for x in [[1.0, 0.0], [1.0, 3.0], [-0.4, 0.9]] {
        let base = test_conjecture(&f, &x, 2048).unwrap();
        for lambda in [0.01, 0.5, 3.0, 40.0] {
            let r = test_conjecture(&f, &[lambda * x[0], lambda * x[1]], 2048).unwrap();
            assert_eq!(r.verdict, base.verdict);
            assert!(angle_distance(r.global_min_location.theta, base.global_min_location.theta) <= 1e-9);
            assert!((r.global_min - lambda * lambda * base.global_min).abs() <= 1e-10 * r.global_min);
            assert!((r.self_energy - lambda * lambda * base.self_energy).abs() <= 1e-12 * r.self_energy);
        }
    }
}

#[test]
fn global_min_never_exceeds_self_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..16 {
        let c = rng.gen_range(-1.5..12.0);
        let phi: f64 = rng.gen_range(0.0..TAU);
        let f = MinkowskiNorm::quartic_family(c);
        let r = test_conjecture(&f, &[phi.cos(), phi.sin()], 1024).unwrap();
        assert!(r.global_min <= r.self_energy + 1e-10, "c = {c}: {r:?}");
        assert_eq!(r.verdict == Verdict::Refuted, r.margin > 1e-8 * r.self_energy.max(1.0));
        if let Some(cert) = &r.certificate {
            assert!(cert.verify().unwrap().is_valid(), "c = {c}");
        }
    }
}
