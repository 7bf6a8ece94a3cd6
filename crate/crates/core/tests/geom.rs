//! Geometry operations against closed-form circle oracles.

use wrev_core::functionals::observables;
use wrev_core::geom::{
    covariant_derivative, curvature_vector, interpolated_segment_lengths,
    normal_and_scalar_curvature, normal_derivatives, read_snapshot, rescale_isometry, resample,
    write_snapshot, SpeedMode,
};
use wrev_core::stationary::circle_profile;
use wrev_core::{Curve, Error, Field, Point, Vec2};

fn hyp_norm(v: Vec2<f64>, y2: f64) -> f64 {
    v.norm() / y2
}

#[test]
fn covariant_derivative_hand_value_on_circle() {
    // circle center (0,1), r = 0.5; at x = 0 the node is (0.5, 1) with
    // ∂_xγ = (0, 0.5); the constant field (0,1) has ∇_x X = (0, −0.5) there
    let curve: Curve = circle_profile(1, 0.5, 256).unwrap();
    let field = Field::new(vec![Vec2::new(0.0, 1.0); 256]);
    let out = covariant_derivative(&curve, &field).unwrap();
    let v = out.value(0);
    assert!((v.x - 0.0).abs() < 1e-10, "x component {}", v.x);
    assert!((v.y + 0.5).abs() < 1e-4, "y component {}", v.y);
}

#[test]
fn covariant_derivative_of_zero_field_is_zero() {
    let curve: Curve = circle_profile(1, 0.5, 64).unwrap();
    let field = Field::zeros(64);
    let out = covariant_derivative(&curve, &field).unwrap();
    assert!(out.values().iter().all(|v| v.x == 0.0 && v.y == 0.0));
}

#[test]
fn covariant_derivative_rejects_length_mismatch() {
    let curve: Curve = circle_profile(1, 0.5, 64).unwrap();
    let field = Field::zeros(32);
    assert!(matches!(covariant_derivative(&curve, &field), Err(Error::Contract(_))));
}

#[test]
fn covariant_derivative_of_unit_tangent_on_clifford() {
    // constant hyperbolic speed Clifford profile: ∇_x of the unit tangent has
    // hyperbolic norm |κ⃗|_g = √2 (speed is 1); error falls off at O(N⁻²)
    let err = |n: usize| -> f64 {
        let curve = resample(
            &circle_profile(1, 0.5f64.sqrt(), n).unwrap(),
            SpeedMode::HyperbolicSpeed,
            n,
        )
        .unwrap();
        // unit hyperbolic tangent by the same central differences the operation uses
        let h = curve.param_step();
        let vals: Vec<Vec2<f64>> = (0..n)
            .map(|i| {
                let p = curve.node((i + 1) % n).to_vec();
                let m = curve.node((i + n - 1) % n).to_vec();
                let d = (p - m) * (0.5 / h);
                d * (curve.node(i).y2 / d.norm())
            })
            .collect();
        let out = covariant_derivative(&curve, &Field::new(vals)).unwrap();
        (0..n)
            .map(|i| (hyp_norm(out.value(i), curve.node(i).y2) - 2f64.sqrt()).abs())
            .fold(0.0, f64::max)
    };
    let (e256, e512) = (err(256), err(512));
    assert!(e512 < 2e-3, "error too large: {e512}");
    assert!(e512 * 3.0 < e256, "not second order: {e256} -> {e512}");
}

#[test]
fn curvature_magnitude_matches_circles() {
    for (r, expect) in [(0.5, 2.0), (0.5f64.sqrt(), 2f64.sqrt())] {
        let curve: Curve = circle_profile(1, r, 256).unwrap();
        let kappa = curvature_vector(&curve).unwrap();
        for i in 0..curve.len() {
            let k = hyp_norm(kappa.value(i), curve.node(i).y2);
            assert!((k - expect).abs() < 1e-5, "r={r} node {i}: {k}");
        }
    }
}

#[test]
fn curvature_error_richardson_order() {
    // doubling N reduces the max error in |κ⃗|_g by at least 3.6 (order ≥ 1.85)
    let err = |n: usize| -> f64 {
        let curve: Curve = circle_profile(1, 0.5, n).unwrap();
        let kappa = curvature_vector(&curve).unwrap();
        (0..n)
            .map(|i| (hyp_norm(kappa.value(i), curve.node(i).y2) - 2.0).abs())
            .fold(0.0, f64::max)
    };
    let (e128, e256, e512) = (err(128), err(256), err(512));
    assert!(e256 * 3.6 < e128, "order too low: {e128} -> {e256}");
    assert!(e512 * 3.6 < e256, "order too low: {e256} -> {e512}");
}

#[test]
fn scalar_curvature_sign_and_orientation() {
    let curve: Curve = circle_profile(1, 0.5, 128).unwrap();
    let (_, ks) = normal_and_scalar_curvature(&curve).unwrap();
    for (i, k) in ks.iter().enumerate() {
        assert!((k - 2.0).abs() < 1e-4, "node {i}: {k}");
    }
    let rev = curve.reversed();
    let (_, ks_rev) = normal_and_scalar_curvature(&rev).unwrap();
    for k in &ks_rev {
        assert!((k + 2.0).abs() < 1e-4, "reversed sign: {k}");
    }
}

#[test]
fn curvature_vector_is_scalar_times_normal() {
    // perturbed circle: the identity κ⃗ = κ n⃗ holds to roundoff by construction
    let n = 512;
    let base: Curve = circle_profile(1, 0.5, n).unwrap();
    let nodes: Vec<Point> = (0..n)
        .map(|i| {
            let x: f64 = base.param(i);
            let p = base.node(i);
            Point::new(p.y1 + 0.02 * (3.0 * x).cos(), p.y2 + 0.02 * (2.0 * x).sin())
        })
        .collect();
    let curve = Curve::new(nodes).unwrap();
    let kappa = curvature_vector(&curve).unwrap();
    let (normal, ks) = normal_and_scalar_curvature(&curve).unwrap();
    let kmax = ks.iter().fold(0.0f64, |a, k| a.max(k.abs()));
    for i in 0..n {
        let diff = kappa.value(i) - normal.value(i) * ks[i];
        assert!(hyp_norm(diff, curve.node(i).y2) <= 1e-10 * kmax);
    }
}

#[test]
fn normal_derivative_chain() {
    let curve: Curve = circle_profile(1, 0.5, 256).unwrap();
    // k = 0 is the curvature vector itself
    let k0 = normal_derivatives(&curve, 0).unwrap();
    let kap = curvature_vector(&curve).unwrap();
    for i in 0..curve.len() {
        assert!((k0.value(i) - kap.value(i)).norm() < 1e-14);
    }
    // constant curvature: first normal derivative vanishes to O(N⁻²)
    let k1 = normal_derivatives(&curve, 1).unwrap();
    for i in 0..curve.len() {
        assert!(hyp_norm(k1.value(i), curve.node(i).y2) < 1e-4);
    }
    // every order is pointwise normal in the discretization's own tangent
    let geo = wrev_core::geom::CurveGeometry::build(&curve).unwrap();
    for k in 0..=4 {
        let f = normal_derivatives(&curve, k).unwrap();
        for i in 0..curve.len() {
            let tang = f.value(i).dot(geo.t[i]) / geo.y2[i].powi(2);
            assert!(tang.abs() <= 1e-12 * (1.0 + f.value(i).norm()), "k={k} node {i}: {tang}");
        }
    }
    assert!(matches!(normal_derivatives(&curve, 5), Err(Error::Contract(_))));
}

#[test]
fn resample_fixed_point_on_uniform_circle() {
    let n = 256;
    let curve = resample(
        &circle_profile(1, 0.5, n).unwrap(),
        SpeedMode::HyperbolicSpeed,
        n,
    )
    .unwrap();
    let again = resample(&curve, SpeedMode::HyperbolicSpeed, n).unwrap();
    for i in 0..n {
        let d = (again.node(i).to_vec() - curve.node(i).to_vec()).norm();
        assert!(d <= 1e-8, "node {i} moved {d}");
    }
}

#[test]
fn resample_preserves_energy_and_length() {
    let n = 512;
    let base: Curve = circle_profile(1, 0.5, n).unwrap();
    let nodes: Vec<Point> = (0..n)
        .map(|i| {
            let x: f64 = base.param(i);
            let p = base.node(i);
            Point::new(p.y1 + 0.03 * (2.0 * x).sin(), p.y2 + 0.03 * (3.0 * x).cos())
        })
        .collect();
    let curve = Curve::new(nodes).unwrap();
    let before = observables(&curve).unwrap();
    let res = resample(&curve, SpeedMode::HyperbolicSpeed, n).unwrap();
    let after = observables(&res).unwrap();
    let de = ((after.elastic_energy - before.elastic_energy) / before.elastic_energy).abs();
    assert!(de < 1e-4, "energy changed by {de}");

    // the interpolated total length is what resampling preserves
    let l_in: f64 = interpolated_segment_lengths(&curve, SpeedMode::HyperbolicSpeed)
        .unwrap()
        .iter()
        .sum();
    let l_out: f64 = interpolated_segment_lengths(&res, SpeedMode::HyperbolicSpeed)
        .unwrap()
        .iter()
        .sum();
    assert!(((l_in - l_out) / l_in).abs() < 1e-6, "{l_in} vs {l_out}");

    // uniform spacing in the resampler's own measure
    let segs = interpolated_segment_lengths(&res, SpeedMode::HyperbolicSpeed).unwrap();
    let target = l_out / n as f64;
    for s in &segs {
        assert!(((s - target) / target).abs() < 1e-8, "segment {s} vs {target}");
    }
}

#[test]
fn resample_euclidean_spacing_on_circle() {
    let n = 512;
    let curve: Curve = circle_profile(1, 0.5, n).unwrap();
    let res = resample(&curve, SpeedMode::EuclideanSpeed, n).unwrap();
    let segs = interpolated_segment_lengths(&res, SpeedMode::EuclideanSpeed).unwrap();
    let expected = std::f64::consts::TAU * 0.5 / n as f64;
    for s in &segs {
        assert!((s - expected).abs() < 1e-8, "segment {s} vs {expected}");
    }
}

#[test]
fn rescale_isometry_maps_circles_and_keeps_observables() {
    let curve: Curve = circle_profile(1, 0.5, 256).unwrap();
    let id = rescale_isometry(&curve, 1.0, 0.0).unwrap();
    for i in 0..curve.len() {
        assert!((id.node(i).to_vec() - curve.node(i).to_vec()).norm() == 0.0);
    }

    // ρ = 0.5, p = 0 doubles: circle center (0,2), radius 1
    let scaled = rescale_isometry(&curve, 0.5, 0.0).unwrap();
    for i in 0..scaled.len() {
        let p = scaled.node(i);
        let d = (p.y1.powi(2) + (p.y2 - 2.0).powi(2)).sqrt();
        assert!((d - 1.0).abs() < 1e-12);
    }

    let before = observables(&curve).unwrap();
    for rho in [0.5, 2.0, 10.0] {
        for p in [0.0, 3.0, -3.0] {
            let after = observables(&rescale_isometry(&curve, rho, p).unwrap()).unwrap();
            for (a, b, name) in [
                (before.hyp_length as f64, after.hyp_length, "L"),
                (before.elastic_energy, after.elastic_energy, "E"),
                (before.total_hyp_curvature, after.total_hyp_curvature, "TC"),
                (before.lagrange, after.lagrange, "lambda"),
            ] {
                assert!(
                    ((a - b) / a.abs().max(1.0)).abs() < 1e-12,
                    "{name} moved under ({rho}, {p}): {a} vs {b}"
                );
            }
        }
    }
    assert!(matches!(rescale_isometry(&curve, -1.0, 0.0), Err(Error::Contract(_))));
}

#[test]
fn orientation_reversal_flips_signed_quantities() {
    let n = 256;
    let base: Curve = circle_profile(1, 0.5, n).unwrap();
    let nodes: Vec<Point> = (0..n)
        .map(|i| {
            let x: f64 = base.param(i);
            let p = base.node(i);
            Point::new(p.y1 + 0.01 * (2.0 * x).sin(), p.y2 + 0.01 * (3.0 * x).cos())
        })
        .collect();
    let curve = Curve::new(nodes).unwrap();
    let fwd = observables(&curve).unwrap();
    let rev = observables(&curve.reversed()).unwrap();
    assert_eq!(rev.turning_number, -fwd.turning_number);
    assert!((rev.total_hyp_curvature + fwd.total_hyp_curvature).abs() < 1e-9);
    for (a, b) in [
        (fwd.hyp_length, rev.hyp_length),
        (fwd.elastic_energy, rev.elastic_energy),
        (fwd.willmore_energy, rev.willmore_energy),
    ] {
        assert!(((a - b) / a).abs() < 1e-12);
    }
}

#[test]
fn curve_validation_rejects_bad_input() {
    assert!(matches!(
        Curve::new(vec![Point::new(0.0, 1.0); 8]),
        Err(Error::Contract(_))
    ));
    let mut nodes: Vec<Point> = (0..32)
        .map(|i| {
            let x: f64 = std::f64::consts::TAU * i as f64 / 32.0;
            Point::new(0.5 * x.cos(), 1.0 + 0.5 * x.sin())
        })
        .collect();
    nodes[5].y2 = -0.1;
    assert!(matches!(Curve::new(nodes), Err(Error::DegenerateCurve(_))));
}

#[test]
fn snapshot_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let curve: Curve = circle_profile(3, 0.68, 64).unwrap();
    write_snapshot(&curve, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,y1,y2\n"));
    assert!(!text.contains('\r'));
    let back: Curve = read_snapshot(&path).unwrap();
    assert_eq!(back.len(), curve.len());
    for i in 0..curve.len() {
        assert!((back.node(i).to_vec() - curve.node(i).to_vec()).norm() < 1e-15);
    }
}
