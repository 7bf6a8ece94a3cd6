//! Functionals against Appendix-style closed forms on circles.

use std::f64::consts::{PI, TAU};

use wrev_core::functionals::{
    constrained_residual, elastic_gradient, lagrange_multiplier, observables,
    total_curvature_decomposition, ObservableRecord,
};
use wrev_core::geom::{normal_and_scalar_curvature, rescale_isometry};
use wrev_core::stationary::{circle_profile, figure_eight, CircleFamily};
use wrev_core::{Curve, Point};

fn circle_exact(m: u32, r: f64) -> (f64, f64, f64) {
    let fam = CircleFamily::new(m, r).unwrap();
    (fam.hyp_length(), fam.elastic_energy(), fam.lambda())
}

#[test]
fn clifford_circle_observables() {
    let curve: Curve = circle_profile(1, 0.5f64.sqrt(), 512).unwrap();
    let ob = observables(&curve).unwrap();
    assert!(((ob.hyp_length - TAU) / TAU).abs() < 1e-6);
    assert!(((ob.elastic_energy - 4.0 * PI) / (4.0 * PI)).abs() < 1e-6);
    assert!(((ob.willmore_energy - 2.0 * PI * PI) / (2.0 * PI * PI)).abs() < 1e-6);
    assert_eq!(ob.turning_number, 1);
    assert!(!ob.turning_ambiguous);
    assert!((ob.omega2 - 1.0).abs() < 1e-6);
    assert!(ob.lagrange.abs() < 1e-6);
}

#[test]
fn half_radius_circle_observables() {
    let curve: Curve = circle_profile(1, 0.5, 512).unwrap();
    let ob = observables(&curve).unwrap();
    let (l, e, lam) = circle_exact(1, 0.5);
    let tc = TAU / (1.0 - 0.25f64).sqrt();
    assert!(((ob.hyp_length - l) / l).abs() < 1e-8, "L = {}", ob.hyp_length);
    assert!(((ob.elastic_energy - e) / e).abs() < 1e-8, "E = {}", ob.elastic_energy);
    assert!(((ob.total_hyp_curvature - tc) / tc).abs() < 1e-8);
    assert!((ob.lagrange - lam).abs() < 1e-7, "lambda = {}", ob.lagrange);
    assert!((ob.omega2 - 3.0f64.sqrt()).abs() < 1e-8);
    assert!(((ob.rev_area_integral - PI) / PI).abs() < 1e-8, "A = {}", ob.rev_area_integral);
    // spot values quoted to six decimals
    assert!((ob.hyp_length - 3.627599).abs() < 1e-6);
    assert!((ob.elastic_energy - 14.510395).abs() < 1e-6);
    assert!((ob.total_hyp_curvature - 7.255197).abs() < 1e-5);
    assert!((ob.omega2 - 1.732051).abs() < 1e-6);
}

#[test]
fn figure_eight_has_zero_turning() {
    let curve: Curve = figure_eight(1.0, 0.6, 1.0, 256).unwrap();
    let ob = observables(&curve).unwrap();
    assert_eq!(ob.turning_number, 0);
    assert!(!ob.turning_ambiguous);
}

#[test]
fn total_curvature_decomposition_closes() {
    let curve: Curve = circle_profile(1, 0.5, 512).unwrap();
    let (tc, winding, axis) = total_curvature_decomposition(&curve).unwrap();
    let third_exact = TAU * (1.0 / (0.75f64).sqrt() - 1.0);
    assert!((tc - 7.255197).abs() < 1e-5);
    assert!((winding - TAU).abs() < 1e-14);
    assert!((axis - third_exact).abs() < 1e-7, "axis term {axis}");
    assert!((axis - 0.972014).abs() < 2e-6);
    assert!((tc - winding - axis).abs() <= 1e-6, "identity gap {}", tc - winding - axis);
}

#[test]
fn total_curvature_lower_bound_multifold() {
    // |∫κ ds| ≥ 2π|m| − L on the triple circle
    let curve: Curve = circle_profile(3, 0.68, 512).unwrap();
    let (tc, _, _) = total_curvature_decomposition(&curve).unwrap();
    let ob = observables(&curve).unwrap();
    assert_eq!(ob.turning_number, 3);
    assert!(tc.abs() >= TAU * 3.0 - ob.hyp_length - 1e-9);
    let exact_tc = 6.0 * PI / (1.0f64 - 0.68 * 0.68).sqrt();
    assert!(((tc - exact_tc) / exact_tc).abs() < 1e-6);
}

#[test]
fn symmetric_zero_turning_curve_decomposition() {
    // with T = 0 the total curvature equals the axis term alone
    let curve: Curve = figure_eight(1.0, 0.6, 1.2, 512).unwrap();
    let (tc, winding, axis) = total_curvature_decomposition(&curve).unwrap();
    assert_eq!(winding, 0.0);
    assert!((tc - axis).abs() < 1e-6);
}

#[test]
fn elastic_gradient_on_circles() {
    // free elastica: the Clifford profile's gradient vanishes to O(N⁻²)
    let clifford: Curve = circle_profile(1, 0.5f64.sqrt(), 512).unwrap();
    let g = elastic_gradient(&clifford).unwrap();
    let max = (0..512)
        .map(|i| g.value(i).norm() / clifford.node(i).y2)
        .fold(0.0f64, f64::max);
    assert!(max < 1e-3, "Clifford gradient {max}");

    // constrained elastica identity ∇E = λ_r κ⃗ with λ_r = 2 at r = 1/2
    let curve: Curve = circle_profile(1, 0.5, 512).unwrap();
    let g = elastic_gradient(&curve).unwrap();
    let (normal, ks) = normal_and_scalar_curvature(&curve).unwrap();
    for i in 0..curve.len() {
        let y2 = curve.node(i).y2;
        let expected = normal.value(i) * (2.0 * ks[i]);
        let diff = (g.value(i) - expected).norm() / y2;
        assert!(diff < 5e-5, "node {i}: |∇E − 2κ⃗|_g = {diff}");
        let norm = g.value(i).norm() / y2;
        assert!((norm - 4.0).abs() < 5e-5, "|∇E|_g = {norm}");
    }
}

#[test]
fn elastic_gradient_is_normal() {
    let n = 512;
    let base: Curve = circle_profile(1, 0.5, n).unwrap();
    let nodes: Vec<Point> = (0..n)
        .map(|i| {
            let x: f64 = base.param(i);
            let p = base.node(i);
            Point::new(p.y1 + 0.05 * (2.0 * x).sin(), p.y2 + 0.04 * (3.0 * x).cos())
        })
        .collect();
    let curve = Curve::new(nodes).unwrap();
    let g = elastic_gradient(&curve).unwrap();
    let geo = wrev_core::geom::CurveGeometry::build(&curve).unwrap();
    for i in 0..n {
        let tang = (g.value(i).dot(geo.t[i]) / geo.y2[i].powi(2)).abs();
        assert!(tang <= 1e-12 * (1.0 + g.value(i).norm()), "node {i}: {tang}");
    }
}

#[test]
fn lagrange_multiplier_values_and_invariance() {
    let curve: Curve = circle_profile(1, 0.5, 512).unwrap();
    let lam = lagrange_multiplier(&curve).unwrap();
    assert!((lam - 2.0).abs() < 1e-6, "lambda {lam}");

    let clifford: Curve = circle_profile(1, 0.5f64.sqrt(), 512).unwrap();
    assert!(lagrange_multiplier(&clifford).unwrap().abs() < 1e-6);

    let moved: Curve = rescale_isometry(&curve, 2.0, 1.0).unwrap();
    let lam2 = lagrange_multiplier(&moved).unwrap();
    assert!((lam - lam2).abs() < 1e-12, "{lam} vs {lam2}");
}

#[test]
fn constrained_residual_on_circles_and_perturbation() {
    for (m, r) in [(1u32, 0.5f64), (1, 0.5f64.sqrt()), (3, 0.68)] {
        let curve: Curve = circle_profile(m, r, 512).unwrap();
        let (_, norm) = constrained_residual(&curve).unwrap();
        assert!(norm < 1e-3, "(m,r)=({m},{r}): {norm}");
    }
    // Clifford: unconstrained gradient norm itself is small
    let clifford: Curve = circle_profile(1, 0.5f64.sqrt(), 512).unwrap();
    let g = elastic_gradient(&clifford).unwrap();
    let gm = wrev_core::geom::CurveGeometry::build(&clifford).unwrap();
    let norm2: f64 = gm.integrate(|i| g.value(i).dot(g.value(i)) / gm.y2[i].powi(2));
    assert!(norm2.sqrt() < 1e-3);

    // normal perturbation 0.01·cos(2x): decisively non-critical
    let n = 512;
    let base: Curve = circle_profile(1, 0.5, n).unwrap();
    let (normal, _) = normal_and_scalar_curvature(&base).unwrap();
    let nodes: Vec<Point> = (0..n)
        .map(|i| {
            let x: f64 = base.param(i);
            let p = base.node(i);
            let v = normal.value(i) * (0.01 * (2.0 * x).cos());
            Point::new(p.y1 + v.x, p.y2 + v.y)
        })
        .collect();
    let perturbed = Curve::new(nodes).unwrap();
    let (_, norm) = constrained_residual(&perturbed).unwrap();
    assert!(norm > 0.1, "perturbed residual {norm}");
}

#[test]
fn gradient_matches_finite_difference_of_energy() {
    // first-variation check: (E(γ+tV) − E(γ−tV))/(2t) vs ∫⟨∇E, V⟩_g ds
    let n = 256;
    let base: Curve = circle_profile(1, 0.5, n).unwrap();
    let nodes: Vec<Point> = (0..n)
        .map(|i| {
            let x: f64 = base.param(i);
            let p = base.node(i);
            Point::new(p.y1 + 0.03 * (2.0 * x).sin(), p.y2 + 0.02 * (3.0 * x).cos())
        })
        .collect();
    let curve = Curve::new(nodes).unwrap();
    let (normal, _) = normal_and_scalar_curvature(&curve).unwrap();
    let dir: Vec<wrev_core::Vec2<f64>> = (0..n)
        .map(|i| normal.value(i) * (0.7 + (2.0 * curve.param(i)).sin()))
        .collect();

    let energy_at = |t: f64| -> f64 {
        let nodes: Vec<Point> = (0..n)
            .map(|i| {
                let p = curve.node(i);
                Point::new(p.y1 + t * dir[i].x, p.y2 + t * dir[i].y)
            })
            .collect();
        observables(&Curve::new(nodes).unwrap()).unwrap().elastic_energy
    };
    let t = 1e-4;
    let fd = (energy_at(t) - energy_at(-t)) / (2.0 * t);

    let g = elastic_gradient(&curve).unwrap();
    let geo = wrev_core::geom::CurveGeometry::build(&curve).unwrap();
    let pairing: f64 = geo.integrate(|i| g.value(i).dot(dir[i]) / geo.y2[i].powi(2));
    assert!(
        (fd - pairing).abs() < 1e-4_f64.max(10.0 * t * t),
        "fd {fd} vs pairing {pairing}"
    );
}

#[test]
fn fenchel_and_height_ratio_hold() {
    let curves = [
        circle_profile(1, 0.5, 256).unwrap(),
        circle_profile(3, 0.68, 256).unwrap(),
        figure_eight(1.0, 0.6, 1.0, 256).unwrap(),
    ];
    for curve in &curves {
        let ob = observables(curve).unwrap();
        assert!(ob.hyp_length * ob.elastic_energy >= 4.0 * PI * PI * (1.0 - 1e-2));
        let (min, max) = (curve.min_height(), curve.max_height());
        assert!(max <= min * (ob.hyp_length / 2.0).exp() * (1.0 + 1e-6));
        assert!((ob.willmore_energy - PI / 2.0 * ob.elastic_energy).abs() == 0.0);
        assert!(ob.omega2 >= 1.0);
    }
}

#[test]
fn observable_csv_row_format() {
    let curve: Curve = circle_profile(1, 0.5, 64).unwrap();
    let ob = observables(&curve).unwrap();
    let row = ob.csv_row(1.5).unwrap();
    assert_eq!(row.split(',').count(), 10);
    assert_eq!(ObservableRecord::<f64>::csv_header().split(',').count(), 10);
    assert!(row.starts_with("1.5"));

    let mut bad = ob;
    bad.lagrange = f64::NAN;
    assert!(bad.csv_row(0.0).is_err());
}
