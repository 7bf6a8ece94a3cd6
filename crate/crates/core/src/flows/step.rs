//! One explicit step: RK4 stages, CFL bound, length projection.

use super::{FlowEngine, FlowKind};
use crate::error::{Error, Result};
use crate::functionals::Workspace;
use crate::geom::{CurveGeometry, DiscreteCurve, HPoint, NodeField, Vec2};
use crate::num::{r64, Real};

/// CFL constant of the explicit fourth-order step.
pub const C_CFL: f64 = 0.05;
/// Relative tolerance of the length projection.
pub const PROJECT_TOL: f64 = 1e-10;
/// Newton iteration cap of the length projection.
pub const PROJECT_MAX_ITERS: usize = 20;

/// Flow velocity field ∂_tγ for the given flow.
pub fn flow_velocity<R: Real>(curve: &DiscreteCurve<R>, kind: FlowKind) -> Result<NodeField<R>> {
    let mut engine = FlowEngine::new();
    let eval = engine.eval(curve, kind)?;
    Ok(NodeField::new(eval.velocity))
}

/// Stability bound of the explicit step.
///
/// `dt ≤ 0.05 · h_min⁴` with `h_min` the smallest hyperbolic node spacing;
/// for the weighted flows the degenerate factor (min γ²)⁴ multiplies in,
/// mirroring the 1/(4(γ²)⁴) in the equation. The elastic flow carries no
/// such weight, so its bound has no height factor.
pub fn step_cfl<R: Real>(min_spacing: R, min_y2: R, kind: FlowKind) -> R {
    let h4 = min_spacing * min_spacing * min_spacing * min_spacing;
    let base = r64::<R>(C_CFL) * h4;
    match kind {
        FlowKind::Elastic => base,
        FlowKind::Willmore | FlowKind::ConstrainedWillmore => {
            let w = min_y2 * min_y2 * min_y2 * min_y2;
            base * w
        }
    }
}

pub(crate) fn displaced<R: Real>(
    base: &DiscreteCurve<R>,
    dir: &[Vec2<R>],
    scale: R,
) -> DiscreteCurve<R> {
    let nodes = base
        .nodes()
        .iter()
        .zip(dir.iter())
        .map(|(p, v)| HPoint::new(p.y1 + v.x * scale, p.y2 + v.y * scale))
        .collect();
    DiscreteCurve::from_nodes_unchecked(nodes)
}

/// One classical RK4 step of size `dt` on the method-of-lines system.
///
/// Fails with a degenerate-curve error if any stage leaves the admissible
/// set; the caller treats that as a rejected step.
pub fn rk4_step<R: Real>(
    curve: &DiscreteCurve<R>,
    kind: FlowKind,
    dt: R,
) -> Result<DiscreteCurve<R>> {
    let mut engine = FlowEngine::new();
    let k1 = engine.eval(curve, kind)?.velocity;
    rk4_step_with(&mut engine, curve, kind, dt, &k1)
}

/// RK4 step reusing a precomputed first-stage velocity.
pub(crate) fn rk4_step_with<R: Real>(
    engine: &mut FlowEngine<R>,
    curve: &DiscreteCurve<R>,
    kind: FlowKind,
    dt: R,
    k1: &[Vec2<R>],
) -> Result<DiscreteCurve<R>> {
    let half = dt * r64::<R>(0.5);
    let sixth = dt / r64::<R>(6.0);
    let two = r64::<R>(2.0);

    let k2 = engine.eval(&displaced(curve, k1, half), kind)?.velocity;
    let k3 = engine.eval(&displaced(curve, &k2, half), kind)?.velocity;
    let k4 = engine.eval(&displaced(curve, &k3, dt), kind)?.velocity;

    let nodes = (0..curve.len())
        .map(|i| {
            let inc = (k1[i] + (k2[i] + k3[i]) * two + k4[i]) * sixth;
            let p = curve.node(i);
            HPoint::new(p.y1 + inc.x, p.y2 + inc.y)
        })
        .collect();
    Ok(DiscreteCurve::from_nodes_unchecked(nodes))
}

/// Restore the hyperbolic length of a curve by displacing nodes along the
/// curvature field: returns `curve + c·κ⃗` with the scalar `c` found by a
/// safeguarded Newton iteration so that `|L − L_target|/L_target ≤ 1e-10`.
pub fn project_length<R: Real>(
    curve: &DiscreteCurve<R>,
    l_target: R,
) -> Result<DiscreteCurve<R>> {
    let mut ws = Workspace::new();
    let q = ws.eval(curve)?;
    let drift = ((q.l - l_target) / l_target).abs();
    if !(drift < r64(0.1)) {
        return Err(Error::Contract(format!(
            "length projection precondition violated: relative drift {drift:e} not below 0.1"
        )));
    }
    let kappa = ws.kappa.clone();

    // first-variation predictor: dL/dc = −∫|κ⃗|²ds = −E at c = 0
    let mut c = (q.l - l_target) / q.e;
    let tol = r64::<R>(PROJECT_TOL) * l_target;
    let mut geo = CurveGeometry::empty();
    for iter in 0..PROJECT_MAX_ITERS {
        let cand = displaced(curve, &kappa, c);
        geo.load(&cand)?;
        let l = geo.length();
        let f = l - l_target;
        if f.abs() <= tol {
            // revalidate through the public constructor
            return DiscreteCurve::new(cand.nodes().to_vec());
        }
        let dldc = length_derivative(&geo, &kappa);
        let step = if dldc.abs() > r64(1e-300) { f / dldc } else { R::zero() };
        if !step.is_finite() || step == R::zero() {
            return Err(Error::ProjectionFailure {
                iters: iter + 1,
                drift: (f / l_target).to_f64().unwrap_or(f64::NAN),
            });
        }
        c = c - step;
    }
    let cand = displaced(curve, &kappa, c);
    geo.load(&cand)?;
    let f = (geo.length() - l_target) / l_target;
    Err(Error::ProjectionFailure {
        iters: PROJECT_MAX_ITERS,
        drift: f.to_f64().unwrap_or(f64::NAN),
    })
}

/// d/dc of the discrete length of `curve + c·κ⃗` at the already-loaded
/// displaced geometry.
fn length_derivative<R: Real>(geo: &CurveGeometry<R>, kappa: &[Vec2<R>]) -> R {
    // node derivative of the displacement field, same stencils as the height
    let n = geo.len();
    let h = geo.param_step();
    let c24h = r64::<R>(1.0) / (r64::<R>(24.0) * h);
    let c16 = r64::<R>(1.0 / 16.0);
    let nine = r64::<R>(9.0);
    let c27 = r64::<R>(27.0);
    let wrap = |i: usize, off: isize| -> usize { (i as isize + off).rem_euclid(n as isize) as usize };

    // midpoint derivative of kappa, then interpolate to nodes
    let mut dkm = vec![Vec2::zero(); n];
    for i in 0..n {
        let fm1 = kappa[wrap(i, -1)];
        let f0 = kappa[i];
        let f1 = kappa[wrap(i, 1)];
        let f2 = kappa[wrap(i, 2)];
        dkm[i] = (fm1 - f0 * c27 + f1 * c27 - f2) * c24h;
    }
    let mut acc = R::zero();
    for i in 0..n {
        let m2 = dkm[wrap(i, -2)];
        let m1 = dkm[wrap(i, -1)];
        let m0 = dkm[i];
        let p1 = dkm[wrap(i, 1)];
        let dk = (-m2 + m1 * nine + m0 * nine - p1) * c16;
        let dg = geo.dg[i];
        let e = dg.norm();
        let y2 = geo.y2[i];
        acc += dg.dot(dk) / (e * y2) - e * kappa[i].y / (y2 * y2);
    }
    acc * h
}
