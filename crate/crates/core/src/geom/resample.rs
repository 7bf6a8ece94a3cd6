//! Arclength reparametrization of a curve by periodic cubic interpolation.

use super::spline::PeriodicCubic;
use super::{DiscreteCurve, HPoint, MIN_NODES, Y2_FLOOR};
use crate::error::{Error, Result};
use crate::num::{r64, Real};

/// Which arclength the resampled nodes are uniform in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpeedMode {
    /// Uniform hyperbolic arclength (the gauge the flows are monitored in).
    HyperbolicSpeed,
    /// Uniform Euclidean arclength.
    EuclideanSpeed,
}

/// Gauss–Legendre nodes and weights on [0,1], five points.
const GL_T: [f64; 5] = [
    0.046910077030668004,
    0.23076534494715845,
    0.5,
    0.7692346550528415,
    0.953089922969332,
];
const GL_W: [f64; 5] = [
    0.11846344252809454,
    0.23931433524968324,
    0.28444444444444444,
    0.23931433524968324,
    0.11846344252809454,
];

struct CurveSpline<R> {
    y1: PeriodicCubic<R>,
    y2: PeriodicCubic<R>,
    mode: SpeedMode,
}

impl<R: Real> CurveSpline<R> {
    fn speed(&self, x: R) -> Result<R> {
        let d1 = self.y1.deriv(x);
        let d2 = self.y2.deriv(x);
        let e = (d1 * d1 + d2 * d2).sqrt();
        match self.mode {
            SpeedMode::EuclideanSpeed => Ok(e),
            SpeedMode::HyperbolicSpeed => {
                let h = self.y2.eval(x);
                if !(h > r64(Y2_FLOOR)) {
                    return Err(Error::DegenerateCurve(format!(
                        "interpolated height {h:e} non-positive during resampling"
                    )));
                }
                Ok(e / h)
            }
        }
    }

    /// ∫ speed over [a, b] by five-point Gauss–Legendre.
    fn arc(&self, a: R, b: R) -> Result<R> {
        let len = b - a;
        let mut acc = R::zero();
        for (t, w) in GL_T.iter().zip(GL_W.iter()) {
            acc += r64::<R>(*w) * self.speed(a + len * r64(*t))?;
        }
        Ok(acc * len)
    }
}

/// Resample a curve to `n_out` nodes uniform in the chosen arclength.
///
/// Both components are interpolated by periodic cubic splines; the cumulative
/// arclength of the spline is inverted per target node, so the output node
/// spacings are uniform to the tolerance of the scalar solves (well below the
/// contract's 1e-8) and the interpolated total length is preserved.
pub fn resample<R: Real>(
    curve: &DiscreteCurve<R>,
    mode: SpeedMode,
    n_out: usize,
) -> Result<DiscreteCurve<R>> {
    if n_out < MIN_NODES || n_out % 2 != 0 {
        return Err(Error::Contract(format!(
            "resample target must be even and at least {MIN_NODES}, got {n_out}"
        )));
    }
    let n = curve.len();
    let h = curve.param_step();
    let vals1: Vec<R> = curve.nodes().iter().map(|p| p.y1).collect();
    let vals2: Vec<R> = curve.nodes().iter().map(|p| p.y2).collect();
    let sp = CurveSpline {
        y1: PeriodicCubic::fit(&vals1, h),
        y2: PeriodicCubic::fit(&vals2, h),
        mode,
    };

    // cumulative arclength over the original intervals
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(R::zero());
    for i in 0..n {
        let a = h * r64(i as f64);
        let seg = sp.arc(a, a + h)?;
        if !(seg > R::zero()) {
            return Err(Error::DegenerateCurve(format!(
                "non-increasing cumulative arclength on interval {i}"
            )));
        }
        let last = *cum.last().unwrap();
        cum.push(last + seg);
    }
    let total = *cum.last().unwrap();
    if !total.is_finite() || !(total > R::zero()) {
        return Err(Error::DegenerateCurve("non-finite arclength".into()));
    }

    let mut nodes = Vec::with_capacity(n_out);
    let mut seg_idx = 0usize;
    for j in 0..n_out {
        let target = total * r64(j as f64) / r64(n_out as f64);
        while seg_idx + 1 < n && cum[seg_idx + 1] < target {
            seg_idx += 1;
        }
        let x = invert_arc(&sp, cum[seg_idx], h * r64(seg_idx as f64), h, target, total)?;
        let p = HPoint::new(sp.y1.eval(x), sp.y2.eval(x));
        nodes.push(p);
    }
    let out = DiscreteCurve::new(nodes)?;
    debug_assert_eq!(out.len(), n_out);
    Ok(out)
}

/// Solve `cum0 + ∫_{x0}^{x} speed = target` for `x ∈ [x0, x0+h]` by
/// safeguarded Newton.
fn invert_arc<R: Real>(
    sp: &CurveSpline<R>,
    cum0: R,
    x0: R,
    h: R,
    target: R,
    total: R,
) -> Result<R> {
    let need = target - cum0;
    if need <= R::zero() {
        return Ok(x0);
    }
    let mut lo = R::zero();
    let mut hi = h;
    let mut t = h * need / sp.arc(x0, x0 + h)?.max(r64(1e-300));
    let tol = total * r64(1e-13);
    for _ in 0..60 {
        let f = sp.arc(x0, x0 + t)? - need;
        if f.abs() <= tol {
            return Ok(x0 + t);
        }
        if f > R::zero() {
            hi = t;
        } else {
            lo = t;
        }
        let d = sp.speed(x0 + t)?;
        let mut tn = t - f / d;
        if !(tn > lo) || !(tn < hi) {
            tn = (lo + hi) * r64(0.5);
        }
        t = tn;
    }
    Ok(x0 + t)
}

/// Arclength of each node-to-node segment measured on the interpolating
/// spline; the resampler's own yardstick for spacing uniformity.
pub fn interpolated_segment_lengths<R: Real>(
    curve: &DiscreteCurve<R>,
    mode: SpeedMode,
) -> Result<Vec<R>> {
    let h = curve.param_step();
    let vals1: Vec<R> = curve.nodes().iter().map(|p| p.y1).collect();
    let vals2: Vec<R> = curve.nodes().iter().map(|p| p.y2).collect();
    let sp = CurveSpline {
        y1: PeriodicCubic::fit(&vals1, h),
        y2: PeriodicCubic::fit(&vals2, h),
        mode,
    };
    (0..curve.len())
        .map(|i| {
            let a = h * r64(i as f64);
            sp.arc(a, a + h)
        })
        .collect()
}

/// Ratio max/min of node hyperbolic speeds; 1 on a constant-speed curve.
pub(crate) fn speed_nonuniformity<R: Real>(vm: &[R]) -> R {
    let mut lo = R::infinity();
    let mut hi = R::zero();
    for v in vm {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    hi / lo
}
