//! Inequality checks and conservation monitors over a logged run.

use serde::Serialize;

use super::count_self_intersections;
use crate::error::Result;
use crate::flows::{FlowKind, SeriesRow};
use crate::functionals::observables;
use crate::geom::{CurveGeometry, DiscreteCurve};

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Signed worst violation; positive means the inequality was broken.
    pub worst_violation: f64,
    /// Logged time (or node index) where the worst case occurred.
    pub location: f64,
    pub pass: bool,
    /// Checks that do not apply to the run are recorded but not failed.
    pub applicable: bool,
}

impl CheckRecord {
    fn new(name: &str, worst: f64, location: f64, tol: f64) -> Self {
        CheckRecord {
            name: name.to_string(),
            worst_violation: worst,
            location,
            pass: worst <= tol,
            applicable: true,
        }
    }

    fn not_applicable(name: &str) -> Self {
        CheckRecord {
            name: name.to_string(),
            worst_violation: 0.0,
            location: 0.0,
            pass: true,
            applicable: false,
        }
    }
}

/// Aggregated invariant checks of one run.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<CheckRecord>,
    /// Scatter data for the a-priori multiplier bound: (t, λ², 1 + ∫|κ⃗|⁴ds − r⁴·dE/dt)
    /// at snapshot times. The bound's constant is not explicit, so this is
    /// recorded for inspection only, never pass/fail.
    pub lambda_bound_scatter: Vec<(f64, f64, f64)>,
    pub all_pass: bool,
}

/// Normalized dissipation residuals of the energy identity at interior logged
/// points: |dE/dt + D| / (D + 1e-12), with dE/dt by centered differences of
/// the logged energy and D the logged dissipation integral.
pub fn dissipation_residual(series: &[SeriesRow]) -> Vec<f64> {
    let mut out = Vec::new();
    if series.len() < 3 {
        return out;
    }
    for i in 1..series.len() - 1 {
        let prev = &series[i - 1];
        let next = &series[i + 1];
        let dt = next.t - prev.t;
        if dt <= 0.0 {
            out.push(f64::NAN);
            continue;
        }
        let dedt = (next.e - prev.e) / dt;
        let d = series[i].dissip;
        out.push((dedt + d).abs() / (d + 1e-12));
    }
    out
}

/// Evaluate every inequality and conservation check on a logged run.
///
/// `tol_e` and `log_every` echo the run configuration; the energy
/// monotonicity slack per logged interval is `tol_e · E · log_every`.
pub fn invariant_report(
    series: &[SeriesRow],
    snapshots: &[(f64, DiscreteCurve<f64>)],
    kind: FlowKind,
    tol_e: f64,
    log_every: u64,
) -> Result<InvariantReport> {
    let mut checks = Vec::new();
    let four_pi2 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    let two_pi = std::f64::consts::TAU;

    // Fenchel: L·E ≥ 4π²(1 − 1e-2)
    {
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for row in series {
            let v = four_pi2 * (1.0 - 1e-2) - row.l * row.e;
            if v > worst {
                worst = v;
                loc = row.t;
            }
        }
        checks.push(CheckRecord::new("fenchel", worst, loc, 0.0));
    }

    // height ratio: max γ² ≤ min γ² e^{L/2} (1 + 1e-6)
    {
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for row in series {
            let v = row.max_y2 - row.min_y2 * (row.l / 2.0).exp() * (1.0 + 1e-6);
            if v > worst {
                worst = v;
                loc = row.t;
            }
        }
        checks.push(CheckRecord::new("height-ratio", worst, loc, 0.0));
    }

    // area half-Hölder over all logged pairs: |A(t1) − A(t2)| ≤ ½E₀√Δt + 1e-6
    {
        let e0 = series.first().map(|r| r.e).unwrap_or(0.0);
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for i in 0..series.len() {
            for j in i + 1..series.len() {
                let dt = series[j].t - series[i].t;
                if dt <= 0.0 {
                    continue;
                }
                let v = (series[i].area - series[j].area).abs()
                    - (0.5 * e0 * dt.sqrt() + 1e-6);
                if v > worst {
                    worst = v;
                    loc = series[j].t;
                }
            }
        }
        checks.push(CheckRecord::new("area-half-hoelder", worst, loc, 0.0));
    }

    // total curvature vs turning number: |TC| ≥ 2π|T| − L − 1e-3
    {
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for row in series {
            let v = two_pi * (row.turning.abs() as f64) - row.l - 1e-3 - row.tc.abs();
            if v > worst {
                worst = v;
                loc = row.t;
            }
        }
        checks.push(CheckRecord::new("total-curvature-bound", worst, loc, 0.0));
    }

    // Gauss–Bonnet on embedded snapshots: |TC| ≥ 2π − 1e-2
    {
        let mut any = false;
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for (t, curve) in snapshots {
            if count_self_intersections(curve) > 0 {
                continue;
            }
            any = true;
            let ob = observables(curve)?;
            let v = (two_pi - 1e-2) - ob.total_hyp_curvature.abs();
            if v > worst {
                worst = v;
                loc = *t;
            }
        }
        if any {
            checks.push(CheckRecord::new("gauss-bonnet-embedded", worst, loc, 0.0));
        } else {
            checks.push(CheckRecord::not_applicable("gauss-bonnet-embedded"));
        }
    }

    // turning number constancy
    {
        let t0 = series.first().map(|r| r.turning).unwrap_or(0);
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for row in series {
            let v = (row.turning - t0).abs() as f64;
            if v > worst {
                worst = v;
                loc = row.t;
            }
        }
        checks.push(CheckRecord::new("turning-number-constant", worst, loc, 0.0));
    }

    // energy monotone within tol_e per accepted step
    {
        let slack = tol_e * log_every as f64;
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        for w in series.windows(2) {
            let v = w[1].e - w[0].e * (1.0 + slack);
            if v > worst {
                worst = v;
                loc = w[1].t;
            }
        }
        checks.push(CheckRecord::new("energy-monotone", worst, loc, 0.0));
    }

    // constrained flow: length and conformal class constancy to 1e-8 relative
    if kind == FlowKind::ConstrainedWillmore {
        let l0 = series.first().map(|r| r.l).unwrap_or(1.0);
        let mut worst_l = f64::NEG_INFINITY;
        let mut loc_l = 0.0;
        let mut worst_o = f64::NEG_INFINITY;
        let mut loc_o = 0.0;
        let o0 = series.first().map(|r| r.omega2).unwrap_or(1.0);
        for row in series {
            let vl = ((row.l - l0) / l0).abs() - 1e-8;
            if vl > worst_l {
                worst_l = vl;
                loc_l = row.t;
            }
            let vo = ((row.omega2 - o0) / o0).abs() - 1e-8;
            if vo > worst_o {
                worst_o = vo;
                loc_o = row.t;
            }
        }
        checks.push(CheckRecord::new("length-constant", worst_l, loc_l, 0.0));
        checks.push(CheckRecord::new("conformal-class-constant", worst_o, loc_o, 0.0));
    } else {
        checks.push(CheckRecord::not_applicable("length-constant"));
        checks.push(CheckRecord::not_applicable("conformal-class-constant"));
    }

    // dissipation residual in the smooth regime (relative floor on D)
    {
        let res = dissipation_residual(series);
        let dmax = series.iter().map(|r| r.dissip).fold(0.0f64, f64::max);
        let mut worst = f64::NEG_INFINITY;
        let mut loc = 0.0;
        let mut any = false;
        for (i, r) in res.iter().enumerate() {
            let row = &series[i + 1];
            if row.dissip < 1e-6 * (1.0 + dmax) {
                continue; // below the smooth-regime floor
            }
            any = true;
            let v = r - 1e-2;
            if v > worst {
                worst = v;
                loc = row.t;
            }
        }
        if any {
            checks.push(CheckRecord::new("dissipation-identity", worst, loc, 0.0));
        } else {
            checks.push(CheckRecord::not_applicable("dissipation-identity"));
        }
    }

    // λ a-priori bound scatter at snapshot times (recorded, never pass/fail)
    let mut scatter = Vec::new();
    {
        let r4 = series
            .iter()
            .map(|r| r.max_y2)
            .fold(0.0f64, f64::max)
            .powi(4);
        for (t, curve) in snapshots {
            let geo = CurveGeometry::build(curve)?;
            let (_, ks) = crate::geom::ops::curvature_with(&geo);
            let k4 = geo.integrate(|i| ks[i] * ks[i] * ks[i] * ks[i]);
            // centered dE/dt from the nearest series rows
            let dedt = slope_near(series, *t);
            let lam = nearest_row(series, *t).map(|r| r.lambda).unwrap_or(0.0);
            scatter.push((*t, lam * lam, 1.0 + k4 - r4 * dedt));
        }
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(InvariantReport { checks, lambda_bound_scatter: scatter, all_pass })
}

fn nearest_row<'a>(series: &'a [SeriesRow], t: f64) -> Option<&'a SeriesRow> {
    series
        .iter()
        .min_by(|a, b| (a.t - t).abs().partial_cmp(&(b.t - t).abs()).unwrap())
}

fn slope_near(series: &[SeriesRow], t: f64) -> f64 {
    if series.len() < 2 {
        return 0.0;
    }
    let mut best = (f64::INFINITY, 0.0);
    for w in series.windows(2) {
        let mid = 0.5 * (w[0].t + w[1].t);
        let dt = w[1].t - w[0].t;
        if dt <= 0.0 {
            continue;
        }
        let dist = (mid - t).abs();
        if dist < best.0 {
            best = (dist, (w[1].e - w[0].e) / dt);
        }
    }
    best.1
}
