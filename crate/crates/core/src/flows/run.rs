//! The outer flow loop: adaptive stepping, monitors, logging, stop reasons.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::step::{project_length, rk4_step_with, step_cfl};
use super::{FlowEngine, FlowKind, FlowState, FlowStatus, RhsEval};
use crate::error::Result;
use crate::functionals::turning_number_from_tangents;
use crate::geom::{resample, DiscreteCurve, SpeedMode};
use crate::num::tau;

/// Numeric run parameters. Everything is deterministic; there is no seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Final flow time.
    pub t_end: f64,
    /// Convergence tolerance factor: converged once the monitored gradient
    /// norm stays below `tol_conv · (1 + E)` for `conv_window` accepted steps.
    pub tol_conv: f64,
    /// Relative energy-increase tolerance of the acceptance rule.
    pub tol_e: f64,
    /// Near-axis stop: relative factor on the initial minimum height.
    pub eps_axis: f64,
    /// Total-curvature stop threshold (constrained flow).
    pub eps_tc: f64,
    /// Accepted steps between series rows.
    pub log_every: u64,
    /// Logged events between intermediate snapshots (0: endpoints only).
    pub snapshot_every_logs: u64,
    /// Hard step floor; reaching it stops the run.
    pub dt_min: f64,
    /// Hard step cap.
    pub dt_max: f64,
    /// Accepted steps between reparametrization checks.
    pub resample_every: u64,
    /// Speed ratio slack above which the periodic resampling actually fires.
    /// Near a stationary point the parametrization stops drifting and
    /// interpolation noise would only re-excite the gradient monitor.
    pub resample_gate: f64,
    /// Consecutive accepted steps required below tolerance.
    pub conv_window: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t_end: 10.0,
            tol_conv: 1e-6,
            tol_e: 1e-9,
            eps_axis: 1e-3,
            eps_tc: 1e-2,
            log_every: 25,
            snapshot_every_logs: 0,
            dt_min: 1e-14,
            dt_max: 1e-2,
            resample_every: 10,
            resample_gate: 1e-3,
            conv_window: 50,
        }
    }
}

/// One logged series record.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRow {
    pub t: f64,
    pub dt: f64,
    pub l: f64,
    pub e: f64,
    pub w: f64,
    pub tc: f64,
    pub turning: i64,
    pub omega2: f64,
    pub area: f64,
    pub diam: f64,
    pub lambda: f64,
    pub gradnorm: f64,
    pub min_y2: f64,
    pub max_y2: f64,
    pub status: FlowStatus,
    /// Dissipation integral of the flow's energy identity.
    pub dissip: f64,
}

/// Result of a completed run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub state: FlowState<f64>,
    pub series: Vec<SeriesRow>,
    pub snapshots: Vec<(f64, DiscreteCurve<f64>)>,
    pub wall_seconds: f64,
}

fn make_row(
    t: f64,
    dt: f64,
    curve: &DiscreteCurve<f64>,
    eval: &RhsEval<f64>,
    geo_dg: &[crate::geom::Vec2<f64>],
    geo: &crate::geom::CurveGeometry<f64>,
    status: FlowStatus,
) -> SeriesRow {
    let (turning, _) = turning_number_from_tangents(geo_dg);
    let area = geo.integrate(|i| geo.y2[i] * geo.y2[i]);
    let nodes = curve.nodes();
    let n = nodes.len();
    let mut diam = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let dx = nodes[i].y1 - nodes[j].y1;
            let sy = nodes[i].y2 + nodes[j].y2;
            diam = diam.max((dx * dx + sy * sy).sqrt());
        }
    }
    let ratio = eval.q.l / tau::<f64>();
    SeriesRow {
        t,
        dt,
        l: eval.q.l,
        e: eval.q.e,
        w: eval.q.e * std::f64::consts::FRAC_PI_2,
        tc: eval.q.tc,
        turning,
        omega2: ratio.max(1.0 / ratio),
        area,
        diam,
        lambda: eval.q.lambda,
        gradnorm: eval.grad_monitor,
        min_y2: eval.min_y2,
        max_y2: eval.max_y2,
        status,
        dissip: eval.dissip,
    }
}

/// Integrate a flow until one of the stop conditions fires.
pub fn run(initial: &DiscreteCurve<f64>, kind: FlowKind, cfg: &RunConfig) -> Result<RunOutput> {
    let started = Instant::now();
    let mut engine = FlowEngine::new();

    let mut curve = initial.clone();
    let mut eval = engine.eval(&curve, kind)?;
    let l_target = eval.q.l;
    let axis_floor = cfg.eps_axis * eval.min_y2;

    let mut series = Vec::new();
    let mut snapshots = vec![(0.0, curve.clone())];
    series.push(make_row(0.0, 0.0, &curve, &eval, &engine.ws.geo.dg, &engine.ws.geo, FlowStatus::Running));

    let mut t = 0.0f64;
    let mut dt = step_cfl(eval.min_spacing, eval.min_y2, kind).min(cfg.dt_max).max(cfg.dt_min);
    let mut accepted: u64 = 0;
    let mut rejected: u64 = 0;
    let mut status = FlowStatus::Running;
    let mut conv_streak: u64 = 0;
    let mut logged_events: u64 = 0;
    let mut last_logged_step: u64 = 0;
    let mut last_dt = dt;

    while status == FlowStatus::Running {
        if t >= cfg.t_end {
            status = FlowStatus::MaxTimeStop;
            break;
        }
        let dt_eff = dt.min(cfg.t_end - t);

        // attempt one step (length projection folded in for the constrained flow)
        let candidate = rk4_step_with(&mut engine, &curve, kind, dt_eff, &eval.velocity)
            .and_then(|c| match kind {
                FlowKind::ConstrainedWillmore => project_length(&c, l_target),
                _ => DiscreteCurve::new(c.nodes().to_vec()),
            });
        let outcome = candidate.and_then(|cand| {
            let ev = engine.eval(&cand, kind)?;
            Ok((cand, ev))
        });

        let (cand, cand_eval) = match outcome {
            Ok((cand, ev)) if ev.q.e <= eval.q.e * (1.0 + cfg.tol_e) => (cand, ev),
            Ok(_)
            | Err(crate::Error::DegenerateCurve(_))
            | Err(crate::Error::DegenerateMultiplier(_)) => {
                rejected += 1;
                dt *= 0.5;
                if dt < cfg.dt_min {
                    status = FlowStatus::StepFloorStop;
                }
                continue;
            }
            Err(e) => return Err(e),
        };

        t += dt_eff;
        accepted += 1;
        last_dt = dt_eff;
        curve = cand;
        eval = cand_eval;
        dt = (dt * 1.2)
            .min(step_cfl(eval.min_spacing, eval.min_y2, kind))
            .min(cfg.dt_max);

        // periodic reparametrization, gated on actual drift
        if cfg.resample_every > 0
            && accepted % cfg.resample_every == 0
            && eval.nonuniformity - 1.0 > cfg.resample_gate
        {
            let resampled = resample(&curve, SpeedMode::HyperbolicSpeed, curve.len())?;
            curve = match kind {
                FlowKind::ConstrainedWillmore => project_length(&resampled, l_target)?,
                _ => resampled,
            };
            eval = engine.eval(&curve, kind)?;
        }

        // monitors
        if eval.grad_monitor < cfg.tol_conv * (1.0 + eval.q.e) {
            conv_streak += 1;
            if conv_streak >= cfg.conv_window {
                status = FlowStatus::Converged;
            }
        } else {
            conv_streak = 0;
        }
        if eval.min_y2 < axis_floor {
            status = FlowStatus::NearAxisStop;
        }
        if kind == FlowKind::ConstrainedWillmore && eval.q.tc.abs() < cfg.eps_tc {
            status = FlowStatus::TotalCurvatureStop;
        }
        if t >= cfg.t_end && status == FlowStatus::Running {
            status = FlowStatus::MaxTimeStop;
        }

        if accepted % cfg.log_every == 0 && status == FlowStatus::Running {
            series.push(make_row(t, dt_eff, &curve, &eval, &engine.ws.geo.dg, &engine.ws.geo, FlowStatus::Running));
            last_logged_step = accepted;
            logged_events += 1;
            if cfg.snapshot_every_logs > 0 && logged_events % cfg.snapshot_every_logs == 0 {
                snapshots.push((t, curve.clone()));
            }
        }
    }

    // terminal row (replacing a same-step running row) and terminal snapshot;
    // re-evaluate so the cached geometry matches the final accepted curve
    // even after a rejection cascade
    eval = engine.eval(&curve, kind)?;
    let terminal = make_row(t, last_dt, &curve, &eval, &engine.ws.geo.dg, &engine.ws.geo, status);
    if last_logged_step == accepted && series.len() > 1 {
        *series.last_mut().unwrap() = terminal;
    } else {
        series.push(terminal);
    }
    snapshots.push((t, curve.clone()));

    Ok(RunOutput {
        state: FlowState {
            t,
            dt,
            curve,
            accepted_steps: accepted,
            rejected_steps: rejected,
            status,
        },
        series,
        snapshots,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}
