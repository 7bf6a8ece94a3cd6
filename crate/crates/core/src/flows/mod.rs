//! Right-hand sides and adaptive explicit time integration for the elastic,
//! Willmore and conformally constrained Willmore flows of profile curves.

mod artifact;
mod run;
mod step;

pub use artifact::{
    read_manifest, read_series, series_path, write_run_artifact, Manifest, SnapshotEntry,
    SERIES_HEADER,
};
pub use run::{run, RunConfig, RunOutput, SeriesRow};
pub use step::{flow_velocity, project_length, rk4_step, step_cfl};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functionals::{CoreQuantities, Workspace};
use crate::geom::{rescale_isometry, DiscreteCurve, Vec2};
use crate::num::{r64, Real};

/// Which gradient flow is integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowKind {
    /// ∂_tγ = −∇E(γ).
    Elastic,
    /// ∂_tγ = −(4(γ²)⁴)⁻¹ ∇E(γ).
    Willmore,
    /// ∂_tγ = −(4(γ²)⁴)⁻¹ (∇E(γ) − λ(γ)κ⃗); preserves hyperbolic length.
    ConstrainedWillmore,
}

impl FlowKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "elastic" => Some(FlowKind::Elastic),
            "willmore" => Some(FlowKind::Willmore),
            "cwf" | "constrained-willmore" | "constrained_willmore" => {
                Some(FlowKind::ConstrainedWillmore)
            }
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FlowKind::Elastic => "elastic",
            FlowKind::Willmore => "willmore",
            FlowKind::ConstrainedWillmore => "cwf",
        }
    }
}

/// Why a run stopped, mirroring the convergence/singularity alternatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowStatus {
    Running,
    /// Gradient (or constrained-residual) norm stayed below tolerance for a
    /// full monitoring window.
    Converged,
    /// Minimum height fell below its relative floor.
    NearAxisStop,
    /// Total hyperbolic curvature reached the vanishing threshold
    /// (constrained flow only).
    TotalCurvatureStop,
    /// Step size collapsed below the hard floor.
    StepFloorStop,
    /// Reached the configured final time.
    MaxTimeStop,
}

impl FlowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            FlowStatus::Running => "running",
            FlowStatus::Converged => "converged",
            FlowStatus::NearAxisStop => "near-axis-stop",
            FlowStatus::TotalCurvatureStop => "total-curvature-stop",
            FlowStatus::StepFloorStop => "step-floor-stop",
            FlowStatus::MaxTimeStop => "max-time-stop",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "running" => FlowStatus::Running,
            "converged" => FlowStatus::Converged,
            "near-axis-stop" => FlowStatus::NearAxisStop,
            "total-curvature-stop" => FlowStatus::TotalCurvatureStop,
            "step-floor-stop" => FlowStatus::StepFloorStop,
            "max-time-stop" => FlowStatus::MaxTimeStop,
            _ => return None,
        })
    }
}

/// State of one running flow.
#[derive(Clone, Debug)]
pub struct FlowState<R> {
    pub t: R,
    pub dt: R,
    pub curve: DiscreteCurve<R>,
    pub accepted_steps: u64,
    pub rejected_steps: u64,
    pub status: FlowStatus,
}

/// One full right-hand-side evaluation at a curve.
#[derive(Clone, Debug)]
pub(crate) struct RhsEval<R> {
    pub velocity: Vec<Vec2<R>>,
    pub q: CoreQuantities<R>,
    /// Dissipation integral matching the flow's energy identity.
    pub dissip: R,
    /// Convergence monitor: ‖∇E‖ for elastic/Willmore, residual norm for the
    /// constrained flow.
    pub grad_monitor: R,
    pub min_y2: R,
    pub max_y2: R,
    /// Smallest hyperbolic node spacing.
    pub min_spacing: R,
    /// Max/min ratio of node hyperbolic speeds (parametrization drift).
    pub nonuniformity: R,
}

/// Reusable buffers for right-hand-side evaluations.
pub(crate) struct FlowEngine<R> {
    pub ws: Workspace<R>,
}

impl<R: Real> FlowEngine<R> {
    pub fn new() -> Self {
        FlowEngine { ws: Workspace::new() }
    }

    pub fn eval(&mut self, curve: &DiscreteCurve<R>, kind: FlowKind) -> Result<RhsEval<R>> {
        let q = self.ws.eval(curve)?;
        let geo = &self.ws.geo;
        let n = geo.len();
        let quarter = r64::<R>(0.25);

        let mut velocity = vec![Vec2::zero(); n];
        let mut dissip = R::zero();
        match kind {
            FlowKind::Elastic => {
                for i in 0..n {
                    velocity[i] = -self.ws.grad[i];
                }
                dissip = q.grad_l2 * q.grad_l2;
            }
            FlowKind::Willmore => {
                for i in 0..n {
                    let y2 = geo.y2[i];
                    let w = quarter / (y2 * y2 * y2 * y2);
                    velocity[i] = -(self.ws.grad[i] * w);
                    dissip += w * self.ws.grad[i].dot(self.ws.grad[i]) / (y2 * y2) * geo.v[i];
                }
                dissip *= geo.param_step();
            }
            FlowKind::ConstrainedWillmore => {
                for i in 0..n {
                    let y2 = geo.y2[i];
                    let w = quarter / (y2 * y2 * y2 * y2);
                    let resid = self.ws.grad[i] - self.ws.kappa[i] * q.lambda;
                    velocity[i] = -(resid * w);
                    dissip += w * resid.dot(resid) / (y2 * y2) * geo.v[i];
                }
                dissip *= geo.param_step();
            }
        }

        let grad_monitor = match kind {
            FlowKind::ConstrainedWillmore => q.resid_l2,
            _ => q.grad_l2,
        };

        let mut min_y2 = R::infinity();
        let mut max_y2 = R::zero();
        for y in &geo.y2 {
            min_y2 = min_y2.min(*y);
            max_y2 = max_y2.max(*y);
        }

        Ok(RhsEval {
            velocity,
            q,
            dissip,
            grad_monitor,
            min_y2,
            max_y2,
            min_spacing: geo.min_spacing(curve),
            nonuniformity: crate::geom::resample::speed_nonuniformity(&geo.vm),
        })
    }
}

/// Blow-up normalization: the hyperbolic isometry moving the lowest node to
/// (0, 1). Returns the normalized curve together with the applied (ρ, p).
///
/// ρ is the minimum node height; p the horizontal coordinate of the first
/// node attaining it. All hyperbolic observables are unchanged.
pub fn blowup_normalize<R: Real>(curve: &DiscreteCurve<R>) -> Result<(DiscreteCurve<R>, R, R)> {
    let mut rho = R::infinity();
    let mut p = R::zero();
    for node in curve.nodes() {
        if node.y2 < rho {
            rho = node.y2;
            p = node.y1;
        }
    }
    let normalized = rescale_isometry(curve, rho, p)?;
    Ok((normalized, rho, p))
}
