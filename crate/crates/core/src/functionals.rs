//! Scalar functionals, gradients and the nonlocal Lagrange multiplier of a
//! profile curve.

use crate::error::{Error, Result};
use crate::geom::{ops, CurveGeometry, DiscreteCurve, NodeField, Vec2};
use crate::num::{r64, tau, Real};

/// Guard on the weighted curvature integral in the Lagrange multiplier.
pub const LAMBDA_DENOMINATOR_GUARD: f64 = 1e-8;

/// Every scalar functional of one curve.
#[derive(Clone, Copy, Debug)]
pub struct ObservableRecord<R> {
    /// Hyperbolic length L.
    pub hyp_length: R,
    /// Euclidean length of the profile curve.
    pub euc_length: R,
    /// Elastic energy E = ∫|κ⃗|²_g ds.
    pub elastic_energy: R,
    /// Willmore energy of the revolved torus, W = (π/2)·E.
    pub willmore_energy: R,
    /// Total hyperbolic curvature ∫κ ds.
    pub total_hyp_curvature: R,
    /// Turning number of the Euclidean tangent.
    pub turning_number: i64,
    /// Set when the pre-rounding winding was more than 0.1 from an integer.
    pub turning_ambiguous: bool,
    /// Conformal class ω = (0, ω₂), ω₂ = max(L/2π, 2π/L).
    pub omega2: R,
    /// Area integral of the revolved surface over 2π: ∫(γ²)² ds.
    pub rev_area_integral: R,
    /// Extrinsic diameter of the revolved surface.
    pub rev_diameter: R,
    /// Lagrange multiplier λ(γ).
    pub lagrange: R,
}

impl<R: Real> ObservableRecord<R> {
    /// One CSV row `t,L,E,W,TC,T,omega2,A,diam,lambda`. Non-finite entries
    /// abort the row.
    pub fn csv_row(&self, t: R) -> Result<String> {
        let cols = [
            t,
            self.hyp_length,
            self.elastic_energy,
            self.willmore_energy,
            self.total_hyp_curvature,
            r64(self.turning_number as f64),
            self.omega2,
            self.rev_area_integral,
            self.rev_diameter,
            self.lagrange,
        ];
        if cols.iter().any(|c| !c.is_finite()) {
            return Err(Error::DegenerateCurve("non-finite observable in CSV row".into()));
        }
        Ok(format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            t,
            self.hyp_length,
            self.elastic_energy,
            self.willmore_energy,
            self.total_hyp_curvature,
            self.turning_number,
            self.omega2,
            self.rev_area_integral,
            self.rev_diameter,
            self.lagrange
        ))
    }

    /// Header matching [`ObservableRecord::csv_row`].
    pub fn csv_header() -> &'static str {
        "t,L,E,W,TC,T,omega2,A,diam,lambda"
    }
}

/// Core per-curve quantities shared by functionals and flow right-hand sides.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CoreQuantities<R> {
    pub l: R,
    pub e: R,
    pub tc: R,
    pub lambda: R,
    pub grad_l2: R,
    pub resid_l2: R,
}

/// Reusable evaluation buffers.
pub(crate) struct Workspace<R> {
    pub geo: CurveGeometry<R>,
    pub kappa: Vec<Vec2<R>>,
    pub ks: Vec<R>,
    pub grad: Vec<Vec2<R>>,
    chain: Vec<Vec2<R>>,
    scratch: Vec<Vec2<R>>,
}

impl<R: Real> Workspace<R> {
    pub fn new() -> Self {
        Workspace {
            geo: CurveGeometry::empty(),
            kappa: Vec::new(),
            ks: Vec::new(),
            grad: Vec::new(),
            chain: Vec::new(),
            scratch: Vec::new(),
        }
    }

    /// Load a curve and compute κ⃗, ∇E, λ and the associated integrals.
    pub fn eval(&mut self, curve: &DiscreteCurve<R>) -> Result<CoreQuantities<R>> {
        self.geo.load(curve)?;
        let geo = &self.geo;
        let n = geo.len();

        let (kappa, ks) = ops::curvature_with(geo);
        self.kappa = kappa;
        self.ks = ks;

        // ∇E = 2 (∇_s^⊥)² κ⃗ + (|κ⃗|²_g − 2) κ⃗
        self.chain.clear();
        self.chain.extend_from_slice(&self.kappa);
        ops::normal_chain_with(geo, &mut self.chain, &mut self.scratch, 2);
        self.grad.clear();
        self.grad.resize(n, Vec2::zero());
        let two = r64::<R>(2.0);
        for i in 0..n {
            let k2 = self.ks[i] * self.ks[i];
            self.grad[i] = self.chain[i] * two + self.kappa[i] * (k2 - two);
        }

        let l = geo.length();
        let e = geo.integrate(|i| self.ks[i] * self.ks[i]);
        let tc = geo.integrate(|i| self.ks[i]);

        // λ = ∫ (γ²)⁻⁴ ⟨∇E, κ⃗⟩_g ds / ∫ (γ²)⁻⁴ |κ⃗|²_g ds
        let mut num = R::zero();
        let mut den = R::zero();
        for i in 0..n {
            let y2 = geo.y2[i];
            let w4 = (y2 * y2 * y2 * y2).recip();
            let metric = (y2 * y2).recip();
            num += w4 * self.grad[i].dot(self.kappa[i]) * metric * geo.v[i];
            den += w4 * self.ks[i] * self.ks[i] * geo.v[i];
        }
        let h = geo.param_step();
        num *= h;
        den *= h;
        if !(den >= r64(LAMBDA_DENOMINATOR_GUARD)) {
            return Err(Error::DegenerateMultiplier(den.to_f64().unwrap_or(f64::NAN)));
        }
        let lambda = num / den;

        let grad_l2 = geo
            .integrate(|i| self.grad[i].dot(self.grad[i]) / (geo.y2[i] * geo.y2[i]))
            .max(R::zero())
            .sqrt();
        let resid_l2 = geo
            .integrate(|i| {
                let r = self.grad[i] - self.kappa[i] * lambda;
                r.dot(r) / (geo.y2[i] * geo.y2[i])
            })
            .max(R::zero())
            .sqrt();

        Ok(CoreQuantities { l, e, tc, lambda, grad_l2, resid_l2 })
    }
}

/// Turning number by unwrapping the Euclidean tangent angle; the second
/// component is the pre-rounding winding.
pub(crate) fn turning_number_from_tangents<R: Real>(dg: &[Vec2<R>]) -> (i64, R) {
    let n = dg.len();
    let pi = R::PI();
    let two_pi = tau::<R>();
    let mut total = R::zero();
    for i in 0..n {
        let a = dg[i];
        let b = dg[(i + 1) % n];
        let tha = a.y.atan2(a.x);
        let thb = b.y.atan2(b.x);
        let mut d = thb - tha;
        while d > pi {
            d -= two_pi;
        }
        while d < -pi {
            d += two_pi;
        }
        total += d;
    }
    let winding = total / two_pi;
    let t = winding.round().to_f64().unwrap_or(0.0) as i64;
    (t, winding)
}

/// Evaluate every scalar functional of the curve.
pub fn observables<R: Real>(curve: &DiscreteCurve<R>) -> Result<ObservableRecord<R>> {
    let mut ws = Workspace::new();
    let q = ws.eval(curve)?;
    let geo = &ws.geo;
    let n = geo.len();
    let h = geo.param_step();
    let two_pi = tau::<R>();

    let mut euc = R::zero();
    for d in &geo.dg {
        euc += d.norm();
    }
    euc *= h;

    let (t, winding) = turning_number_from_tangents(&geo.dg);
    let turning_ambiguous = (winding - r64(t as f64)).abs() > r64(0.1);

    let area = geo.integrate(|i| geo.y2[i] * geo.y2[i]);

    // max over node pairs of the revolved chord through opposite angles
    let nodes = curve.nodes();
    let mut diam = R::zero();
    for i in 0..n {
        for j in i..n {
            let dx = nodes[i].y1 - nodes[j].y1;
            let sy = nodes[i].y2 + nodes[j].y2;
            let d = (dx * dx + sy * sy).sqrt();
            diam = diam.max(d);
        }
    }

    let ratio = q.l / two_pi;
    let omega2 = ratio.max(ratio.recip());

    Ok(ObservableRecord {
        hyp_length: q.l,
        euc_length: euc,
        elastic_energy: q.e,
        willmore_energy: q.e * R::PI() / r64(2.0),
        total_hyp_curvature: q.tc,
        turning_number: t,
        turning_ambiguous,
        omega2,
        rev_area_integral: area,
        rev_diameter: diam,
        lagrange: q.lambda,
    })
}

/// The three terms of the total-curvature identity
/// `∫κ ds = 2πT + ∫ ∂_sγ¹/γ² ds`, returned in that order.
pub fn total_curvature_decomposition<R: Real>(curve: &DiscreteCurve<R>) -> Result<(R, R, R)> {
    let geo = CurveGeometry::build(curve)?;
    let (_, ks) = ops::curvature_with(&geo);
    let tc = geo.integrate(|i| ks[i]);
    let (t, _) = turning_number_from_tangents(&geo.dg);
    let winding_term = tau::<R>() * r64(t as f64);
    let axis_term = geo.integrate(|i| geo.t[i].x / geo.y2[i]);
    Ok((tc, winding_term, axis_term))
}

/// Elastic gradient ∇E = 2(∇_s^⊥)²κ⃗ + |κ⃗|²_g κ⃗ − 2κ⃗ as a normal field.
pub fn elastic_gradient<R: Real>(curve: &DiscreteCurve<R>) -> Result<NodeField<R>> {
    let mut ws = Workspace::new();
    ws.eval(curve)?;
    Ok(NodeField::new(ws.grad))
}

/// Lagrange multiplier λ(γ) of the conformally constrained flow.
pub fn lagrange_multiplier<R: Real>(curve: &DiscreteCurve<R>) -> Result<R> {
    let mut ws = Workspace::new();
    Ok(ws.eval(curve)?.lambda)
}

/// Residual ∇E − λ(γ)κ⃗ and its L²(ds) norm; the constrained-flow
/// convergence criterion.
pub fn constrained_residual<R: Real>(curve: &DiscreteCurve<R>) -> Result<(NodeField<R>, R)> {
    let mut ws = Workspace::new();
    let q = ws.eval(curve)?;
    let field: Vec<Vec2<R>> = (0..curve.len())
        .map(|i| ws.grad[i] - ws.kappa[i] * q.lambda)
        .collect();
    Ok((NodeField::new(field), q.resid_l2))
}
