//! Curve operations: covariant derivatives, curvature, normals, isometries.

use super::engine::CurveGeometry;
use super::{DiscreteCurve, HPoint, NodeField, Vec2};
use crate::error::{Error, Result};
use crate::num::{r64, Real};

/// Covariant derivative ∇_{∂_xγ}X of a node field along the curve.
///
/// Component form on the upper half-plane:
/// `(∂_xX¹ − (X¹∂_xγ² + X²∂_xγ¹)/γ², ∂_xX² + (X¹∂_xγ¹ − X²∂_xγ²)/γ²)`,
/// with `∂_x` taken as second-order central differences on the periodic grid.
pub fn covariant_derivative<R: Real>(
    curve: &DiscreteCurve<R>,
    field: &NodeField<R>,
) -> Result<NodeField<R>> {
    field.check_matches(curve)?;
    let n = curve.len();
    let half = r64::<R>(0.5) / curve.param_step();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let ip = (i + 1) % n;
        let im = (i + n - 1) % n;
        let dx = (field.value(ip) - field.value(im)) * half;
        let dg = (curve.node(ip).to_vec() - curve.node(im).to_vec()) * half;
        let xv = field.value(i);
        let y2 = curve.node(i).y2;
        out.push(Vec2 {
            x: dx.x - (xv.x * dg.y + xv.y * dg.x) / y2,
            y: dx.y + (xv.x * dg.x - xv.y * dg.y) / y2,
        });
    }
    Ok(NodeField::new(out))
}

/// Curvature vector κ⃗ = ∇_{∂_sγ}∂_sγ, with ∂_s = |∂_xγ|_g⁻¹ ∂_x.
///
/// The result is projected onto the unit normal, so `κ⃗ = κ n⃗` holds exactly
/// at every node.
pub fn curvature_vector<R: Real>(curve: &DiscreteCurve<R>) -> Result<NodeField<R>> {
    let geo = CurveGeometry::build(curve)?;
    let (kappa, _) = curvature_with(&geo);
    Ok(NodeField::new(kappa))
}

/// Unit hyperbolic normal (tangent rotated by +π/2) and scalar curvature
/// κ = ⟨κ⃗, n⃗⟩_g.
pub fn normal_and_scalar_curvature<R: Real>(
    curve: &DiscreteCurve<R>,
) -> Result<(NodeField<R>, Vec<R>)> {
    let geo = CurveGeometry::build(curve)?;
    let (_, ks) = curvature_with(&geo);
    Ok((NodeField::new(geo.nrm.clone()), ks))
}

/// κ⃗ and its scalar part on a prebuilt geometry.
pub(crate) fn curvature_with<R: Real>(geo: &CurveGeometry<R>) -> (Vec<Vec2<R>>, Vec<R>) {
    let n = geo.len();
    let mut raw = Vec::new();
    geo.cov_mid_to_node(&geo.tm, &mut raw);
    let mut ks = vec![R::zero(); n];
    let mut kappa = vec![Vec2::zero(); n];
    for i in 0..n {
        let k = raw[i] * geo.v[i].recip();
        let s = k.dot(geo.nrm[i]) / (geo.y2[i] * geo.y2[i]);
        ks[i] = s;
        kappa[i] = geo.nrm[i] * s;
    }
    (kappa, ks)
}

/// k-fold normal derivative (∇_s^⊥)^k κ⃗, alternating a covariant arclength
/// derivative with pointwise removal of the tangential component.
pub fn normal_derivatives<R: Real>(curve: &DiscreteCurve<R>, k: usize) -> Result<NodeField<R>> {
    if k > 4 {
        return Err(Error::Contract(format!("normal derivative order {k} exceeds 4")));
    }
    let geo = CurveGeometry::build(curve)?;
    let (kappa, _) = curvature_with(&geo);
    let mut out = kappa;
    let mut buf = Vec::new();
    normal_chain_with(&geo, &mut out, &mut buf, k);
    Ok(NodeField::new(out))
}

/// Apply (∇_s^⊥)^k in place to a normal node field, using `buf` as scratch.
pub(crate) fn normal_chain_with<R: Real>(
    geo: &CurveGeometry<R>,
    field: &mut Vec<Vec2<R>>,
    buf: &mut Vec<Vec2<R>>,
    k: usize,
) {
    let n = geo.len();
    let mut at_node = true;
    for _ in 0..k {
        if at_node {
            geo.cov_node_to_mid(field, buf);
            for i in 0..n {
                buf[i] = buf[i] * geo.vm[i].recip();
            }
            geo.project_normal_mid(buf);
        } else {
            geo.cov_mid_to_node(field, buf);
            for i in 0..n {
                buf[i] = buf[i] * geo.v[i].recip();
            }
            geo.project_normal_node(buf);
        }
        std::mem::swap(field, buf);
        at_node = !at_node;
    }
    if !at_node {
        geo.mid_to_node(field, buf);
        std::mem::swap(field, buf);
        geo.project_normal_node(field);
    }
}

/// Hyperbolic isometry `(y1, y2) ↦ ((y1 − p)/ρ, y2/ρ)`.
///
/// All hyperbolic observables are invariant under it.
pub fn rescale_isometry<R: Real>(
    curve: &DiscreteCurve<R>,
    rho: R,
    p: R,
) -> Result<DiscreteCurve<R>> {
    if !(rho > R::zero()) {
        return Err(Error::Contract(format!("isometry scale must be positive, got {rho}")));
    }
    let nodes = curve
        .nodes()
        .iter()
        .map(|q| HPoint::new((q.y1 - p) / rho, q.y2 / rho))
        .collect();
    DiscreteCurve::new(nodes)
}

