//! Near-axis detection and singular-limit classification.

use serde::Serialize;

use crate::error::Result;
use crate::geom::{ops, CurveGeometry, DiscreteCurve};
use crate::num::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityClass {
    /// No node near the axis.
    None,
    /// One touch cluster shrinking to a single axis point, arc energy near 8.
    AsymptoticallyGeodesicCandidate,
    /// One touch cluster whose endpoints stay apart.
    GeodesicCandidate,
    Unresolved,
}

/// Classification of a (possibly near-singular) curve.
#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub theta_axis: f64,
    /// Indices with γ² below the threshold.
    pub near_axis_nodes: Vec<usize>,
    /// Number of maximal runs of nodes away from the axis.
    pub arc_count: usize,
    /// Elastic energy of each arc.
    pub arc_energies: Vec<f64>,
    /// Euclidean diameter of the near-axis node set.
    pub cluster_diameter: f64,
    pub classification: SingularityClass,
}

/// Mark near-axis nodes, split the rest into arcs, compute arc energies and
/// classify. `theta_axis ≤ 0` selects the default `0.05 · max γ²`.
pub fn classify_singularity(curve: &DiscreteCurve<f64>, theta_axis: f64) -> Result<SingularityReport> {
    let n = curve.len();
    let theta = if theta_axis > 0.0 { theta_axis } else { 0.05 * curve.max_height() };
    let near: Vec<bool> = curve.nodes().iter().map(|p| p.y2 < theta).collect();
    let near_axis_nodes: Vec<usize> = (0..n).filter(|&i| near[i]).collect();

    if near_axis_nodes.is_empty() {
        return Ok(SingularityReport {
            theta_axis: theta,
            near_axis_nodes,
            arc_count: 0,
            arc_energies: Vec::new(),
            cluster_diameter: 0.0,
            classification: SingularityClass::None,
        });
    }

    // maximal cyclic runs of non-near nodes
    let mut arcs: Vec<Vec<usize>> = Vec::new();
    // start scanning right after a near node to keep runs unbroken over the seam
    let start = near_axis_nodes[0];
    let mut current: Vec<usize> = Vec::new();
    for k in 1..=n {
        let i = (start + k) % n;
        if near[i] {
            if !current.is_empty() {
                arcs.push(std::mem::take(&mut current));
            }
        } else {
            current.push(i);
        }
    }
    if !current.is_empty() {
        arcs.push(current);
    }
    let arc_count = arcs.len();
    let clusters = cyclic_runs(&near, n);

    let geo = CurveGeometry::build(curve)?;
    let (_, ks) = ops::curvature_with(&geo);
    let h = geo.param_step();
    let arc_energies: Vec<f64> = arcs
        .iter()
        .map(|arc| arc.iter().map(|&i| ks[i] * ks[i] * geo.v[i] * h).sum())
        .collect();
    let total_arc_energy: f64 = arc_energies.iter().sum();
    let total_energy: f64 = geo.integrate(|i| ks[i] * ks[i]);

    let mut cluster_diameter = 0.0f64;
    for &i in &near_axis_nodes {
        for &j in &near_axis_nodes {
            let dx = curve.node(i).y1 - curve.node(j).y1;
            let dy = curve.node(i).y2 - curve.node(j).y2;
            cluster_diameter = cluster_diameter.max((dx * dx + dy * dy).sqrt());
        }
    }

    let classification = if clusters == 1 {
        if cluster_diameter < theta {
            if total_arc_energy >= 7.0 && total_arc_energy <= total_energy + 1e-9 {
                SingularityClass::AsymptoticallyGeodesicCandidate
            } else {
                SingularityClass::Unresolved
            }
        } else {
            SingularityClass::GeodesicCandidate
        }
    } else {
        SingularityClass::Unresolved
    };

    Ok(SingularityReport {
        theta_axis: theta,
        near_axis_nodes,
        arc_count,
        arc_energies,
        cluster_diameter,
        classification,
    })
}

/// Number of maximal cyclic runs of `true` entries.
fn cyclic_runs(mask: &[bool], n: usize) -> usize {
    let mut runs = 0;
    for i in 0..n {
        let prev = mask[(i + n - 1) % n];
        if mask[i] && !prev {
            runs += 1;
        }
    }
    if runs == 0 && mask.iter().all(|&m| m) {
        1
    } else {
        runs
    }
}

/// Count proper crossings between non-adjacent node segments (O(N²)).
pub fn count_self_intersections<R: Real>(curve: &DiscreteCurve<R>) -> usize {
    let n = curve.len();
    let seg = |i: usize| {
        (
            curve.node(i).to_vec(),
            curve.node((i + 1) % n).to_vec(),
        )
    };
    let mut count = 0;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent across the seam
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_cross(a, b, c, d) {
                count += 1;
            }
        }
    }
    count
}

fn segments_cross<R: Real>(
    a: crate::geom::Vec2<R>,
    b: crate::geom::Vec2<R>,
    c: crate::geom::Vec2<R>,
    d: crate::geom::Vec2<R>,
) -> bool {
    let orient = |p: crate::geom::Vec2<R>, q: crate::geom::Vec2<R>, r: crate::geom::Vec2<R>| {
        (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    };
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    let zero = R::zero();
    (d1 > zero) != (d2 > zero)
        && (d3 > zero) != (d4 > zero)
        && d1 != zero
        && d2 != zero
        && d3 != zero
        && d4 != zero
}
