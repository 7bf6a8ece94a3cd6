//! Surface of revolution of a profile curve: structured torus mesh, discrete
//! Willmore energy, OBJ export.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::DiscreteCurve;
use crate::num::{r64, tau, Real};

/// Area floor below which a triangle counts as degenerate.
pub const TRIANGLE_AREA_FLOOR: f64 = 1e-14;

/// Structured triangulated torus built by revolving a profile curve.
#[derive(Clone, Debug)]
pub struct RevolutionMesh<R> {
    pub vertices: Vec<[R; 3]>,
    pub faces: Vec<[u32; 3]>,
    pub n_profile: usize,
    pub k_angle: usize,
}

/// Revolve a profile curve about the x-axis:
/// `f(x, θ) = (γ¹(x), γ²(x) cos θ, γ²(x) sin θ)` on an N×K grid, two
/// consistently oriented triangles per quad.
pub fn revolve_mesh<R: Real>(curve: &DiscreteCurve<R>, k: usize) -> Result<RevolutionMesh<R>> {
    if k < 16 || k % 2 != 0 {
        return Err(Error::Contract(format!(
            "angular resolution must be even and at least 16, got {k}"
        )));
    }
    let n = curve.len();
    let mut vertices = Vec::with_capacity(n * k);
    for i in 0..n {
        let p = curve.node(i);
        for j in 0..k {
            let th = tau::<R>() * r64(j as f64) / r64(k as f64);
            vertices.push([p.y1, p.y2 * th.cos(), p.y2 * th.sin()]);
        }
    }
    let idx = |i: usize, j: usize| -> u32 { ((i % n) * k + (j % k)) as u32 };
    let mut faces = Vec::with_capacity(2 * n * k);
    for i in 0..n {
        for j in 0..k {
            let a = idx(i, j);
            let b = idx(i + 1, j);
            let c = idx(i + 1, j + 1);
            let d = idx(i, j + 1);
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    Ok(RevolutionMesh { vertices, faces, n_profile: n, k_angle: k })
}

impl<R: Real> RevolutionMesh<R> {
    /// Euler characteristic V − E + F with edge count inferred from the
    /// closed-surface relation 2E' = 3F.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices.len() as i64;
        let f = self.faces.len() as i64;
        v - 3 * f / 2 + f
    }

    /// Total triangle area.
    pub fn area(&self) -> R {
        let mut acc = R::zero();
        for face in &self.faces {
            acc += self.face_area(face);
        }
        acc
    }

    fn face_area(&self, face: &[u32; 3]) -> R {
        let p0 = self.vertices[face[0] as usize];
        let p1 = self.vertices[face[1] as usize];
        let p2 = self.vertices[face[2] as usize];
        let u = sub(p1, p0);
        let v = sub(p2, p0);
        norm(cross(u, v)) * r64(0.5)
    }
}

#[inline]
fn sub<R: Real>(a: [R; 3], b: [R; 3]) -> [R; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
fn cross<R: Real>(a: [R; 3], b: [R; 3]) -> [R; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
fn dot<R: Real>(a: [R; 3], b: [R; 3]) -> R {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn norm<R: Real>(a: [R; 3]) -> R {
    dot(a, a).sqrt()
}

/// Discrete Willmore energy `Σ_v |H_v|² A_v` with the mean curvature vector
/// from the cotangent Laplacian (`H⃗ = Δf/2`) and barycentric vertex areas.
pub fn mesh_willmore_energy<R: Real>(mesh: &RevolutionMesh<R>) -> Result<R> {
    let nv = mesh.vertices.len();
    let mut lap = vec![[R::zero(); 3]; nv];
    let mut area = vec![R::zero(); nv];
    let third = r64::<R>(1.0 / 3.0);
    let half = r64::<R>(0.5);
    let floor = r64::<R>(TRIANGLE_AREA_FLOOR);

    for face in &mesh.faces {
        let i0 = face[0] as usize;
        let i1 = face[1] as usize;
        let i2 = face[2] as usize;
        let p0 = mesh.vertices[i0];
        let p1 = mesh.vertices[i1];
        let p2 = mesh.vertices[i2];
        let e0 = sub(p2, p1); // opposite vertex 0
        let e1 = sub(p0, p2);
        let e2 = sub(p1, p0);
        let double_area = norm(cross(e2, [-e1[0], -e1[1], -e1[2]]));
        let a = double_area * half;
        if !(a > floor) {
            return Err(Error::MeshDegeneracy(a.to_f64().unwrap_or(f64::NAN)));
        }
        for &i in &[i0, i1, i2] {
            area[i] += a * third;
        }
        // cotangent of the angle at each vertex = dot of adjacent edges / 2A
        let cot0 = dot([-e1[0], -e1[1], -e1[2]], e2) / double_area;
        let cot1 = dot([-e2[0], -e2[1], -e2[2]], e0) / double_area;
        let cot2 = dot([-e0[0], -e0[1], -e0[2]], e1) / double_area;
        for (u, v, ct) in [(i1, i2, cot0), (i2, i0, cot1), (i0, i1, cot2)] {
            let w = ct * half;
            let d = sub(mesh.vertices[v], mesh.vertices[u]);
            for c in 0..3 {
                lap[u][c] += w * d[c];
                lap[v][c] -= w * d[c];
            }
        }
    }

    let mut energy = R::zero();
    for i in 0..nv {
        let a = area[i];
        // H⃗ = Δf/2, Δf = lap/area with the 1/2 cotangent weights above
        let scale = (r64::<R>(2.0) * a).recip();
        let h = [lap[i][0] * scale, lap[i][1] * scale, lap[i][2] * scale];
        energy += dot(h, h) * a;
    }
    Ok(energy)
}

/// Write the mesh as Wavefront OBJ: `v x y z` then `f i j k`, 1-based,
/// 9 significant digits, LF endings. Identical meshes produce identical
/// bytes.
pub fn write_obj<R: Real>(mesh: &RevolutionMesh<R>, path: &Path) -> Result<()> {
    let mut out = String::with_capacity(40 * (mesh.vertices.len() + mesh.faces.len()));
    for v in &mesh.vertices {
        out.push_str(&format!("v {:.8e} {:.8e} {:.8e}\n", v[0], v[1], v[2]));
    }
    for f in &mesh.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Per-vertex |H| magnitudes as CSV (`vertex,abs_h`), for inspection.
pub fn write_mean_curvature_csv<R: Real>(mesh: &RevolutionMesh<R>, path: &Path) -> Result<()> {
    let nv = mesh.vertices.len();
    let mut lap = vec![[R::zero(); 3]; nv];
    let mut area = vec![R::zero(); nv];
    let third = r64::<R>(1.0 / 3.0);
    let half = r64::<R>(0.5);
    for face in &mesh.faces {
        let i0 = face[0] as usize;
        let i1 = face[1] as usize;
        let i2 = face[2] as usize;
        let p0 = mesh.vertices[i0];
        let p1 = mesh.vertices[i1];
        let p2 = mesh.vertices[i2];
        let e0 = sub(p2, p1);
        let e1 = sub(p0, p2);
        let e2 = sub(p1, p0);
        let double_area = norm(cross(e2, [-e1[0], -e1[1], -e1[2]]));
        let a = double_area * half;
        for &i in &[i0, i1, i2] {
            area[i] += a * third;
        }
        let cot0 = dot([-e1[0], -e1[1], -e1[2]], e2) / double_area;
        let cot1 = dot([-e2[0], -e2[1], -e2[2]], e0) / double_area;
        let cot2 = dot([-e0[0], -e0[1], -e0[2]], e1) / double_area;
        for (u, v, ct) in [(i1, i2, cot0), (i2, i0, cot1), (i0, i1, cot2)] {
            let w = ct * half;
            let d = sub(mesh.vertices[v], mesh.vertices[u]);
            for c in 0..3 {
                lap[u][c] += w * d[c];
                lap[v][c] -= w * d[c];
            }
        }
    }
    let mut out = String::from("vertex,abs_h\n");
    for i in 0..nv {
        let scale = (r64::<R>(2.0) * area[i]).recip();
        let h = [lap[i][0] * scale, lap[i][1] * scale, lap[i][2] * scale];
        out.push_str(&format!("{},{:.8e}\n", i, norm(h)));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
