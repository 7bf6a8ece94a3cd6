//! Staggered evaluation core shared by curvature, gradients and flow
//! right-hand sides.
//!
//! Parameter derivatives use fourth-order stencils on a staggered grid:
//! quantities are differentiated node → midpoint → node, so the composed
//! second derivative keeps a tight stencil. A node-centered composition of
//! first differences annihilates the alternating grid mode; the fourth-order
//! flow operator would then leave that mode undamped and the explicit
//! integrator cannot hold it down. Staggering keeps its symbol strictly
//! negative.

use super::{DiscreteCurve, Vec2, SPEED_FLOOR, Y2_FLOOR};
use crate::error::{Error, Result};
use crate::num::{r64, tau, Real};

/// Cached per-node and per-midpoint geometry of one curve.
///
/// Midpoint arrays are indexed by their left node: entry `i` lives at
/// parameter `x_{i+1/2}`.
#[derive(Clone, Debug)]
pub struct CurveGeometry<R> {
    n: usize,
    h: R,
    /// Node heights.
    pub y2: Vec<R>,
    /// Midpoint heights.
    pub y2m: Vec<R>,
    /// ∂_xγ at midpoints.
    pub dgm: Vec<Vec2<R>>,
    /// Hyperbolic speed |∂_xγ|_g at midpoints.
    pub vm: Vec<R>,
    /// ∂_xγ at nodes.
    pub dg: Vec<Vec2<R>>,
    /// Hyperbolic speed at nodes.
    pub v: Vec<R>,
    /// Unit hyperbolic tangent at midpoints.
    pub tm: Vec<Vec2<R>>,
    /// Unit hyperbolic tangent at nodes.
    pub t: Vec<Vec2<R>>,
    /// Unit hyperbolic normal (tangent rotated by +π/2) at nodes.
    pub nrm: Vec<Vec2<R>>,
}

#[inline]
fn wrap(i: usize, off: isize, n: usize) -> usize {
    (i as isize + off).rem_euclid(n as isize) as usize
}

impl<R: Real> CurveGeometry<R> {
    pub fn empty() -> Self {
        CurveGeometry {
            n: 0,
            h: R::zero(),
            y2: Vec::new(),
            y2m: Vec::new(),
            dgm: Vec::new(),
            vm: Vec::new(),
            dg: Vec::new(),
            v: Vec::new(),
            tm: Vec::new(),
            t: Vec::new(),
            nrm: Vec::new(),
        }
    }

    pub fn build(curve: &DiscreteCurve<R>) -> Result<Self> {
        let mut g = Self::empty();
        g.load(curve)?;
        Ok(g)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn param_step(&self) -> R {
        self.h
    }

    /// Rebuild all cached arrays for `curve`, reusing allocations.
    pub fn load(&mut self, curve: &DiscreteCurve<R>) -> Result<()> {
        let n = curve.len();
        self.n = n;
        self.h = tau::<R>() / r64(n as f64);
        for buf in [&mut self.y2, &mut self.y2m, &mut self.vm, &mut self.v] {
            buf.clear();
            buf.resize(n, R::zero());
        }
        for buf in [&mut self.dgm, &mut self.dg, &mut self.tm, &mut self.t, &mut self.nrm] {
            buf.clear();
            buf.resize(n, Vec2::zero());
        }

        let nodes = curve.nodes();
        let y2_floor = r64::<R>(Y2_FLOOR);
        let speed_floor = r64::<R>(SPEED_FLOOR);
        let c24h = r64::<R>(1.0) / (r64::<R>(24.0) * self.h);
        let c16 = r64::<R>(1.0 / 16.0);
        let nine = r64::<R>(9.0);
        let c27 = r64::<R>(27.0);

        for i in 0..n {
            self.y2[i] = nodes[i].y2;
        }

        // midpoint height and derivative (fourth-order staggered stencils)
        for i in 0..n {
            let fm1 = nodes[wrap(i, -1, n)].to_vec();
            let f0 = nodes[i].to_vec();
            let f1 = nodes[wrap(i, 1, n)].to_vec();
            let f2 = nodes[wrap(i, 2, n)].to_vec();
            let d = (fm1 - f0 * c27 + f1 * c27 - f2) * c24h;
            let y2m = (-fm1.y + nine * f0.y + nine * f1.y - f2.y) * c16;
            if !(y2m > y2_floor) {
                return Err(Error::DegenerateCurve(format!(
                    "interpolated height {y2m:e} at midpoint {i} below floor"
                )));
            }
            self.dgm[i] = d;
            self.y2m[i] = y2m;
            let vm = d.norm() / y2m;
            if !(vm > speed_floor) {
                return Err(Error::DegenerateCurve(format!(
                    "hyperbolic speed {vm:e} at midpoint {i} below floor"
                )));
            }
            self.vm[i] = vm;
            self.tm[i] = d * (vm.recip());
        }

        // node derivative interpolated back from midpoints
        for i in 0..n {
            let m2 = self.dgm[wrap(i, -2, n)];
            let m1 = self.dgm[wrap(i, -1, n)];
            let m0 = self.dgm[i];
            let p1 = self.dgm[wrap(i, 1, n)];
            let d = (-m2 + m1 * nine + m0 * nine - p1) * c16;
            self.dg[i] = d;
            let v = d.norm() / self.y2[i];
            if !(v > speed_floor) {
                return Err(Error::DegenerateCurve(format!(
                    "hyperbolic speed {v:e} at node {i} below floor"
                )));
            }
            self.v[i] = v;
            let t = d * v.recip();
            self.t[i] = t;
            self.nrm[i] = t.rot90();
        }
        Ok(())
    }

    /// Covariant x-derivative of a node field, evaluated at midpoints.
    pub fn cov_node_to_mid(&self, x: &[Vec2<R>], out: &mut Vec<Vec2<R>>) {
        let n = self.n;
        out.clear();
        out.resize(n, Vec2::zero());
        let c24h = r64::<R>(1.0) / (r64::<R>(24.0) * self.h);
        let c16 = r64::<R>(1.0 / 16.0);
        let nine = r64::<R>(9.0);
        let c27 = r64::<R>(27.0);
        for i in 0..n {
            let fm1 = x[wrap(i, -1, n)];
            let f0 = x[i];
            let f1 = x[wrap(i, 1, n)];
            let f2 = x[wrap(i, 2, n)];
            let d = (fm1 - f0 * c27 + f1 * c27 - f2) * c24h;
            let xb = (-fm1 + f0 * nine + f1 * nine - f2) * c16;
            out[i] = christoffel(d, xb, self.dgm[i], self.y2m[i]);
        }
    }

    /// Covariant x-derivative of a midpoint field, evaluated at nodes.
    pub fn cov_mid_to_node(&self, w: &[Vec2<R>], out: &mut Vec<Vec2<R>>) {
        let n = self.n;
        out.clear();
        out.resize(n, Vec2::zero());
        let c24h = r64::<R>(1.0) / (r64::<R>(24.0) * self.h);
        let c16 = r64::<R>(1.0 / 16.0);
        let nine = r64::<R>(9.0);
        let c27 = r64::<R>(27.0);
        for i in 0..n {
            let m2 = w[wrap(i, -2, n)];
            let m1 = w[wrap(i, -1, n)];
            let m0 = w[i];
            let p1 = w[wrap(i, 1, n)];
            let d = (m2 - m1 * c27 + m0 * c27 - p1) * c24h;
            let wb = (-m2 + m1 * nine + m0 * nine - p1) * c16;
            out[i] = christoffel(d, wb, self.dg[i], self.y2[i]);
        }
    }

    /// Remove the tangential component at every node (hyperbolic metric).
    pub fn project_normal_node(&self, x: &mut [Vec2<R>]) {
        for i in 0..self.n {
            let c = x[i].dot(self.t[i]) / (self.y2[i] * self.y2[i]);
            x[i] = x[i] - self.t[i] * c;
        }
    }

    /// Remove the tangential component at every midpoint.
    pub fn project_normal_mid(&self, x: &mut [Vec2<R>]) {
        for i in 0..self.n {
            let c = x[i].dot(self.tm[i]) / (self.y2m[i] * self.y2m[i]);
            x[i] = x[i] - self.tm[i] * c;
        }
    }

    /// Fourth-order interpolation of a midpoint field back to nodes.
    pub fn mid_to_node(&self, w: &[Vec2<R>], out: &mut Vec<Vec2<R>>) {
        let n = self.n;
        out.clear();
        out.resize(n, Vec2::zero());
        let c16 = r64::<R>(1.0 / 16.0);
        let nine = r64::<R>(9.0);
        for i in 0..n {
            let m2 = w[wrap(i, -2, n)];
            let m1 = w[wrap(i, -1, n)];
            let m0 = w[i];
            let p1 = w[wrap(i, 1, n)];
            out[i] = (-m2 + m1 * nine + m0 * nine - p1) * c16;
        }
    }

    /// Trapezoid quadrature of `f ds` over the curve.
    #[inline]
    pub fn integrate(&self, f: impl Fn(usize) -> R) -> R {
        let mut acc = R::zero();
        for i in 0..self.n {
            acc += f(i) * self.v[i];
        }
        acc * self.h
    }

    /// Hyperbolic arclength of the curve (trapezoid).
    pub fn length(&self) -> R {
        let mut acc = R::zero();
        for i in 0..self.n {
            acc += self.v[i];
        }
        acc * self.h
    }

    /// Smallest hyperbolic distance between consecutive nodes.
    pub fn min_spacing(&self, curve: &DiscreteCurve<R>) -> R {
        let n = self.n;
        let mut smin = R::infinity();
        for i in 0..n {
            let p = curve.node(i).to_vec();
            let q = curve.node((i + 1) % n).to_vec();
            let s = (q - p).norm() / self.y2m[i];
            smin = smin.min(s);
        }
        smin
    }
}

/// Connection terms of the upper half-plane applied to a field value `xb`
/// with parameter derivative `d` at a point with derivative `dg`, height `y2`.
#[inline]
fn christoffel<R: Real>(d: Vec2<R>, xb: Vec2<R>, dg: Vec2<R>, y2: R) -> Vec2<R> {
    Vec2 {
        x: d.x - (xb.x * dg.y + xb.y * dg.x) / y2,
        y: d.y + (xb.x * dg.x - xb.y * dg.y) / y2,
    }
}
