//! Discrete differential geometry of closed curves in the hyperbolic upper
//! half-plane: curve and field types, derivatives, curvature, normals,
//! reparametrization and isometries.

mod engine;
pub(crate) mod ops;
pub(crate) mod resample;
mod snapshot;
mod spline;

pub use engine::CurveGeometry;
pub use ops::{
    covariant_derivative, curvature_vector, normal_and_scalar_curvature, normal_derivatives,
    rescale_isometry,
};
pub use resample::{interpolated_segment_lengths, resample, SpeedMode};
pub use snapshot::{read_snapshot, snapshot_string, write_snapshot};

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::num::{r64, tau, Real};

/// Minimum node count of a discrete curve.
pub const MIN_NODES: usize = 16;
/// Height floor below which a curve counts as degenerate.
pub const Y2_FLOOR: f64 = 1e-14;
/// Hyperbolic-speed floor below which a curve counts as degenerate.
pub const SPEED_FLOOR: f64 = 1e-12;

/// Plane vector with Euclidean components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<R> {
    pub x: R,
    pub y: R,
}

impl<R: Real> Vec2<R> {
    #[inline]
    pub fn new(x: R, y: R) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn zero() -> Self {
        Vec2 { x: R::zero(), y: R::zero() }
    }

    /// Euclidean dot product.
    #[inline]
    pub fn dot(self, o: Self) -> R {
        self.x * o.x + self.y * o.y
    }

    /// Euclidean norm.
    #[inline]
    pub fn norm(self) -> R {
        self.dot(self).sqrt()
    }

    /// Rotation by +π/2.
    #[inline]
    pub fn rot90(self) -> Self {
        Vec2 { x: -self.y, y: self.x }
    }
}

impl<R: Real> Add for Vec2<R> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec2 { x: self.x + o.x, y: self.y + o.y }
    }
}

impl<R: Real> AddAssign for Vec2<R> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl<R: Real> Sub for Vec2<R> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec2 { x: self.x - o.x, y: self.y - o.y }
    }
}

impl<R: Real> Neg for Vec2<R> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec2 { x: -self.x, y: -self.y }
    }
}

impl<R: Real> Mul<R> for Vec2<R> {
    type Output = Self;
    #[inline]
    fn mul(self, s: R) -> Self {
        Vec2 { x: self.x * s, y: self.y * s }
    }
}

/// Point of the open upper half-plane, `y2 > 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HPoint<R> {
    /// Horizontal coordinate.
    pub y1: R,
    /// Height above the axis of revolution.
    pub y2: R,
}

impl<R: Real> HPoint<R> {
    #[inline]
    pub fn new(y1: R, y2: R) -> Self {
        HPoint { y1, y2 }
    }

    #[inline]
    pub fn to_vec(self) -> Vec2<R> {
        Vec2 { x: self.y1, y: self.y2 }
    }
}

/// Closed curve sampled at `N` uniformly spaced parameter values `x_i = 2πi/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteCurve<R> {
    nodes: Vec<HPoint<R>>,
}

impl<R: Real> DiscreteCurve<R> {
    /// Build a curve, checking the type invariants: `N ≥ 16` even, all heights
    /// above the floor, consecutive nodes separated.
    pub fn new(nodes: Vec<HPoint<R>>) -> Result<Self> {
        let n = nodes.len();
        if n < MIN_NODES {
            return Err(Error::Contract(format!("need at least {MIN_NODES} nodes, got {n}")));
        }
        if n % 2 != 0 {
            return Err(Error::Contract(format!("node count must be even, got {n}")));
        }
        let floor = r64::<R>(Y2_FLOOR);
        for (i, p) in nodes.iter().enumerate() {
            if !(p.y2 > floor) || !p.y1.is_finite() {
                return Err(Error::DegenerateCurve(format!(
                    "node {i} at height {:e} is outside the upper half-plane",
                    p.y2
                )));
            }
        }
        for i in 0..n {
            let q = nodes[(i + 1) % n];
            let p = nodes[i];
            let d = (q.to_vec() - p.to_vec()).norm();
            if !(d > R::zero()) {
                return Err(Error::DegenerateCurve(format!(
                    "coincident consecutive nodes {i} and {}",
                    (i + 1) % n
                )));
            }
        }
        Ok(DiscreteCurve { nodes })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Uniform parameter spacing `2π/N`.
    #[inline]
    pub fn param_step(&self) -> R {
        tau::<R>() / r64(self.nodes.len() as f64)
    }

    #[inline]
    pub fn nodes(&self) -> &[HPoint<R>] {
        &self.nodes
    }

    #[inline]
    pub fn node(&self, i: usize) -> HPoint<R> {
        self.nodes[i]
    }

    /// Parameter value of node `i`.
    #[inline]
    pub fn param(&self, i: usize) -> R {
        self.param_step() * r64(i as f64)
    }

    /// Smallest node height.
    pub fn min_height(&self) -> R {
        self.nodes.iter().map(|p| p.y2).fold(R::infinity(), R::min)
    }

    /// Largest node height.
    pub fn max_height(&self) -> R {
        self.nodes.iter().map(|p| p.y2).fold(R::zero(), R::max)
    }

    /// Curve with node order reversed (orientation flip; node 0 stays put).
    pub fn reversed(&self) -> Self {
        let n = self.nodes.len();
        let nodes = (0..n).map(|i| self.nodes[(n - i) % n]).collect();
        DiscreteCurve { nodes }
    }

    pub(crate) fn from_nodes_unchecked(nodes: Vec<HPoint<R>>) -> Self {
        DiscreteCurve { nodes }
    }
}

/// Per-node two-component field along a curve (tangents, curvature vectors,
/// gradients, velocities).
#[derive(Clone, Debug, PartialEq)]
pub struct NodeField<R> {
    values: Vec<Vec2<R>>,
}

impl<R: Real> NodeField<R> {
    pub fn new(values: Vec<Vec2<R>>) -> Self {
        NodeField { values }
    }

    pub fn zeros(n: usize) -> Self {
        NodeField { values: vec![Vec2::zero(); n] }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[Vec2<R>] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Vec2<R>] {
        &mut self.values
    }

    #[inline]
    pub fn value(&self, i: usize) -> Vec2<R> {
        self.values[i]
    }

    /// Check that the field belongs to `curve`.
    pub fn check_matches(&self, curve: &DiscreteCurve<R>) -> Result<()> {
        if self.values.len() != curve.len() {
            return Err(Error::Contract(format!(
                "field length {} does not match curve length {}",
                self.values.len(),
                curve.len()
            )));
        }
        Ok(())
    }
}
