//! Numerics for closed curves in the hyperbolic upper half-plane and the
//! surfaces of revolution they generate.
//!
//! The crate evaluates the geometric functionals of a profile curve (length,
//! elastic energy, Willmore energy, total curvature, conformal class), the
//! elastic gradient and the nonlocal Lagrange multiplier, and integrates three
//! gradient flows of the curve: the elastic flow, the Willmore flow and the
//! length-preserving (conformally constrained) Willmore flow. Analytic
//! stationary families, invariant monitors, circle fitting, singularity
//! classification and an OBJ mesh exporter round out the toolbox.
//!
//! All core math is generic over the scalar type through [`num::Real`];
//! concrete `f64` aliases live at the crate root ([`Curve`], [`Field`],
//! [`Point`]).

pub mod diagnostics;
pub mod error;
pub mod flows;
pub mod functionals;
pub mod geom;
pub mod mesh;
pub mod num;
pub mod stationary;

pub use error::{Error, Result};
pub use geom::{DiscreteCurve, HPoint, NodeField, Vec2};

/// Curve over the default `f64` scalar.
pub type Curve = geom::DiscreteCurve<f64>;
/// Per-node field over the default `f64` scalar.
pub type Field = geom::NodeField<f64>;
/// Upper half-plane point over the default `f64` scalar.
pub type Point = geom::HPoint<f64>;
