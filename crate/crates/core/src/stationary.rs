//! Analytic stationary families, perturbation generators and
//! second-variation oracles.

use crate::error::{Error, Result};
use crate::flows::project_length;
use crate::functionals::observables;
use crate::geom::{CurveGeometry, DiscreteCurve, HPoint, NodeField, MIN_NODES};
use crate::num::{r64, tau, Real};

/// The m-fold circles of radius `r` centered at (0, 1): profile curves of
/// conformally constrained Willmore tori.
#[derive(Clone, Copy, Debug)]
pub struct CircleFamily<R> {
    pub m: u32,
    pub r: R,
}

impl<R: Real> CircleFamily<R> {
    pub fn new(m: u32, r: R) -> Result<Self> {
        if m < 1 {
            return Err(Error::Contract("circle cover count must be at least 1".into()));
        }
        if !(r > R::zero() && r < R::one()) {
            return Err(Error::Contract(format!("circle radius must lie in (0,1), got {r}")));
        }
        Ok(CircleFamily { m, r })
    }

    /// Lagrange multiplier λ_r = r⁻² − 2 ∈ (−1, ∞).
    pub fn lambda(&self) -> R {
        self.r.powi(-2) - r64(2.0)
    }

    /// Hyperbolic length 2πmr/√(1−r²).
    pub fn hyp_length(&self) -> R {
        tau::<R>() * r64(self.m as f64) * self.r / (R::one() - self.r * self.r).sqrt()
    }

    /// Elastic energy 2πm/(r√(1−r²)).
    pub fn elastic_energy(&self) -> R {
        tau::<R>() * r64(self.m as f64) / (self.r * (R::one() - self.r * self.r).sqrt())
    }

    /// Scalar hyperbolic curvature 1/r.
    pub fn curvature(&self) -> R {
        self.r.recip()
    }

    /// Turning number m.
    pub fn turning_number(&self) -> i64 {
        self.m as i64
    }
}

/// Sample the m-fold circle γ(x) = (r cos(mx), 1 + r sin(mx)) at N uniform
/// parameters.
pub fn circle_profile<R: Real>(m: u32, r: R, n: usize) -> Result<DiscreteCurve<R>> {
    CircleFamily::new(m, r)?;
    if n < MIN_NODES || n % 2 != 0 {
        return Err(Error::Contract(format!("need an even node count of at least {MIN_NODES}, got {n}")));
    }
    let mm = r64::<R>(m as f64);
    let nodes = (0..n)
        .map(|i| {
            let x = tau::<R>() * r64(i as f64) / r64(n as f64);
            HPoint::new(r * (mm * x).cos(), R::one() + r * (mm * x).sin())
        })
        .collect();
    DiscreteCurve::new(nodes)
}

/// Shape of the symmetric figure-eight family
/// `γ(x) = (sin(2x)(a + p cos x + q cos 2x), c + b cos x + d cos 2x + e cos 3x)`.
///
/// Every member satisfies γ(−x) = diag(−1,1)γ(x) exactly on an even grid,
/// has turning number 0 and self-intersects on the axis x¹ = 0 at the
/// parameters ±π/2.
#[derive(Clone, Copy, Debug)]
pub struct FigureEight<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    /// Odd-harmonic width modulation of the lobes.
    pub p: R,
    pub q: R,
    /// Even height harmonics.
    pub d: R,
    pub e: R,
}

impl<R: Real> FigureEight<R> {
    /// Plain two-lobe eight (a sin 2x, c + b cos x).
    pub fn basic(a: R, b: R, c: R) -> Self {
        FigureEight { a, b, c, p: R::zero(), q: R::zero(), d: R::zero(), e: R::zero() }
    }

    pub fn point(&self, x: R) -> HPoint<R> {
        let two = r64::<R>(2.0);
        let three = r64::<R>(3.0);
        let y1 = (two * x).sin() * (self.a + self.p * x.cos() + self.q * (two * x).cos());
        let y2 = self.c + self.b * x.cos() + self.d * (two * x).cos() + self.e * (three * x).cos();
        HPoint::new(y1, y2)
    }

    pub fn sample(&self, n: usize) -> Result<DiscreteCurve<R>> {
        if n < MIN_NODES || n % 2 != 0 {
            return Err(Error::Contract(format!(
                "need an even node count of at least {MIN_NODES}, got {n}"
            )));
        }
        let lowest = self.c - self.b + self.d - self.e;
        if !(lowest > R::zero()) {
            return Err(Error::Contract(format!(
                "figure-eight leaves the upper half-plane (bottom height {lowest})"
            )));
        }
        if !(self.a > R::zero()) || !(self.b > R::zero()) {
            return Err(Error::Contract("figure-eight needs positive a and b".into()));
        }
        let nodes = (0..n)
            .map(|i| self.point(tau::<R>() * r64(i as f64) / r64(n as f64)))
            .collect();
        DiscreteCurve::new(nodes)
    }
}

/// Sample the basic figure-eight (a sin 2x, c + b cos x).
pub fn figure_eight<R: Real>(a: R, b: R, c: R, n: usize) -> Result<DiscreteCurve<R>> {
    FigureEight::basic(a, b, c).sample(n)
}

/// Harmonic profile whose one-parameter slice c ↦ E is monotone from just
/// above 19 up through the high twenties; bisection on c places the elastic
/// energy anywhere in that window. The plain (a sin 2x, c + b cos x) family
/// never drops below E ≈ 31, too high for the near-critical figure-eight
/// experiments.
pub const FIGURE_EIGHT_SEARCH_PROFILE: FigureEight<f64> = FigureEight {
    a: 0.326,
    b: 1.0,
    c: f64::NAN, // set by the search
    p: 0.345,
    q: 0.114,
    d: 0.379,
    e: 0.114,
};
const FIG8_C_LO: f64 = 0.796;
const FIG8_C_HI: f64 = 1.15;

/// Tune the figure-eight height offset by bisection until the elastic energy
/// matches `target` within 0.1. Bracket feasibility is established by
/// evaluating E at both endpoints before the search.
pub fn figure_eight_with_energy(target: f64, n: usize) -> Result<(FigureEight<f64>, DiscreteCurve<f64>)> {
    if !(target > 16.0 && target < 24.0) {
        return Err(Error::Contract(format!(
            "energy target must lie in (16, 24), got {target}"
        )));
    }
    let energy_at = |c: f64| -> Result<f64> {
        let mut shape = FIGURE_EIGHT_SEARCH_PROFILE;
        shape.c = c;
        Ok(observables(&shape.sample(n)?)?.elastic_energy)
    };
    let (mut lo, mut hi) = (FIG8_C_LO, FIG8_C_HI);
    let e_lo = energy_at(lo)?;
    let e_hi = energy_at(hi)?;
    if !(e_lo < target && target < e_hi) {
        return Err(Error::Contract(format!(
            "energy target {target} outside the bracket [{e_lo:.3}, {e_hi:.3}] of the search profile"
        )));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let e = energy_at(mid)?;
        if (e - target).abs() < 0.1 {
            let mut shape = FIGURE_EIGHT_SEARCH_PROFILE;
            shape.c = mid;
            let curve = shape.sample(n)?;
            return Ok((shape, curve));
        }
        if e < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Contract(format!("energy bisection failed to reach {target} within 0.1")))
}

/// Radii r where the m-fold circle is unstable along the tested
/// length-preserving direction while L < 2πm: the open interval
/// (√(1+2m)/(1+m), 1/√2), empty below m = 3.
pub fn stability_window<R: Real>(m: u32) -> Result<Option<(R, R)>> {
    if m < 1 {
        return Err(Error::Contract("cover count must be at least 1".into()));
    }
    let mf = r64::<R>(m as f64);
    let lower = (R::one() + r64::<R>(2.0) * mf).sqrt() / (R::one() + mf);
    let upper = r64::<R>(0.5).sqrt();
    if lower < upper {
        Ok(Some((lower, upper)))
    } else {
        Ok(None)
    }
}

/// Closed-form second variation of E along the length-preserving family with
/// direction φ(s) = cos(√(1+λ)·((m+1)/m)·s):
/// `2π/√(1+λ) · (λ+1)(2m+1)(λ(2m+1) − m² + 2m + 1)/m³`, λ = r⁻² − 2.
pub fn second_variation_closed_form<R: Real>(m: u32, r: R) -> Result<R> {
    let fam = CircleFamily::new(m, r)?;
    let lam = fam.lambda();
    let mf = r64::<R>(m as f64);
    let two_m1 = r64::<R>(2.0) * mf + R::one();
    let factor = lam * two_m1 - mf * mf + r64::<R>(2.0) * mf + R::one();
    Ok(tau::<R>() / (R::one() + lam).sqrt() * (lam + R::one()) * two_m1 * factor / (mf * mf * mf))
}

/// The tested direction φ·ñ of the second-variation family on the sampled
/// circle: φ(s) = cos(√(1+λ)·((m+1)/m)·s) with s the cumulative hyperbolic
/// arclength, ñ the unit hyperbolic normal.
pub fn unstable_direction<R: Real>(
    m: u32,
    r: R,
    curve: &DiscreteCurve<R>,
) -> Result<NodeField<R>> {
    let fam = CircleFamily::new(m, r)?;
    let geo = CurveGeometry::build(curve)?;
    let n = geo.len();
    let lam = fam.lambda();
    let freq = (R::one() + lam).sqrt() * (r64::<R>(m as f64) + R::one()) / r64::<R>(m as f64);
    // cumulative arclength by the trapezoid rule, matching the quadrature used
    // for every other ds-integral
    let h = geo.param_step();
    let half = r64::<R>(0.5);
    let mut s = R::zero();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let phi = (freq * s).cos();
        values.push(geo.nrm[i] * phi);
        s += half * (geo.v[i] + geo.v[(i + 1) % n]) * h;
    }
    Ok(NodeField::new(values))
}

/// Finite-difference oracle for the same second variation: central second
/// difference of t ↦ (E + λ_r L)(γ + t φ ñ). The penalized functional makes
/// the value extension-independent at the critical circle.
pub fn second_variation_fd<R: Real>(m: u32, r: R, n: usize, h_fd: R) -> Result<R> {
    if !(h_fd >= r64(1e-4) && h_fd <= r64(1e-2)) {
        return Err(Error::Contract(format!(
            "finite-difference width must lie in [1e-4, 1e-2], got {h_fd}"
        )));
    }
    let fam = CircleFamily::new(m, r)?;
    let lam = fam.lambda();
    let base = circle_profile(m, r, n)?;
    let dir = unstable_direction(m, r, &base)?;
    let penalized = |t: R| -> Result<R> {
        let nodes = base
            .nodes()
            .iter()
            .zip(dir.values())
            .map(|(p, v)| HPoint::new(p.y1 + v.x * t, p.y2 + v.y * t))
            .collect();
        let curve = DiscreteCurve::new(nodes)?;
        let ob = observables(&curve)?;
        Ok(ob.elastic_energy + lam * ob.hyp_length)
    };
    let fp = penalized(h_fd)?;
    let f0 = penalized(R::zero())?;
    let fm = penalized(-h_fd)?;
    Ok((fp - f0 - f0 + fm) / (h_fd * h_fd))
}

/// Displace a curve by `eps · direction` and restore its length.
///
/// The turning number is untouched for admissible eps; along the unstable
/// direction inside the stability window the elastic energy strictly drops.
pub fn perturb<R: Real>(
    curve: &DiscreteCurve<R>,
    direction: &NodeField<R>,
    eps: R,
    l_target: R,
) -> Result<DiscreteCurve<R>> {
    direction.check_matches(curve)?;
    if eps == R::zero() {
        return Ok(curve.clone());
    }
    let nodes = curve
        .nodes()
        .iter()
        .zip(direction.values())
        .map(|(pt, v)| HPoint::new(pt.y1 + v.x * eps, pt.y2 + v.y * eps))
        .collect();
    let displaced = DiscreteCurve::new(nodes)?;
    project_length(&displaced, l_target)
}
