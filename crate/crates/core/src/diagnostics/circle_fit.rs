//! Least-squares circle fitting: algebraic seed, geometric refinement.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{DiscreteCurve, HPoint};
use crate::num::{r64, Real};

/// Result of a circle fit.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CircleFit<R> {
    pub center_y1: R,
    pub center_y2: R,
    pub radius: R,
    /// RMS Euclidean point-to-circle distance over the radius.
    pub residual: R,
}

impl<R: Real> CircleFit<R> {
    pub fn center(&self) -> HPoint<R> {
        HPoint::new(self.center_y1, self.center_y2)
    }
}

/// Fit a circle to the curve nodes: algebraic (Kåsa) seed refined by at most
/// ten geometric Gauss–Newton iterations on (center, radius).
pub fn circle_fit<R: Real>(curve: &DiscreteCurve<R>) -> Result<CircleFit<R>> {
    let nodes = curve.nodes();
    let n = nodes.len();
    let nf = r64::<R>(n as f64);

    // normal equations of the linear system [2x 2y 1]·[cx cy k] = x²+y²
    let mut a = [[R::zero(); 3]; 3];
    let mut b = [R::zero(); 3];
    for p in nodes {
        let (x, y) = (p.y1, p.y2);
        let two = r64::<R>(2.0);
        let row = [two * x, two * y, R::one()];
        let rhs = x * x + y * y;
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += row[i] * row[j];
            }
            b[i] += row[i] * rhs;
        }
    }
    let sol = solve3(a, b).ok_or_else(|| {
        Error::FitFailure("algebraic system singular (collinear nodes)".into())
    })?;
    let (mut cx, mut cy) = (sol[0], sol[1]);
    let mut radius = (sol[2] + cx * cx + cy * cy).max(R::zero()).sqrt();
    if !(radius > R::zero()) {
        return Err(Error::FitFailure("algebraic seed collapsed to zero radius".into()));
    }

    for _ in 0..10 {
        // Gauss–Newton on sum (|p − c| − r)²
        let mut jt_j = [[R::zero(); 3]; 3];
        let mut jt_r = [R::zero(); 3];
        for p in nodes {
            let dx = p.y1 - cx;
            let dy = p.y2 - cy;
            let d = (dx * dx + dy * dy).sqrt();
            if !(d > r64(1e-300)) {
                return Err(Error::FitFailure("node coincides with fitted center".into()));
            }
            let res = d - radius;
            let row = [-dx / d, -dy / d, -R::one()];
            for i in 0..3 {
                for j in 0..3 {
                    jt_j[i][j] += row[i] * row[j];
                }
                jt_r[i] += row[i] * res;
            }
        }
        let Some(step) = solve3(jt_j, jt_r) else { break };
        cx -= step[0];
        cy -= step[1];
        radius -= step[2];
        if !(radius > R::zero()) {
            return Err(Error::FitFailure("Gauss–Newton radius collapsed".into()));
        }
        let sq = step[0] * step[0] + step[1] * step[1] + step[2] * step[2];
        if sq < r64(1e-30) {
            break;
        }
    }

    let mut ss = R::zero();
    for p in nodes {
        let dx = p.y1 - cx;
        let dy = p.y2 - cy;
        let res = (dx * dx + dy * dy).sqrt() - radius;
        ss += res * res;
    }
    Ok(CircleFit {
        center_y1: cx,
        center_y2: cy,
        radius,
        residual: (ss / nf).sqrt() / radius,
    })
}

/// Solve a 3×3 system by Gaussian elimination with partial pivoting.
fn solve3<R: Real>(mut a: [[R; 3]; 3], mut b: [R; 3]) -> Option<[R; 3]> {
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col].abs() < r64(1e-300) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                let v = a[col][k];
                a[row][k] = a[row][k] - f * v;
            }
            let bv = b[col];
            b[row] = b[row] - f * bv;
        }
    }
    let mut x = [R::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}
