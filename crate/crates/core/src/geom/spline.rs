//! Periodic cubic spline interpolation on the uniform parameter grid.

use crate::num::{r64, Real};

/// Natural periodic cubic spline through `N` samples at `x_i = i·h`,
/// period `N·h`.
#[derive(Clone, Debug)]
pub struct PeriodicCubic<R> {
    values: Vec<R>,
    second: Vec<R>,
    h: R,
}

impl<R: Real> PeriodicCubic<R> {
    pub fn fit(values: &[R], h: R) -> Self {
        let n = values.len();
        let six_h2 = r64::<R>(6.0) / (h * h);
        let rhs: Vec<R> = (0..n)
            .map(|i| {
                let fm = values[(i + n - 1) % n];
                let f0 = values[i];
                let fp = values[(i + 1) % n];
                (fp - f0 - f0 + fm) * six_h2
            })
            .collect();
        let second = solve_cyclic_141(&rhs);
        PeriodicCubic { values: values.to_vec(), second, h }
    }

    #[inline]
    fn locate(&self, x: R) -> (usize, R) {
        let n = self.values.len();
        let period = self.h * r64(n as f64);
        let mut xr = x % period;
        if xr < R::zero() {
            xr += period;
        }
        let mut i = (xr / self.h).to_usize().unwrap_or(0);
        if i >= n {
            i = n - 1;
        }
        let t = (xr - self.h * r64(i as f64)) / self.h;
        (i, t)
    }

    /// Spline value at parameter `x` (periodic).
    pub fn eval(&self, x: R) -> R {
        let n = self.values.len();
        let (i, t) = self.locate(x);
        let ip = (i + 1) % n;
        let one = R::one();
        let u = one - t;
        let h2_6 = self.h * self.h / r64(6.0);
        self.values[i] * u
            + self.values[ip] * t
            + h2_6 * ((u * u * u - u) * self.second[i] + (t * t * t - t) * self.second[ip])
    }

    /// Spline derivative at parameter `x`.
    pub fn deriv(&self, x: R) -> R {
        let n = self.values.len();
        let (i, t) = self.locate(x);
        let ip = (i + 1) % n;
        let one = R::one();
        let three = r64::<R>(3.0);
        let u = one - t;
        (self.values[ip] - self.values[i]) / self.h
            + self.h / r64::<R>(6.0)
                * (-(three * u * u - one) * self.second[i] + (three * t * t - one) * self.second[ip])
    }
}

/// Solve the cyclic tridiagonal system with stencil (1, 4, 1) by
/// Sherman–Morrison reduction to two ordinary tridiagonal solves.
fn solve_cyclic_141<R: Real>(rhs: &[R]) -> Vec<R> {
    let n = rhs.len();
    let one = R::one();
    let four = r64::<R>(4.0);
    let gamma = -four;

    // modified diagonal
    let mut diag = vec![four; n];
    diag[0] = four - gamma;
    diag[n - 1] = four - one / gamma;

    let thomas = |d: &[R], b: &[R]| -> Vec<R> {
        let mut cp = vec![R::zero(); n];
        let mut dp = vec![R::zero(); n];
        cp[0] = one / d[0];
        dp[0] = b[0] / d[0];
        for i in 1..n {
            let m = d[i] - cp[i - 1];
            cp[i] = one / m;
            dp[i] = (b[i] - dp[i - 1]) / m;
        }
        let mut x = vec![R::zero(); n];
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        x
    };

    let y = thomas(&diag, rhs);
    let mut u = vec![R::zero(); n];
    u[0] = gamma;
    u[n - 1] = one;
    let z = thomas(&diag, &u);

    // v = (1, 0, ..., 0, 1/gamma)
    let vy = y[0] + y[n - 1] / gamma;
    let vz = z[0] + z[n - 1] / gamma;
    let factor = vy / (one + vz);
    (0..n).map(|i| y[i] - factor * z[i]).collect()
}
