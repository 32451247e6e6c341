//! Clamped cubic spline with end slopes taken from the interpolating cubic of the
//! first and last four nodes, which keeps the interpolant fourth-order accurate.

use crate::error::{Error, Result};
use crate::quad::{check_increasing, fornberg};
use crate::real::{lit, Real};

#[derive(Debug, Clone)]
pub struct CubicSpline<T> {
    x: Vec<T>,
    y: Vec<T>,
    m: Vec<T>,
}

impl<T: Real> CubicSpline<T> {
    pub fn new(x: &[T], y: &[T]) -> Result<Self> {
        let n = x.len();
        assert_eq!(n, y.len());
        if n < 4 {
            return Err(Error::TooFewSamples { needed: 4, got: n });
        }
        check_increasing(x)?;
        let six = lit::<T>(6.0);
        let two = lit::<T>(2.0);
        let slope = |lo: usize, at: T| -> T {
            let w = fornberg(at, &x[lo..lo + 4], 1);
            w[1].iter().zip(&y[lo..lo + 4]).map(|(&a, &b)| a * b).sum()
        };
        let d0 = slope(0, x[0]);
        let dn = slope(n - 4, x[n - 1]);
        let h: Vec<T> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
        let mut sub = vec![T::zero(); n];
        let mut diag = vec![T::zero(); n];
        let mut sup = vec![T::zero(); n];
        let mut rhs = vec![T::zero(); n];
        diag[0] = two * h[0];
        sup[0] = h[0];
        rhs[0] = six * ((y[1] - y[0]) / h[0] - d0);
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = two * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = six * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        sub[n - 1] = h[n - 2];
        diag[n - 1] = two * h[n - 2];
        rhs[n - 1] = six * (dn - (y[n - 1] - y[n - 2]) / h[n - 2]);
        let m = solve_tridiagonal(&sub, &diag, &sup, &rhs);
        Ok(Self { x: x.to_vec(), y: y.to_vec(), m })
    }

    pub fn domain(&self) -> (T, T) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    fn interval(&self, t: T) -> usize {
        let n = self.x.len();
        let k = self.x.partition_point(|&v| v <= t);
        k.clamp(1, n - 1) - 1
    }

    /// Value and first two derivatives at `t` (extrapolates the end cubics outside the domain).
    pub fn eval(&self, t: T) -> [T; 3] {
        let i = self.interval(t);
        let six = lit::<T>(6.0);
        let two = lit::<T>(2.0);
        let h = self.x[i + 1] - self.x[i];
        let a = self.x[i + 1] - t;
        let b = t - self.x[i];
        let (mi, mj) = (self.m[i], self.m[i + 1]);
        let ci = self.y[i] / h - mi * h / six;
        let cj = self.y[i + 1] / h - mj * h / six;
        let v = mi * a * a * a / (six * h) + mj * b * b * b / (six * h) + ci * a + cj * b;
        let d1 = -mi * a * a / (two * h) + mj * b * b / (two * h) - ci + cj;
        let d2 = mi * a / h + mj * b / h;
        [v, d1, d2]
    }
}

/// Thomas algorithm; the systems built here are diagonally dominant.
pub fn solve_tridiagonal<T: Real>(sub: &[T], diag: &[T], sup: &[T], rhs: &[T]) -> Vec<T> {
    let n = diag.len();
    let mut c = vec![T::zero(); n];
    let mut d = vec![T::zero(); n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / den } else { T::zero() };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / den;
    }
    let mut out = vec![T::zero(); n];
    out[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = d[i] - c[i] * out[i + 1];
    }
    out
}
