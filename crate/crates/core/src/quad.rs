//! Quadrature and finite-difference stencils.

use crate::error::{Error, Result};
use crate::real::{from_usize, lit, Real};

/// Composite Simpson rule on a (possibly non-uniform) strictly increasing grid.
///
/// Interval pairs use the three-point rule; with an odd interval count the last
/// interval is integrated from the quadratic through the final three nodes.
pub fn simpson<T: Real>(x: &[T], f: &[T]) -> T {
    assert_eq!(x.len(), f.len(), "grid and values differ in length");
    let n = x.len();
    if n < 2 {
        return T::zero();
    }
    if n == 2 {
        return (x[1] - x[0]) * (f[0] + f[1]) / lit(2.0);
    }
    let two = lit::<T>(2.0);
    let six = lit::<T>(6.0);
    let intervals = n - 1;
    let paired = intervals - intervals % 2;
    let mut acc = T::zero();
    let mut i = 0;
    while i < paired {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        let hs = h0 + h1;
        acc += hs / six
            * ((two - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (two - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if intervals % 2 == 1 {
        acc += last_interval(&x[n - 3..], &f[n - 3..]);
    }
    acc
}

/// Integral over [x1, x2] of the quadratic interpolating three nodes.
fn last_interval<T: Real>(x: &[T], f: &[T]) -> T {
    let (a, b) = (x[1], x[2]);
    let half = (b - a) / lit(2.0);
    let mid = (a + b) / lit(2.0);
    let g = lit::<T>(1.0 / 3.0_f64.sqrt());
    let mut acc = T::zero();
    for t in [mid - half * g, mid + half * g] {
        for j in 0..3 {
            let mut l = T::one();
            for k in 0..3 {
                if k != j {
                    l = l * (t - x[k]) / (x[j] - x[k]);
                }
            }
            acc += half * l * f[j];
        }
    }
    acc
}

/// Simpson rule on a uniform grid of step `h`.
pub fn simpson_uniform<T: Real>(h: T, f: &[T]) -> T {
    let x: Vec<T> = (0..f.len()).map(|i| from_usize::<T>(i) * h).collect();
    simpson(&x, f)
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * z * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = lit(-z);
        nodes[n - 1 - i] = lit(z);
        weights[i] = lit(w);
        weights[n - 1 - i] = lit(w);
    }
    (nodes, weights)
}

/// Fornberg's finite-difference weights: `w[m][j]` approximates the m-th derivative
/// at `x0` from the values at `xs[j]`, for m up to `order`.
pub fn fornberg<T: Real>(x0: T, xs: &[T], order: usize) -> Vec<Vec<T>> {
    let n = xs.len();
    let mut c = vec![vec![T::zero(); n]; order + 1];
    c[0][0] = T::one();
    let mut c1 = T::one();
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (from_usize::<T>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - from_usize::<T>(k) * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Second-order accurate derivative of order `k` (1..=3) of sampled data.
///
/// Centered stencils in the interior, one-sided stencils of `k + 2` nodes at the ends.
pub fn derivative<T: Real>(x: &[T], f: &[T], k: usize) -> Result<Vec<T>> {
    derivative_with_end_stencil(x, f, k, k + 2)
}

/// As [`derivative`] but with an explicit one-sided stencil width at the ends.
pub fn derivative_with_end_stencil<T: Real>(
    x: &[T],
    f: &[T],
    k: usize,
    end_width: usize,
) -> Result<Vec<T>> {
    let n = x.len();
    assert_eq!(n, f.len());
    assert!((1..=3).contains(&k));
    let half = if k == 3 { 2 } else { 1 };
    let end_width = end_width.max(k + 2);
    if n < end_width.max(2 * half + 1) {
        return Err(Error::TooFewSamples { needed: end_width.max(2 * half + 1), got: n });
    }
    check_increasing(x)?;
    let mut out = vec![T::zero(); n];
    for i in 0..n {
        let (lo, hi) = if i < half {
            (0, end_width)
        } else if i + half >= n {
            (n - end_width, n)
        } else {
            (i - half, i + half + 1)
        };
        let w = fornberg(x[i], &x[lo..hi], k);
        out[i] = w[k].iter().zip(&f[lo..hi]).map(|(&a, &b)| a * b).sum();
    }
    Ok(out)
}

pub fn check_increasing<T: Real>(x: &[T]) -> Result<()> {
    for i in 0..x.len().saturating_sub(1) {
        if !(x[i + 1] > x[i]) {
            return Err(Error::DegenerateSpacing { index: i });
        }
    }
    Ok(())
}

/// `n` equispaced points on [a, b].
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / from_usize::<T>(n - 1);
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + from_usize::<T>(i) * step })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simpson_exactness() {
        // cubics with an even interval count, quadratics with an odd one
        for n in [5usize, 11] {
            let x = linspace(0.0_f64, 2.0, n);
            let f: Vec<f64> = x.iter().map(|&t| t * t * t - t + 1.0).collect();
            assert_relative_eq!(simpson(&x, &f), 4.0 - 2.0 + 2.0, max_relative = 1e-13);
        }
        for n in [6usize, 12] {
            let x = linspace(0.0_f64, 2.0, n);
            let f: Vec<f64> = x.iter().map(|&t| 3.0 * t * t - t).collect();
            assert_relative_eq!(simpson(&x, &f), 8.0 - 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn simpson_nonuniform_quadratic_exact() {
        let x = [0.0_f64, 0.1, 0.35, 0.5, 0.9, 1.0];
        let f: Vec<f64> = x.iter().map(|&t| 3.0 * t * t).collect();
        assert_relative_eq!(simpson(&x, &f), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn simpson_fourth_order_on_sine() {
        let err = |n: usize| {
            let x = linspace(0.0_f64, std::f64::consts::PI, n);
            let f: Vec<f64> = x.iter().map(|t| t.sin()).collect();
            (simpson(&x, &f) - 2.0).abs()
        };
        let order = (err(33) / err(65)).log2();
        assert!(order > 3.8, "order {order}");
    }

    #[test]
    fn gauss_legendre_integrates_degree_2n_minus_1() {
        let (x, w) = gauss_legendre::<f64>(6);
        let s: f64 = x.iter().zip(&w).map(|(&t, &wi)| wi * t.powi(10)).sum();
        assert_relative_eq!(s, 2.0 / 11.0, max_relative = 1e-13);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn fornberg_centered_second_derivative() {
        let w = fornberg(0.0_f64, &[-1.0, 0.0, 1.0], 2);
        assert_relative_eq!(w[2][0], 1.0);
        assert_relative_eq!(w[2][1], -2.0);
        assert_relative_eq!(w[1][2], 0.5);
    }

    #[test]
    fn derivative_second_order() {
        let err = |n: usize| {
            let x = linspace(0.0_f64, 1.0, n);
            let f: Vec<f64> = x.iter().map(|t| t.exp()).collect();
            let d = derivative(&x, &f, 2).unwrap();
            x.iter().zip(&d).map(|(t, v)| (v - t.exp()).abs()).fold(0.0, f64::max)
        };
        let order = (err(41) / err(81)).log2();
        assert!(order > 1.8, "order {order}");
    }

    #[test]
    fn derivative_rejects_bad_grid() {
        let x = [0.0, 1.0, 1.0, 2.0, 3.0];
        let f = [0.0; 5];
        assert!(matches!(derivative(&x, &f, 1), Err(Error::DegenerateSpacing { index: 1 })));
    }
}
