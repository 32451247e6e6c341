//! Scalar profiles on an arc-length grid, carried with their first two derivatives.

use crate::error::Result;
use crate::jet::Jet;
use crate::quad::{derivative, derivative_with_end_stencil, simpson};
use crate::real::{lit, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct Profile<T> {
    pub v: Vec<T>,
    pub d1: Vec<T>,
    pub d2: Vec<T>,
}

impl<T: Real> Profile<T> {
    pub fn zeros(n: usize) -> Self {
        Self { v: vec![T::zero(); n], d1: vec![T::zero(); n], d2: vec![T::zero(); n] }
    }

    /// Samples `f(s) = [value, first, second derivative]`.
    pub fn from_fn<F: Fn(T) -> [T; 3]>(s: &[T], f: F) -> Self {
        let mut p = Self::zeros(s.len());
        for (i, &si) in s.iter().enumerate() {
            let [a, b, c] = f(si);
            p.v[i] = a;
            p.d1[i] = b;
            p.d2[i] = c;
        }
        p
    }

    pub fn from_jet<F: Fn(Jet<T>) -> Jet<T>>(s: &[T], f: F) -> Self {
        Self::from_fn(s, |t| {
            let j = f(Jet::var(t));
            [j.d[0], j.d[1], j.d[2]]
        })
    }

    /// Derivatives by finite differences; slopes at the ends use one-sided four-point stencils.
    pub fn from_samples(s: &[T], v: &[T]) -> Result<Self> {
        let d1 = derivative_with_end_stencil(s, v, 1, 4)?;
        let d2 = derivative(s, v, 2)?;
        Ok(Self { v: v.to_vec(), d1, d2 })
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().chain(&self.d1).chain(&self.d2).all(|&x| x == T::zero())
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            v: self.v.iter().map(|&x| x * c).collect(),
            d1: self.d1.iter().map(|&x| x * c).collect(),
            d2: self.d2.iter().map(|&x| x * c).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: T, other: &Self) -> Self {
        let f = |a: &[T], b: &[T]| a.iter().zip(b).map(|(&x, &y)| x + c * y).collect();
        Self { v: f(&self.v, &other.v), d1: f(&self.d1, &other.d1), d2: f(&self.d2, &other.d2) }
    }

    pub fn integral(&self, s: &[T]) -> T {
        simpson(s, &self.v)
    }

    /// max(sup|v|, sup|v'|, sup|v''|) over the grid.
    pub fn c2_norm(&self) -> T {
        self.v
            .iter()
            .chain(&self.d1)
            .chain(&self.d2)
            .fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Squared W^{2,2} norm by quadrature.
    pub fn w22_norm_sq(&self, s: &[T]) -> T {
        let g: Vec<T> = (0..self.len())
            .map(|i| self.v[i] * self.v[i] + self.d1[i] * self.d1[i] + self.d2[i] * self.d2[i])
            .collect();
        simpson(s, &g)
    }

    pub fn first(&self) -> [T; 3] {
        [self.v[0], self.d1[0], self.d2[0]]
    }

    pub fn last(&self) -> [T; 3] {
        let n = self.len() - 1;
        [self.v[n], self.d1[n], self.d2[n]]
    }
}

/// Smooth bump `((1 - x^2)_+)^4` on [a, b] with x mapped to [-1, 1]; C^3 with compact support.
pub fn poly_bump<T: Real>(a: T, b: T, s: T) -> [T; 3] {
    let two = lit::<T>(2.0);
    let w = (b - a) / two;
    let x = (s - (a + b) / two) / w;
    if x.abs() >= T::one() {
        return [T::zero(); 3];
    }
    let u = T::one() - x * x;
    let v = u.powi(4);
    let dv = -lit::<T>(8.0) * x * u.powi(3);
    let ddv = -lit::<T>(8.0) * u.powi(3) + lit::<T>(48.0) * x * x * u * u;
    [v, dv / w, ddv / (w * w)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::linspace;

    #[test]
    fn bump_derivatives_match_differences() {
        let (a, b) = (1.0_f64, 3.0);
        let h = 1e-5;
        for s in [1.2, 1.9, 2.0, 2.7] {
            let [v, d1, d2] = poly_bump(a, b, s);
            let [vp, ..] = poly_bump(a, b, s + h);
            let [vm, ..] = poly_bump(a, b, s - h);
            assert!(((vp - vm) / (2.0 * h) - d1).abs() < 1e-8);
            assert!(((vp - 2.0 * v + vm) / (h * h) - d2).abs() < 1e-4);
        }
        assert_eq!(poly_bump(a, b, 0.5), [0.0; 3]);
    }

    #[test]
    fn sampled_profile_derivatives() {
        let s = linspace(0.0_f64, 1.0, 401);
        let v: Vec<f64> = s.iter().map(|t| (3.0 * t).sin()).collect();
        let p = Profile::from_samples(&s, &v).unwrap();
        assert!((p.d1[0] - 3.0).abs() < 1e-6);
        assert!((p.d2[200] + 9.0 * 1.5f64.sin()).abs() < 1e-3);
    }

    #[test]
    fn axpy_and_norms() {
        let s = linspace(0.0_f64, 1.0, 11);
        let p = Profile::from_fn(&s, |t| [t, 1.0, 0.0]);
        let q = p.axpy(-1.0, &p);
        assert!(q.is_zero());
        assert_eq!(p.c2_norm(), 1.0);
    }
}
