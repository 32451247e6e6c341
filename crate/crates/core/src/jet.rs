//! Fourth-order jets: a value with its first four derivatives.
//!
//! Used to push exact derivative chains through compositions such as
//! `sin(alpha * theta(s))` without finite differences.

use std::ops::{Add, Mul, Neg, Sub};

use crate::real::{lit, Real};

/// `d[k]` is the k-th derivative with respect to the independent variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub d: [T; 5],
}

impl<T: Real> Jet<T> {
    pub fn new(d: [T; 5]) -> Self {
        Self { d }
    }

    pub fn constant(c: T) -> Self {
        let z = T::zero();
        Self { d: [c, z, z, z, z] }
    }

    /// The independent variable itself, evaluated at `x`.
    pub fn var(x: T) -> Self {
        let z = T::zero();
        Self { d: [x, T::one(), z, z, z] }
    }

    pub fn value(&self) -> T {
        self.d[0]
    }

    pub fn scale(self, c: T) -> Self {
        Self { d: self.d.map(|v| v * c) }
    }

    pub fn add_const(mut self, c: T) -> Self {
        self.d[0] += c;
        self
    }

    /// Derivative jet, truncated: the fourth derivative of the result is unknown and set to zero.
    pub fn derivative(self) -> Self {
        let d = self.d;
        Self { d: [d[1], d[2], d[3], d[4], T::zero()] }
    }

    /// Composition `f(self)` given `f` and its first four derivatives at `self.value()`.
    pub fn compose(self, f: [T; 5]) -> Self {
        let g = self.d;
        let (g1, g2, g3, g4) = (g[1], g[2], g[3], g[4]);
        let three = lit::<T>(3.0);
        let four = lit::<T>(4.0);
        let six = lit::<T>(6.0);
        Self {
            d: [
                f[0],
                f[1] * g1,
                f[2] * g1 * g1 + f[1] * g2,
                f[3] * g1 * g1 * g1 + three * f[2] * g1 * g2 + f[1] * g3,
                f[4] * g1 * g1 * g1 * g1
                    + six * f[3] * g1 * g1 * g2
                    + f[2] * (three * g2 * g2 + four * g1 * g3)
                    + f[1] * g4,
            ],
        }
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.d[0].sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.d[0].sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.d[0].sinh(), self.d[0].cosh());
        self.compose([s, c, s, c, s])
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.d[0].sinh(), self.d[0].cosh());
        self.compose([c, s, c, s, c])
    }

    /// `self^p` for real `p`; requires a positive value unless `p` is an integer.
    pub fn powf(self, p: T) -> Self {
        let x = self.d[0];
        let one = T::one();
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let f0 = x.powf(p);
        let f1 = p * x.powf(p - one);
        let f2 = p * (p - one) * x.powf(p - two);
        let f3 = p * (p - one) * (p - two) * x.powf(p - three);
        let f4 = p * (p - one) * (p - two) * (p - three) * x.powf(p - lit(4.0));
        self.compose([f0, f1, f2, f3, f4])
    }

    pub fn recip(self) -> Self {
        self.powf(-T::one())
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(o.d) {
            *a += b;
        }
        Self { d }
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(o.d) {
            *a -= b;
        }
        Self { d }
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { d: self.d.map(|v| -v) }
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Self;
    /// Leibniz rule.
    fn mul(self, o: Self) -> Self {
        let (f, g) = (self.d, o.d);
        let binom: [[f64; 5]; 5] = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 3.0, 1.0, 0.0],
            [1.0, 4.0, 6.0, 4.0, 1.0],
        ];
        let mut d = [T::zero(); 5];
        for n in 0..5 {
            for k in 0..=n {
                d[n] += lit::<T>(binom[n][k]) * f[k] * g[n - k];
            }
        }
        Self { d }
    }
}
