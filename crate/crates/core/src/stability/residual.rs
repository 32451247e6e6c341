//! Closed-form solutions of (rü)'' + μ(qu̇)' + pu = ν and the residual used to check them.

use serde::Serialize;

use crate::critical::{CriticalEvaluator, CriticalParams};
use crate::jet::Jet;
use crate::linalg::det_dense;
use crate::real::{from_usize, lit, to_f64, Real};

use super::regime::{Regime, RegimeParams};

/// A function of s with exact derivatives up to order four.
pub trait JetProfile<T: Real>: Sync {
    fn jet(&self, s: T) -> Jet<T>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trig {
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hyp {
    Sinh,
    Cosh,
}

/// trig(ω θ) · hyp(β θ) · θ^k with k ∈ {0, 1}, composed with θ(s).
#[derive(Debug, Clone, Copy)]
pub struct BasisFunction<T> {
    pub trig: Trig,
    pub freq: T,
    pub hyp: Option<(Hyp, T)>,
    pub theta_factor: bool,
    pub eval: CriticalEvaluator<T>,
}

impl<T: Real> BasisFunction<T> {
    pub fn of_theta(&self, th: Jet<T>) -> Jet<T> {
        let arg = th.scale(self.freq);
        let mut u = match self.trig {
            Trig::Sin => arg.sin(),
            Trig::Cos => arg.cos(),
        };
        if let Some((h, b)) = self.hyp {
            let arg = th.scale(b);
            u = u * match h {
                Hyp::Sinh => arg.sinh(),
                Hyp::Cosh => arg.cosh(),
            };
        }
        if self.theta_factor {
            u = u * th;
        }
        u
    }

    pub fn label(&self) -> String {
        let t = match self.trig {
            Trig::Sin => "sin",
            Trig::Cos => "cos",
        };
        let mut out = format!("{t}({:.6} theta)", to_f64(self.freq));
        if let Some((h, b)) = self.hyp {
            let h = match h {
                Hyp::Sinh => "sinh",
                Hyp::Cosh => "cosh",
            };
            out = format!("{out} {h}({:.6} theta)", to_f64(b));
        }
        if self.theta_factor {
            out = format!("theta {out}");
        }
        out
    }
}

impl<T: Real> JetProfile<T> for BasisFunction<T> {
    fn jet(&self, s: T) -> Jet<T> {
        self.of_theta(self.eval.theta_jet(s))
    }
}

#[derive(Debug, Clone)]
pub struct SolutionBasis<T> {
    pub regime: RegimeParams<T>,
    pub functions: [BasisFunction<T>; 4],
}

/// The four homogeneous solutions for the regime of μ.
pub fn solution_basis<T: Real>(mu: T, params: &CriticalParams<T>) -> SolutionBasis<T> {
    basis_for(RegimeParams::from_params(mu, params), params)
}

pub fn basis_for<T: Real>(rp: RegimeParams<T>, params: &CriticalParams<T>) -> SolutionBasis<T> {
    let eval = CriticalEvaluator { params: *params };
    let f = |trig, freq, hyp, theta_factor| BasisFunction { trig, freq, hyp, theta_factor, eval };
    let a = rp.alpha;
    let functions = match rp.regime {
        Regime::Below => {
            let b = rp.beta;
            [
                f(Trig::Cos, a, Some((Hyp::Sinh, b)), false),
                f(Trig::Sin, a, Some((Hyp::Cosh, b)), false),
                f(Trig::Sin, a, Some((Hyp::Sinh, b)), false),
                f(Trig::Cos, a, Some((Hyp::Cosh, b)), false),
            ]
        }
        Regime::Critical => [
            f(Trig::Sin, a, None, false),
            f(Trig::Cos, a, None, false),
            f(Trig::Sin, a, None, true),
            f(Trig::Cos, a, None, true),
        ],
        Regime::Above => {
            let (z1, z2) = rp.z();
            [
                f(Trig::Sin, z1, None, false),
                f(Trig::Sin, z2, None, false),
                f(Trig::Cos, z1, None, false),
                f(Trig::Cos, z2, None, false),
            ]
        }
    };
    SolutionBasis { regime: rp, functions }
}

impl<T: Real> SolutionBasis<T> {
    /// Matrix of s-derivatives of orders 0..3 at s = 0 (rows) for each basis function (columns).
    pub fn boundary_matrix(&self) -> [[T; 4]; 4] {
        let mut m = [[T::zero(); 4]; 4];
        for (j, f) in self.functions.iter().enumerate() {
            let jet = f.jet(T::zero());
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = jet.d[i];
            }
        }
        m
    }

    pub fn wronskian_numeric(&self) -> T {
        det_dense(self.boundary_matrix())
    }

    /// Closed-form value of the determinant at s = 0.
    pub fn wronskian_closed_form(&self) -> T {
        let h0 = self.functions[0].eval.curvature(T::zero());
        let h6 = h0.powi(6);
        let rp = &self.regime;
        let (a, b) = (rp.alpha, rp.beta);
        match rp.regime {
            // cofactor expansion of the first row [0 0 0 1] carries the sign (−1)^{1+4}
            Regime::Below => lit::<T>(4.0) * h6 * a * a * b * b * (a * a + b * b),
            Regime::Critical => lit::<T>(4.0) * h6 * a.powi(4),
            Regime::Above => {
                let (z1, z2) = rp.z();
                let d = z1 * z1 - z2 * z2;
                -h6 * z1 * z2 * d * d
            }
        }
    }
}

/// Particular solution for a constant right-hand side ν.
#[derive(Debug, Clone, Copy)]
pub struct ParticularSolution<T> {
    pub mu: T,
    pub nu: T,
    pub eval: CriticalEvaluator<T>,
}

impl<T: Real> JetProfile<T> for ParticularSolution<T> {
    fn jet(&self, s: T) -> Jet<T> {
        let p = &self.eval.params;
        if self.mu == T::one() {
            // νθ(s − L)/(2λ)
            let th = self.eval.theta_jet(s);
            let w = Jet::var(s).add_const(-p.half_length);
            (th * w).scale(self.nu / (lit::<T>(2.0) * p.lambda))
        } else {
            let k = self.nu / ((lit::<T>(2.0) - p.lambda) * (T::one() - self.mu));
            self.eval.curvature_jet(s).recip().scale(k)
        }
    }
}

/// Pointwise value of (rü)'' + μ(qu̇)' + pu − ν and the scale max |pu|.
fn operator<T: Real>(u: Jet<T>, h: Jet<T>, lambda: T, mu: T, nu: T) -> (T, T) {
    let two = lit::<T>(2.0);
    let r = h.powf(lit(-3.0)).scale(two);
    let q = h.recip().scale(two);
    let ud = u.derivative();
    let udd = ud.derivative();
    let pu = (two - lambda) * h.d[0] * u.d[0];
    let v = (r * udd).d[2] + mu * (q * ud).d[1] + pu - nu;
    (v, pu.abs())
}

/// max |(rü)'' + μ(qu̇)' + pu − ν| over `samples` interior points, scaled by max|pu| + |ν| + floor.
pub fn ode_residual<T: Real, U: JetProfile<T> + ?Sized>(
    u: &U,
    mu: T,
    nu: T,
    params: &CriticalParams<T>,
    samples: usize,
) -> T {
    let ev = CriticalEvaluator { params: *params };
    let two_l = lit::<T>(2.0) * params.half_length;
    let mut worst = T::zero();
    let mut scale = T::zero();
    for i in 1..=samples {
        let s = two_l * from_usize::<T>(i) / from_usize::<T>(samples + 1);
        let (v, pu) = operator(u.jet(s), ev.curvature_jet(s), params.lambda, mu, nu);
        worst = worst.max(v.abs());
        scale = scale.max(pu);
    }
    worst / (scale + nu.abs() + T::min_positive_value().sqrt())
}

/// Chebyshev fit of a profile as a function of θ ∈ [0, 2π], differentiated spectrally.
#[derive(Debug, Clone)]
pub struct ChebyshevProfile<T> {
    /// `coeffs[k]` holds the series of the k-th θ-derivative, k = 0..4.
    coeffs: Vec<Vec<T>>,
    eval: CriticalEvaluator<T>,
}

fn cheb_derivative<T: Real>(c: &[T]) -> Vec<T> {
    let n = c.len();
    let mut d = vec![T::zero(); n + 1];
    for k in (1..n).rev() {
        d[k - 1] = d[k + 1] + lit::<T>(2.0 * k as f64) * c[k];
    }
    d.truncate(n);
    d[0] /= lit(2.0);
    d
}

fn clenshaw<T: Real>(c: &[T], t: T) -> T {
    let (mut b1, mut b2) = (T::zero(), T::zero());
    let two_t = lit::<T>(2.0) * t;
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + two_t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + t * b1 - b2
}

impl<T: Real> ChebyshevProfile<T> {
    /// Samples `f(s)` at `nodes` Gauss–Chebyshev points in θ and keeps degrees below `degree`.
    pub fn fit<F: Fn(T) -> T>(params: &CriticalParams<T>, f: F, nodes: usize, degree: usize) -> Self {
        let ev = CriticalEvaluator { params: *params };
        let pi = T::PI();
        let nf = from_usize::<T>(nodes);
        let vals: Vec<T> = (0..nodes)
            .map(|j| {
                let t = (pi * (from_usize::<T>(j) + lit(0.5)) / nf).cos();
                f(params.half_length + params.kappa * (params.sigma * t).sin())
            })
            .collect();
        let mut c: Vec<T> = (0..degree.min(nodes))
            .map(|k| {
                let sum: T = vals
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| v * (pi * from_usize::<T>(k) * (from_usize::<T>(j) + lit(0.5)) / nf).cos())
                    .sum();
                sum * lit::<T>(2.0) / nf
            })
            .collect();
        c[0] /= lit(2.0);
        let mut coeffs = vec![c];
        for k in 1..5 {
            // θ = π(1 + t)
            let d: Vec<T> = cheb_derivative(&coeffs[k - 1]).into_iter().map(|x| x / pi).collect();
            coeffs.push(d);
        }
        Self { coeffs, eval: ev }
    }

    pub fn theta_derivatives(&self, theta: T) -> [T; 5] {
        let t = theta / T::PI() - T::one();
        let mut out = [T::zero(); 5];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] = clenshaw(c, t);
        }
        out
    }

    /// Magnitude of the highest retained coefficient relative to the largest one.
    pub fn tail_ratio(&self) -> T {
        let c = &self.coeffs[0];
        let peak = c.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        c[c.len() - 1].abs() / peak
    }
}

impl<T: Real> JetProfile<T> for ChebyshevProfile<T> {
    fn jet(&self, s: T) -> Jet<T> {
        let th = self.eval.theta_jet(s);
        th.compose(self.theta_derivatives(th.d[0]))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualCheck {
    pub label: String,
    pub mu: f64,
    pub nu: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WronskianCheck {
    pub regime: Regime,
    pub mu: f64,
    pub numeric: f64,
    pub closed_form: f64,
    pub rel_err: f64,
}

pub fn wronskian_check<T: Real>(mu: T, params: &CriticalParams<T>) -> WronskianCheck {
    let b = solution_basis(mu, params);
    wronskian_for(&b)
}

pub fn wronskian_for<T: Real>(b: &SolutionBasis<T>) -> WronskianCheck {
    let numeric = b.wronskian_numeric();
    let closed = b.wronskian_closed_form();
    WronskianCheck {
        regime: b.regime.regime,
        mu: to_f64(b.regime.mu),
        numeric: to_f64(numeric),
        closed_form: to_f64(closed),
        rel_err: to_f64((numeric - closed).abs() / closed.abs()),
    }
}

/// Residuals of one basis per regime (below, at and above μ0) and of both particular solutions.
pub fn closed_form_residuals<T: Real>(params: &CriticalParams<T>, mu_above: T, samples: usize) -> Vec<ResidualCheck> {
    let mu0 = super::regime::mu0_threshold(params);
    let bases = [
        basis_for(RegimeParams::from_params(mu0 * lit(0.5), params), params),
        basis_for(RegimeParams::critical(params.ratio()), params),
        basis_for(RegimeParams::from_params(mu_above, params), params),
    ];
    let mut out = Vec::new();
    for b in &bases {
        let mu = b.regime.mu;
        for f in &b.functions {
            out.push(ResidualCheck {
                label: f.label(),
                mu: to_f64(mu),
                nu: 0.0,
                residual: to_f64(ode_residual(f, mu, T::zero(), params, samples)),
            });
        }
    }
    let eval = CriticalEvaluator { params: *params };
    for mu in [mu_above, T::one()] {
        let nu = T::one();
        let u = ParticularSolution { mu, nu, eval };
        out.push(ResidualCheck {
            label: if mu == T::one() { "particular, mu = 1".into() } else { "particular, mu != 1".into() },
            mu: to_f64(mu),
            nu: to_f64(nu),
            residual: to_f64(ode_residual(&u, mu, nu, params, samples)),
        });
    }
    out
}
