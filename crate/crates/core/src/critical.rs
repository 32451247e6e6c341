//! Closed-form equilibrium curves γ(x0, L), their invariants and the
//! area–length bijection.

use std::sync::Arc;

use serde::Serialize;

use crate::curvegeom::{
    enclosed_area, frame_and_curvature, total_inverse_curvature, CurveFrame, CurveSource,
    DiscreteCurve, Vec2,
};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quad::derivative;
use crate::real::{lit, to_f64, Real};
use crate::roots::brent;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalParams<T> {
    pub x0: T,
    #[serde(rename = "L")]
    pub half_length: T,
    pub sigma: T,
    pub kappa: T,
    pub lambda: T,
}

impl<T: Real> CriticalParams<T> {
    /// x0 / (L + x0); every stability quantity depends on the parameters only through it.
    pub fn ratio(&self) -> T {
        self.x0 / (self.half_length + self.x0)
    }
}

/// σ = π√(x0/(L+x0)), κ = L/sin σ, λ = 2L/(L+x0); requires L > 3x0.
pub fn make_params<T: Real>(x0: T, half_length: T) -> Result<CriticalParams<T>> {
    if !(x0 > T::zero()) || !x0.is_finite() {
        return Err(Error::InvalidInput(format!("x0 must be positive, got {x0}")));
    }
    if !(half_length > lit::<T>(3.0) * x0) || !half_length.is_finite() {
        return Err(Error::ThresholdViolation(format!(
            "L = {half_length} must exceed 3 x0 = {} (area above 3/2 pi x0^2)",
            lit::<T>(3.0) * x0
        )));
    }
    Ok(unchecked_params(x0, half_length))
}

fn unchecked_params<T: Real>(x0: T, l: T) -> CriticalParams<T> {
    let sigma = T::PI() * (x0 / (l + x0)).sqrt();
    CriticalParams {
        x0,
        half_length: l,
        sigma,
        kappa: l / sigma.sin(),
        lambda: lit::<T>(2.0) * l / (l + x0),
    }
}

/// Analytic evaluators for x, y, θ and H along the critical curve.
#[derive(Debug, Clone, Copy)]
pub struct CriticalEvaluator<T> {
    pub params: CriticalParams<T>,
}

impl<T: Real> CriticalEvaluator<T> {
    /// arcsin((s − L)/κ) with the argument clamped to [−1, 1].
    fn phase(&self, s: T) -> T {
        let p = &self.params;
        ((s - p.half_length) / p.kappa).max(-T::one()).min(T::one()).asin()
    }

    pub fn theta(&self, s: T) -> T {
        T::PI() * (T::one() + self.phase(s) / self.params.sigma)
    }

    pub fn x(&self, s: T) -> T {
        let p = &self.params;
        let (pi, sg) = (T::PI(), p.sigma);
        let ph = self.phase(s);
        -p.kappa / lit(2.0)
            * (sg / (pi + sg) * ((pi + sg) / sg * ph).sin() + sg / (pi - sg) * ((pi - sg) / sg * ph).sin())
    }

    pub fn y(&self, s: T) -> T {
        let p = &self.params;
        let (pi, sg) = (T::PI(), p.sigma);
        let ph = self.phase(s);
        p.kappa / lit(2.0)
            * (sg / (pi + sg) * ((pi + sg) / sg * ph).cos() + sg / (pi - sg) * ((pi - sg) / sg * ph).cos())
            + pi * p.x0 / (sg * sg.tan())
    }

    /// H(s) = π / (σ √(κ² − (s − L)²)).
    pub fn curvature(&self, s: T) -> T {
        let p = &self.params;
        let w = s - p.half_length;
        T::PI() / (p.sigma * (p.kappa * p.kappa - w * w).sqrt())
    }

    /// H and its first four derivatives in s.
    pub fn curvature_jet(&self, s: T) -> Jet<T> {
        let p = &self.params;
        let w = Jet::var(s).add_const(-p.half_length);
        let radicand = (-(w * w)).add_const(p.kappa * p.kappa);
        radicand.powf(lit(-0.5)).scale(T::PI() / p.sigma)
    }

    /// θ and its first four derivatives (θ' = H).
    pub fn theta_jet(&self, s: T) -> Jet<T> {
        let h = self.curvature_jet(s);
        Jet::new([self.theta(s), h.d[0], h.d[1], h.d[2], h.d[3]])
    }
}

impl<T: Real> CurveSource<T> for CriticalEvaluator<T> {
    fn eval(&self, s: T) -> [Vec2<T>; 4] {
        let (sn, cs) = self.theta(s).sin_cos();
        let hj = self.curvature_jet(s);
        let (h, dh) = (hj.d[0], hj.d[1]);
        [
            [self.x(s), self.y(s)],
            [cs, sn],
            [-h * sn, h * cs],
            [-dh * sn - h * h * cs, dh * cs - h * h * sn],
        ]
    }
}

/// Critical curve: parameters, analytic evaluators and an n-sample view.
#[derive(Debug, Clone)]
pub struct CriticalCurve<T: Real> {
    pub params: CriticalParams<T>,
    pub eval: CriticalEvaluator<T>,
    pub curve: DiscreteCurve<T>,
}

impl<T: Real> CriticalCurve<T> {
    pub fn frame(&self) -> Result<CurveFrame<T>> {
        frame_and_curvature(&self.curve)
    }

    pub fn s(&self) -> &[T] {
        self.curve.s()
    }
}

pub fn build_critical_curve<T: Real>(params: CriticalParams<T>, n: usize) -> Result<CriticalCurve<T>> {
    let eval = CriticalEvaluator { params };
    let curve = DiscreteCurve::from_source(Arc::new(eval), params.x0, params.half_length, n)?;
    Ok(CriticalCurve { params, eval, curve })
}

/// max over samples of |2 + (H⁻²)'' − λ| from the analytic curvature chain.
pub fn el_residual<T: Real>(c: &CriticalCurve<T>) -> T {
    let two = lit::<T>(2.0);
    c.curve
        .s()
        .iter()
        .map(|&s| {
            let inv2 = c.eval.curvature_jet(s).powf(-two);
            (two + inv2.d[2] - c.params.lambda).abs()
        })
        .fold(T::zero(), T::max)
}

/// Same residual for an arbitrary sampled curve, with (H⁻²)'' from finite differences.
pub fn el_residual_discrete<T: Real>(curve: &DiscreteCurve<T>, lambda: T) -> Result<T> {
    let frame = frame_and_curvature(curve)?;
    let inv2: Vec<T> = frame.curvature.iter().map(|&h| T::one() / (h * h)).collect();
    let dd = derivative(curve.s(), &inv2, 2)?;
    let two = lit::<T>(2.0);
    Ok(dd.iter().map(|&d| (two + d - lambda).abs()).fold(T::zero(), T::max))
}

/// 𝒜0 = πκ²σ²/(2(π²−σ²)) + πκ²σ(π²+σ²) sin 2σ / (4(π²−σ²)²).
pub fn area_closed_form<T: Real>(p: &CriticalParams<T>) -> T {
    let (pi, sg, k) = (T::PI(), p.sigma, p.kappa);
    let d = pi * pi - sg * sg;
    pi * k * k * sg * sg / (lit::<T>(2.0) * d)
        + pi * k * k * sg * (pi * pi + sg * sg) * (lit::<T>(2.0) * sg).sin() / (lit::<T>(4.0) * d * d)
}

/// The alternative area expression (L+x0)/(2π)·(πq/sin πq)²·(L + (2L+x0) sin(2πq)/(2πq)),
/// q = √(x0/(L+x0)). Kept for auditing; it does not match quadrature.
pub fn area_statement_form<T: Real>(p: &CriticalParams<T>) -> T {
    let (pi, x0, l) = (T::PI(), p.x0, p.half_length);
    let two = lit::<T>(2.0);
    let q = (x0 / (l + x0)).sqrt();
    let a = pi * q / (pi * q).sin();
    (l + x0) / (two * pi) * a * a * (l + (two * l + x0) * (two * pi * q).sin() / (two * pi * q))
}

/// ℱ(γ) = κ²σ(2σ + sin 2σ)/(2π).
pub fn f_closed_form<T: Real>(p: &CriticalParams<T>) -> T {
    let two = lit::<T>(2.0);
    p.kappa * p.kappa * p.sigma * (two * p.sigma + (two * p.sigma).sin()) / (two * T::PI())
}

/// (2(π²−σ²)σ + (π²+σ²) sin 2σ) / (2(π²−σ²)σ + (π²−σ²) sin 2σ); equals λ𝒜0/ℱ.
pub fn hk_fraction<T: Real>(p: &CriticalParams<T>) -> T {
    let (pi, sg) = (T::PI(), p.sigma);
    let two = lit::<T>(2.0);
    let s2 = (two * sg).sin();
    let m = pi * pi - sg * sg;
    (two * m * sg + (pi * pi + sg * sg) * s2) / (two * m * sg + m * s2)
}

/// 𝒜0 / ℱ = fraction / λ, which exceeds 1/2 for every admissible (x0, L).
pub fn hk_counterexample_ratio<T: Real>(p: &CriticalParams<T>) -> T {
    hk_fraction(p) / p.lambda
}

/// The unique L > 3x0 with area_closed_form = A0.
pub fn solve_length<T: Real>(x0: T, a0: T, cap: T) -> Result<T> {
    if !(x0 > T::zero()) {
        return Err(Error::InvalidInput(format!("x0 must be positive, got {x0}")));
    }
    let threshold = lit::<T>(1.5) * T::PI() * x0 * x0;
    if !(a0 > threshold) {
        return Err(Error::ThresholdViolation(format!(
            "area {a0} must exceed 3/2 pi x0^2 = {threshold}"
        )));
    }
    let area = |l: T| area_closed_form(&unchecked_params(x0, l)) - a0;
    let lo = lit::<T>(3.0) * x0;
    let mut hi = lit::<T>(6.0) * x0;
    while area(hi) < T::zero() {
        hi *= lit(2.0);
        if hi > cap * x0 {
            return Err(Error::NoBracket { cap: to_f64(cap * x0) });
        }
    }
    brent(area, lo, hi, T::zero(), 300)
}

/// Which of the two area expressions agrees with quadrature of the sampled curve.
#[derive(Debug, Clone, Serialize)]
pub struct AreaFormAudit {
    pub quadrature: f64,
    pub derived_form: f64,
    pub statement_form: f64,
    pub derived_matches: bool,
    pub statement_matches: bool,
}

pub fn audit_area_forms<T: Real>(p: &CriticalParams<T>, n: usize, tol: f64) -> Result<AreaFormAudit> {
    let c = build_critical_curve(*p, n)?;
    let q = to_f64(enclosed_area(&c.curve)?);
    let d = to_f64(area_closed_form(p));
    let s = to_f64(area_statement_form(p));
    Ok(AreaFormAudit {
        quadrature: q,
        derived_form: d,
        statement_form: s,
        derived_matches: (q - d).abs() <= tol,
        statement_matches: (q - s).abs() <= tol,
    })
}

/// JSON report for one parameter pair.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalReport {
    pub sigma: f64,
    pub kappa: f64,
    pub lambda: f64,
    pub area: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub el_residual: f64,
    pub hk_ratio: f64,
}

impl CriticalReport {
    pub fn new<T: Real>(c: &CriticalCurve<T>) -> Self {
        let p = &c.params;
        Self {
            sigma: to_f64(p.sigma),
            kappa: to_f64(p.kappa),
            lambda: to_f64(p.lambda),
            area: to_f64(area_closed_form(p)),
            f: to_f64(f_closed_form(p)),
            el_residual: to_f64(el_residual(c)),
            hk_ratio: to_f64(hk_counterexample_ratio(p)),
        }
    }
}

/// Boundary, symmetry and quadrature invariants of a sampled critical curve.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub x_start_error: f64,
    pub x_end_error: f64,
    pub y_start: f64,
    pub y_end: f64,
    pub ydot_start: f64,
    pub ydot_end: f64,
    pub symmetry_error: f64,
    pub area_quadrature: f64,
    pub f_quadrature: f64,
    pub area_error: f64,
    pub f_error: f64,
}

impl InvariantReport {
    pub fn new<T: Real>(c: &CriticalCurve<T>) -> Result<Self> {
        let p = &c.params;
        let e = &c.eval;
        let two_l = p.half_length * lit(2.0);
        let frame = c.frame()?;
        let n = c.curve.len();
        let mut sym = T::zero();
        for (&s, _) in c.curve.s().iter().zip(0..n) {
            let r = two_l - s;
            sym = sym
                .max((e.x(s) + e.x(r)).abs())
                .max((e.y(s) - e.y(r)).abs())
                .max((e.curvature(s) - e.curvature(r)).abs());
        }
        let aq = to_f64(enclosed_area(&c.curve)?);
        let fq = to_f64(total_inverse_curvature(&c.curve, &frame)?);
        let ydot = |s: T| to_f64(e.theta(s).sin());
        Ok(Self {
            x_start_error: to_f64((e.x(T::zero()) - p.x0).abs()),
            x_end_error: to_f64((e.x(two_l) + p.x0).abs()),
            y_start: to_f64(e.y(T::zero())),
            y_end: to_f64(e.y(two_l)),
            ydot_start: ydot(T::zero()),
            ydot_end: ydot(two_l),
            symmetry_error: to_f64(sym),
            area_quadrature: aq,
            f_quadrature: fq,
            area_error: (aq - to_f64(area_closed_form(p))).abs(),
            f_error: (fq - to_f64(f_closed_form(p))).abs(),
        })
    }

    pub fn max_boundary_error(&self) -> f64 {
        [
            self.x_start_error,
            self.x_end_error,
            self.y_start.abs(),
            self.y_end.abs(),
            self.ydot_start.abs(),
            self.ydot_end.abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}
