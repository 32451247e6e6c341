//! Discrete planar curves: frames, curvature, the functionals F = ∫ 1/H and
//! enclosed area, admissibility, resampling and serialization.

use std::fmt::Debug;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quad::{check_increasing, derivative, gauss_legendre, linspace, simpson};
use crate::real::{from_usize, lit, to_f64, Real};
use crate::spline::CubicSpline;

pub type Vec2<T> = [T; 2];

/// Continuous arc-length parametrization: position and its first three derivatives.
pub trait CurveSource<T>: Send + Sync + Debug {
    fn eval(&self, s: T) -> [Vec2<T>; 4];
}

/// Exact per-sample derivatives with respect to the curve parameter.
#[derive(Debug, Clone)]
pub struct SampleDerivatives<T> {
    pub vel: Vec<Vec2<T>>,
    pub acc: Vec<Vec2<T>>,
    pub jerk: Option<Vec<Vec2<T>>>,
}

/// Sampled curve from (x0, 0) to (-x0, 0). The parameter is arc length for curves
/// built from sources; displaced curves keep the parameter of their base curve.
#[derive(Debug, Clone)]
pub struct DiscreteCurve<T: Real> {
    s: Vec<T>,
    pts: Vec<Vec2<T>>,
    half_length: T,
    x0: T,
    derivs: Option<Arc<SampleDerivatives<T>>>,
    source: Option<Arc<dyn CurveSource<T>>>,
}

impl<T: Real> DiscreteCurve<T> {
    pub fn new(s: Vec<T>, pts: Vec<Vec2<T>>, x0: T) -> Result<Self> {
        if s.len() != pts.len() {
            return Err(Error::InvalidInput("parameter and point arrays differ in length".into()));
        }
        if s.len() < 5 {
            return Err(Error::TooFewSamples { needed: 5, got: s.len() });
        }
        check_increasing(&s)?;
        let half_length = (s[s.len() - 1] - s[0]) / lit(2.0);
        Ok(Self { s, pts, half_length, x0, derivs: None, source: None })
    }

    /// Parametrizes a polyline by cumulative chord length.
    pub fn from_points(pts: Vec<Vec2<T>>) -> Result<Self> {
        let mut s = Vec::with_capacity(pts.len());
        let mut acc = T::zero();
        for (i, p) in pts.iter().enumerate() {
            if i > 0 {
                let q = pts[i - 1];
                acc += (p[0] - q[0]).hypot(p[1] - q[1]);
            }
            s.push(acc);
        }
        let x0 = pts.first().map_or(T::zero(), |p| p[0]);
        Self::new(s, pts, x0)
    }

    /// Samples an arc-length source on `n` uniform nodes of [0, 2L] with exact derivatives.
    pub fn from_source(source: Arc<dyn CurveSource<T>>, x0: T, half_length: T, n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::TooFewSamples { needed: 5, got: n });
        }
        let s = linspace(T::zero(), half_length * lit(2.0), n);
        let mut pts = Vec::with_capacity(n);
        let mut vel = Vec::with_capacity(n);
        let mut acc = Vec::with_capacity(n);
        let mut jerk = Vec::with_capacity(n);
        for &si in &s {
            let [p, v, a, j] = source.eval(si);
            pts.push(p);
            vel.push(v);
            acc.push(a);
            jerk.push(j);
        }
        Ok(Self {
            s,
            pts,
            half_length,
            x0,
            derivs: Some(Arc::new(SampleDerivatives { vel, acc, jerk: Some(jerk) })),
            source: Some(source),
        })
    }

    /// Attaches exact per-sample derivatives (drops any continuous source).
    pub fn with_derivatives(mut self, d: SampleDerivatives<T>) -> Self {
        assert_eq!(d.vel.len(), self.len());
        assert_eq!(d.acc.len(), self.len());
        self.derivs = Some(Arc::new(d));
        self.source = None;
        self
    }

    pub fn s(&self) -> &[T] {
        &self.s
    }

    pub fn pts(&self) -> &[Vec2<T>] {
        &self.pts
    }

    pub fn half_length(&self) -> T {
        self.half_length
    }

    pub fn x0(&self) -> T {
        self.x0
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn derivatives(&self) -> Option<&SampleDerivatives<T>> {
        self.derivs.as_deref()
    }

    pub fn source(&self) -> Option<&Arc<dyn CurveSource<T>>> {
        self.source.as_ref()
    }

    fn is_uniform(&self) -> bool {
        let n = self.len();
        let h = (self.s[n - 1] - self.s[0]) / from_usize(n - 1);
        let tol = lit::<T>(1e-12) * h.max(T::one());
        self.s.windows(2).all(|w| (w[1] - w[0] - h).abs() <= tol)
    }

    /// Largest relative deviation of chord length from parameter increment.
    pub fn arc_length_defect(&self) -> T {
        self.s
            .windows(2)
            .zip(self.pts.windows(2))
            .map(|(s, p)| {
                let chord = (p[1][0] - p[0][0]).hypot(p[1][1] - p[0][1]);
                (chord / (s[1] - s[0]) - T::one()).abs()
            })
            .fold(T::zero(), T::max)
    }

    fn velocity_acceleration(&self) -> Result<(Vec<Vec2<T>>, Vec<Vec2<T>>)> {
        if let Some(d) = &self.derivs {
            return Ok((d.vel.clone(), d.acc.clone()));
        }
        let xs: Vec<T> = self.pts.iter().map(|p| p[0]).collect();
        let ys: Vec<T> = self.pts.iter().map(|p| p[1]).collect();
        let dx = derivative(&self.s, &xs, 1)?;
        let dy = derivative(&self.s, &ys, 1)?;
        let ddx = derivative(&self.s, &xs, 2)?;
        let ddy = derivative(&self.s, &ys, 2)?;
        let vel = dx.into_iter().zip(dy).map(|(a, b)| [a, b]).collect();
        let acc = ddx.into_iter().zip(ddy).map(|(a, b)| [a, b]).collect();
        Ok((vel, acc))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["s", "x", "y"]).expect("in-memory write");
        for (s, p) in self.s.iter().zip(&self.pts) {
            w.write_record([fmt17(to_f64(*s)), fmt17(to_f64(p[0])), fmt17(to_f64(p[1]))])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["s", "x", "y"] {
            return Err(Error::Parse(format!("expected header s,x,y, got {headers:?}")));
        }
        let mut s = Vec::new();
        let mut pts = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let num = |i: usize| -> Result<T> {
                let v: f64 = rec
                    .get(i)
                    .ok_or_else(|| Error::Parse("short record".into()))?
                    .trim()
                    .parse()
                    .map_err(|e: std::num::ParseFloatError| Error::Parse(e.to_string()))?;
                Ok(lit(v))
            };
            s.push(num(0)?);
            pts.push([num(1)?, num(2)?]);
        }
        let x0 = pts.first().map_or(T::zero(), |p: &Vec2<T>| p[0]);
        Self::new(s, pts, x0)
    }

    pub fn to_json(&self) -> Value {
        let samples: Vec<Value> = self
            .s
            .iter()
            .zip(&self.pts)
            .map(|(s, p)| json!([to_f64(*s), to_f64(p[0]), to_f64(p[1])]))
            .collect();
        json!({ "x0": to_f64(self.x0), "L": to_f64(self.half_length), "samples": samples })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = |v: &Value| v.as_f64().ok_or_else(|| Error::Parse(format!("not a number: {v}")));
        let x0 = num(&v["x0"])?;
        let samples = v["samples"].as_array().ok_or_else(|| Error::Parse("missing samples".into()))?;
        let mut s = Vec::with_capacity(samples.len());
        let mut pts = Vec::with_capacity(samples.len());
        for row in samples {
            let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| Error::Parse("bad sample row".into()))?;
            s.push(lit(num(&row[0])?));
            pts.push([lit(num(&row[1])?), lit(num(&row[2])?)]);
        }
        Self::new(s, pts, lit(x0))
    }
}

/// Fixed 17-significant-digit formatting used by every text output.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}

/// Per-sample tangent, normal N = τ⊥ with (ξ, η)⊥ = (η, −ξ), curvature and parameter speed.
#[derive(Debug, Clone, Serialize)]
pub struct CurveFrame<T> {
    pub tangent: Vec<Vec2<T>>,
    pub normal: Vec<Vec2<T>>,
    pub curvature: Vec<T>,
    /// dH/ds with respect to the curve parameter.
    pub dcurvature: Vec<T>,
    pub speed: Vec<T>,
    pub velocity: Vec<Vec2<T>>,
}

#[inline]
pub fn cross<T: Real>(a: Vec2<T>, b: Vec2<T>) -> T {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn dot2<T: Real>(a: Vec2<T>, b: Vec2<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

/// H = ⟨γ̇, γ̈⊥⟩ / |γ̇|³ for any regular parametrization.
pub fn frame_and_curvature<T: Real>(curve: &DiscreteCurve<T>) -> Result<CurveFrame<T>> {
    if curve.len() < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: curve.len() });
    }
    check_increasing(&curve.s)?;
    let (vel, acc) = curve.velocity_acceleration()?;
    let n = curve.len();
    let mut tangent = Vec::with_capacity(n);
    let mut normal = Vec::with_capacity(n);
    let mut curvature = Vec::with_capacity(n);
    let mut speed = Vec::with_capacity(n);
    for i in 0..n {
        let v = vel[i];
        let sp = v[0].hypot(v[1]);
        let t = [v[0] / sp, v[1] / sp];
        tangent.push(t);
        normal.push([t[1], -t[0]]);
        curvature.push(cross(v, acc[i]) / (sp * sp * sp));
        speed.push(sp);
    }
    let three = lit::<T>(3.0);
    let dcurvature = match curve.derivs.as_ref().and_then(|d| d.jerk.as_ref()) {
        Some(jerk) => (0..n)
            .map(|i| {
                let sp = speed[i];
                let k = cross(vel[i], acc[i]);
                cross(vel[i], jerk[i]) / (sp * sp * sp)
                    - three * k * dot2(vel[i], acc[i]) / sp.powi(5)
            })
            .collect(),
        None => derivative(&curve.s, &curvature, 1)?,
    };
    Ok(CurveFrame { tangent, normal, curvature, dcurvature, speed, velocity: vel })
}

/// F = ∫ |γ̇| / H by composite Simpson.
pub fn total_inverse_curvature<T: Real>(curve: &DiscreteCurve<T>, frame: &CurveFrame<T>) -> Result<T> {
    let mut g = Vec::with_capacity(curve.len());
    for (i, (&h, &sp)) in frame.curvature.iter().zip(&frame.speed).enumerate() {
        if !(h > T::zero()) {
            return Err(Error::NonConvexCurve { index: i, value: to_f64(h) });
        }
        g.push(sp / h);
    }
    Ok(simpson(&curve.s, &g))
}

/// Both area forms, ∫ x ẏ and ½∫ (x ẏ − ẋ y), without the agreement check.
pub fn area_forms<T: Real>(curve: &DiscreteCurve<T>) -> Result<(T, T)> {
    let (vel, _) = curve.velocity_acceleration()?;
    let half = lit::<T>(0.5);
    let xdy: Vec<T> = curve.pts.iter().zip(&vel).map(|(p, v)| p[0] * v[1]).collect();
    let sym: Vec<T> = curve
        .pts
        .iter()
        .zip(&vel)
        .map(|(p, v)| half * (p[0] * v[1] - v[0] * p[1]))
        .collect();
    Ok((simpson(&curve.s, &xdy), simpson(&curve.s, &sym)))
}

/// Mean of the two area forms; they must agree within ten times the grid tolerance.
pub fn enclosed_area<T: Real>(curve: &DiscreteCurve<T>) -> Result<T> {
    let (a, b) = area_forms(curve)?;
    let h = curve.s.windows(2).map(|w| w[1] - w[0]).fold(T::zero(), T::max);
    let r = curve.pts.iter().map(|p| p[0].hypot(p[1])).fold(T::zero(), T::max);
    let grid_tol = h * h * (T::one() + r * r) + lit::<T>(1e3) * T::epsilon() * (T::one() + r * r);
    let tol = lit::<T>(10.0) * grid_tol;
    if (a - b).abs() > tol {
        return Err(Error::FormMismatch { xdy: to_f64(a), symmetric: to_f64(b), tol: to_f64(tol) });
    }
    Ok((a + b) * lit(0.5))
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub is_admissible: bool,
    pub min_h: f64,
    pub min_interior_y: f64,
    pub endpoint_errors: (f64, f64),
    pub messages: Vec<String>,
}

/// Checks positivity of curvature, interior height and the endpoint conditions.
pub fn check_admissible<T: Real>(curve: &DiscreteCurve<T>, frame: &CurveFrame<T>, endpoint_tol: T) -> AdmissibilityReport {
    let n = curve.len();
    let min_h = frame.curvature.iter().copied().fold(T::infinity(), T::min);
    let min_y = curve.pts[1..n - 1].iter().map(|p| p[1]).fold(T::infinity(), T::min);
    let p0 = curve.pts[0];
    let p1 = curve.pts[n - 1];
    let e0 = (p0[0] - curve.x0).hypot(p0[1]);
    let e1 = (p1[0] + curve.x0).hypot(p1[1]);
    let mut messages = Vec::new();
    if !(min_h > T::zero()) {
        messages.push(format!("curvature not positive (min {:e})", to_f64(min_h)));
    }
    if !(min_y > T::zero()) {
        messages.push(format!("interior point off the open upper half-plane (min y {:e})", to_f64(min_y)));
    }
    if !(e0 < endpoint_tol && e1 < endpoint_tol) {
        messages.push(format!("endpoint errors {:e}, {:e}", to_f64(e0), to_f64(e1)));
    }
    AdmissibilityReport {
        is_admissible: messages.is_empty(),
        min_h: to_f64(min_h),
        min_interior_y: to_f64(min_y),
        endpoint_errors: (to_f64(e0), to_f64(e1)),
        messages,
    }
}

/// Reparametrizes to `n` uniform arc-length samples.
///
/// Curves with a continuous source are re-evaluated exactly; otherwise cubic splines
/// of x and y are inverted against their Gauss-integrated arc length.
pub fn resample<T: Real>(curve: &DiscreteCurve<T>, n: usize) -> Result<DiscreteCurve<T>> {
    if n < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: n });
    }
    if n == curve.len() && curve.is_uniform() {
        return Ok(curve.clone());
    }
    if let Some(src) = &curve.source {
        return DiscreteCurve::from_source(src.clone(), curve.x0, curve.half_length, n);
    }
    let xs: Vec<T> = curve.pts.iter().map(|p| p[0]).collect();
    let ys: Vec<T> = curve.pts.iter().map(|p| p[1]).collect();
    let sx = CubicSpline::new(&curve.s, &xs)?;
    let sy = CubicSpline::new(&curve.s, &ys)?;
    let speed = |t: T| {
        let (a, b) = (sx.eval(t)[1], sy.eval(t)[1]);
        a.hypot(b)
    };
    let (gx, gw) = gauss_legendre::<T>(5);
    let half = lit::<T>(0.5);
    let m = curve.len();
    let mut cum = vec![T::zero(); m];
    for i in 0..m - 1 {
        let (a, b) = (curve.s[i], curve.s[i + 1]);
        let w = (b - a) * half;
        let seg: T = gx.iter().zip(&gw).map(|(&x, &wt)| wt * speed(a + w * (x + T::one()))).sum();
        cum[i + 1] = cum[i] + w * seg;
    }
    let total = cum[m - 1];
    let targets = linspace(T::zero(), total, n);
    let mut pts = Vec::with_capacity(n);
    let mut j = 0;
    for &target in &targets {
        while j + 2 < m && cum[j + 1] < target {
            j += 1;
        }
        let (a, b) = (curve.s[j], curve.s[j + 1]);
        let arc = |t: T| -> T {
            let ww = (t - a) * half;
            let seg: T = gx.iter().zip(&gw).map(|(&x, &wt)| wt * speed(a + ww * (x + T::one()))).sum();
            cum[j] + ww * seg
        };
        // Newton on the monotone arc-length map, started from linear interpolation
        let frac = if cum[j + 1] > cum[j] { (target - cum[j]) / (cum[j + 1] - cum[j]) } else { T::zero() };
        let mut t = a + (b - a) * frac;
        for _ in 0..20 {
            let f = arc(t) - target;
            let step = f / speed(t);
            t = (t - step).max(a).min(b);
            if step.abs() <= T::epsilon() * (T::one() + t.abs()) * lit(4.0) {
                break;
            }
        }
        pts.push([sx.eval(t)[0], sy.eval(t)[0]]);
    }
    let mut out = DiscreteCurve::new(targets, pts, curve.x0)?;
    out.half_length = total * half;
    Ok(out)
}

/// Circle arc through (±x0, 0) with centre (0, c), parametrized by arc length.
#[derive(Debug, Clone, Copy)]
pub struct CircleArc<T> {
    pub x0: T,
    pub centre_y: T,
    pub radius: T,
    start_angle: T,
}

impl<T: Real> CircleArc<T> {
    pub fn new(x0: T, centre_y: T) -> Self {
        Self { x0, centre_y, radius: x0.hypot(centre_y), start_angle: (-centre_y).atan2(x0) }
    }

    pub fn half_length(&self) -> T {
        self.radius * (T::PI() - lit::<T>(2.0) * self.start_angle) / lit(2.0)
    }

    pub fn sample(self, n: usize) -> Result<DiscreteCurve<T>> {
        let l = self.half_length();
        DiscreteCurve::from_source(Arc::new(self), self.x0, l, n)
    }
}

impl<T: Real> CurveSource<T> for CircleArc<T> {
    fn eval(&self, s: T) -> [Vec2<T>; 4] {
        let r = self.radius;
        let a = self.start_angle + s / r;
        let (sn, cs) = a.sin_cos();
        [
            [r * cs, self.centre_y + r * sn],
            [-sn, cs],
            [-cs / r, -sn / r],
            [sn / (r * r), -cs / (r * r)],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn semicircle_points(n: usize) -> DiscreteCurve<f64> {
        let s = linspace(0.0, PI, n);
        let pts = s.iter().map(|&t| [t.cos(), t.sin()]).collect();
        DiscreteCurve::new(s, pts, 1.0).unwrap()
    }

    #[test]
    fn semicircle_frame_from_differences() {
        let c = semicircle_points(2001);
        let f = frame_and_curvature(&c).unwrap();
        for i in 0..c.len() {
            assert!((f.curvature[i] - 1.0).abs() < 1e-5);
            let t = c.s()[i];
            assert!((f.normal[i][0] - t.cos()).abs() < 1e-5);
            assert!((f.normal[i][1] - t.sin()).abs() < 1e-5);
        }
    }

    #[test]
    fn exact_semicircle_functionals() {
        let c = CircleArc::new(1.0_f64, 0.0).sample(4097).unwrap();
        let f = frame_and_curvature(&c).unwrap();
        assert!((total_inverse_curvature(&c, &f).unwrap() - PI).abs() < 1e-12);
        assert!((enclosed_area(&c).unwrap() - PI / 2.0).abs() < 1e-12);
        let adm = check_admissible(&c, &f, 1e-8);
        assert!(adm.is_admissible, "{:?}", adm.messages);
    }

    #[test]
    fn arc_inverse_curvature_is_r_squared_theta() {
        let arc = CircleArc::new(1.0_f64, 0.6);
        let c = arc.sample(2049).unwrap();
        let f = frame_and_curvature(&c).unwrap();
        let theta = 2.0 * arc.half_length() / arc.radius;
        let want = arc.radius * arc.radius * theta;
        assert!((total_inverse_curvature(&c, &f).unwrap() - want).abs() < 1e-11);
    }

    #[test]
    fn segment_has_zero_curvature_and_fails_admissibility() {
        let s = linspace(0.0, 2.0, 21);
        let pts = s.iter().map(|&t| [1.0 - t, 0.0]).collect();
        let c = DiscreteCurve::new(s, pts, 1.0).unwrap();
        let f = frame_and_curvature(&c).unwrap();
        assert!(f.curvature.iter().all(|h: &f64| h.abs() < 1e-14));
        let adm = check_admissible(&c, &f, 1e-8);
        assert!(!adm.is_admissible);
        assert_eq!(adm.min_h, 0.0);
        assert!(matches!(total_inverse_curvature(&c, &f), Err(Error::NonConvexCurve { .. })));
    }

    #[test]
    fn lower_semicircle_fails_interior_height() {
        let s = linspace(0.0, PI, 101);
        let pts = s.iter().map(|&t| [t.cos(), -t.sin()]).collect();
        let c = DiscreteCurve::new(s, pts, 1.0).unwrap();
        let f = frame_and_curvature(&c).unwrap();
        let adm = check_admissible(&c, &f, 1e-8);
        assert!(!adm.is_admissible);
        assert!(adm.min_interior_y < 0.0);
    }

    #[test]
    fn reflected_traversal_keeps_area() {
        // x -> -x and reversed traversal keeps counterclockwise orientation
        let c = semicircle_points(1001);
        let n = c.len();
        let pts: Vec<_> = (0..n).map(|i| {
            let p = c.pts()[n - 1 - i];
            [-p[0], p[1]]
        }).collect();
        let r = DiscreteCurve::new(c.s().to_vec(), pts, 1.0).unwrap();
        let a = enclosed_area(&c).unwrap();
        let b = enclosed_area(&r).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!((a - PI / 2.0).abs() < 1e-5);
    }

    #[test]
    fn mismatched_forms_detected() {
        // endpoints lifted off the axis break the equivalence of the two forms
        let s = linspace(0.0, PI, 201);
        let pts = s.iter().map(|&t| [t.cos(), t.sin() + 0.5]).collect();
        let c = DiscreteCurve::new(s, pts, 1.0).unwrap();
        assert!(matches!(enclosed_area(&c), Err(Error::FormMismatch { .. })));
    }

    #[test]
    fn frame_rejects_short_and_degenerate() {
        let pts = vec![[0.0, 0.0]; 5];
        assert!(DiscreteCurve::new(vec![0.0, 1.0, 1.0, 2.0, 3.0], pts.clone(), 1.0).is_err());
        assert!(DiscreteCurve::new(vec![0.0, 1.0, 2.0], pts[..3].to_vec(), 1.0).is_err());
    }

    #[test]
    fn resample_identity_and_length() {
        let c = semicircle_points(100);
        let same = resample(&c, 100).unwrap();
        for (a, b) in c.pts().iter().zip(same.pts()) {
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
        let fine = resample(&c, 200).unwrap();
        let len = fine.s()[fine.len() - 1];
        assert!((len - PI).abs() / PI < 1e-8, "length {len}");
        assert!(fine.arc_length_defect() < 1e-4);
        for p in fine.pts() {
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn csv_and_json_round_trip() {
        let c = semicircle_points(17);
        let back = DiscreteCurve::<f64>::from_csv(&c.to_csv()).unwrap();
        assert_eq!(back.pts(), c.pts());
        assert_eq!(back.s(), c.s());
        let j = DiscreteCurve::<f64>::from_json(&c.to_json()).unwrap();
        assert_eq!(j.pts(), c.pts());
        assert!(c.to_csv().starts_with("s,x,y\n"));
    }

    #[test]
    fn single_precision_semicircle() {
        let c = CircleArc::new(1.0_f32, 0.0).sample(257).unwrap();
        let f = frame_and_curvature(&c).unwrap();
        let v = total_inverse_curvature(&c, &f).unwrap();
        assert!((v - std::f32::consts::PI).abs() < 1e-5);
    }
}
