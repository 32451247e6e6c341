//! Variations of a curve, the first and second variation formulas for ℱ, 𝒜 and
//! ℱ − λ𝒜, and finite-difference checks of those formulas.
//!
//! A variation 𝒱(s, t) = γ + tX + (t²/2)X' is described by the four profiles of
//! X = φN + φ_τ τ and X' = ψN + ψ_τ τ on the arc-length grid of γ.

use rayon::prelude::*;
use serde::Serialize;

use crate::critical::CriticalCurve;
use crate::curvegeom::{enclosed_area, frame_and_curvature, total_inverse_curvature, CurveFrame, DiscreteCurve, SampleDerivatives};
use crate::error::{Error, Result};
use crate::profile::{poly_bump, Profile};
use crate::quad::{derivative, simpson};
use crate::real::{lit, to_f64, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct VariationField<T> {
    pub phi: Profile<T>,
    pub phi_tau: Profile<T>,
    pub psi: Profile<T>,
    pub psi_tau: Profile<T>,
}

impl<T: Real> VariationField<T> {
    pub fn zeros(n: usize) -> Self {
        Self { phi: Profile::zeros(n), phi_tau: Profile::zeros(n), psi: Profile::zeros(n), psi_tau: Profile::zeros(n) }
    }

    /// Geodesic normal variation: X = φN, X' = 0.
    pub fn normal(phi: Profile<T>) -> Self {
        let n = phi.len();
        Self { phi, ..Self::zeros(n) }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// All four profiles vanish at both ends.
    pub fn fixes_boundary(&self, tol: T) -> bool {
        [&self.phi, &self.phi_tau, &self.psi, &self.psi_tau]
            .iter()
            .all(|p| p.first()[0].abs() <= tol && p.last()[0].abs() <= tol)
    }

    /// Boundary fixed and φ̇ = 0 at both ends.
    pub fn in_w1(&self, tol: T) -> bool {
        self.fixes_boundary(tol) && self.phi.first()[1].abs() <= tol && self.phi.last()[1].abs() <= tol
    }
}

/// Curve given either with analytic curvature (critical curves) or only as samples.
#[derive(Debug, Clone, Copy)]
pub enum Base<'a, T: Real> {
    Critical(&'a CriticalCurve<T>),
    Discrete(&'a DiscreteCurve<T>),
}

impl<'a, T: Real> From<&'a CriticalCurve<T>> for Base<'a, T> {
    fn from(c: &'a CriticalCurve<T>) -> Self {
        Base::Critical(c)
    }
}

impl<'a, T: Real> From<&'a DiscreteCurve<T>> for Base<'a, T> {
    fn from(c: &'a DiscreteCurve<T>) -> Self {
        Base::Discrete(c)
    }
}

impl<'a, T: Real> Base<'a, T> {
    pub fn curve(&self) -> &'a DiscreteCurve<T> {
        match self {
            Base::Critical(c) => &c.curve,
            Base::Discrete(c) => c,
        }
    }

    /// (H⁻²)'' per sample: exact for critical curves, finite differences otherwise.
    fn inv_h2_dd(&self, frame: &CurveFrame<T>) -> Result<Vec<T>> {
        match self {
            Base::Critical(c) => Ok(c
                .s()
                .iter()
                .map(|&s| c.eval.curvature_jet(s).powf(lit(-2.0)).d[2])
                .collect()),
            Base::Discrete(c) => {
                let v: Vec<T> = frame.curvature.iter().map(|&h| T::one() / (h * h)).collect();
                derivative(c.s(), &v, 2)
            }
        }
    }
}

/// γ + aN + bτ for an arc-length base curve, with exact parameter derivatives:
/// with Ṅ = Hτ and τ̇ = −HN,
/// γ̇ = (1 + ḃ + aH)τ + (ȧ − bH)N and
/// γ̈ = (b̈ + 2ȧH + aḢ − bH²)τ + (ä − 2ḃH − bḢ − aH² − H)N.
pub fn displace<T: Real>(curve: &DiscreteCurve<T>, frame: &CurveFrame<T>, a: &Profile<T>, b: &Profile<T>) -> Result<DiscreteCurve<T>> {
    let n = curve.len();
    if a.len() != n || b.len() != n {
        return Err(Error::InvalidInput(format!("profile length {} / {} does not match curve length {n}", a.len(), b.len())));
    }
    let two = lit::<T>(2.0);
    let mut pts = Vec::with_capacity(n);
    let mut vel = Vec::with_capacity(n);
    let mut acc = Vec::with_capacity(n);
    for i in 0..n {
        let p = curve.pts()[i];
        let t = frame.tangent[i];
        let nn = frame.normal[i];
        let h = frame.curvature[i];
        let dh = frame.dcurvature[i];
        let (a0, a1, a2) = (a.v[i], a.d1[i], a.d2[i]);
        let (b0, b1, b2) = (b.v[i], b.d1[i], b.d2[i]);
        let vt = T::one() + b1 + a0 * h;
        let vn = a1 - b0 * h;
        let at = b2 + two * a1 * h + a0 * dh - b0 * h * h;
        let an = a2 - two * b1 * h - b0 * dh - a0 * h * h - h;
        pts.push([p[0] + a0 * nn[0] + b0 * t[0], p[1] + a0 * nn[1] + b0 * t[1]]);
        vel.push([vt * t[0] + vn * nn[0], vt * t[1] + vn * nn[1]]);
        acc.push([at * t[0] + an * nn[0], at * t[1] + an * nn[1]]);
    }
    let out = DiscreteCurve::new(curve.s().to_vec(), pts, curve.x0())?;
    Ok(out.with_derivatives(SampleDerivatives { vel, acc, jerk: None }))
}

/// The member γ + tX + (t²/2)X' of the variation described by `field`.
pub fn variation_family<T: Real>(curve: &DiscreteCurve<T>, frame: &CurveFrame<T>, field: &VariationField<T>, t: T) -> Result<DiscreteCurve<T>> {
    let half_t2 = t * t / lit(2.0);
    let a = field.phi.scale(t).axpy(half_t2, &field.psi);
    let b = field.phi_tau.scale(t).axpy(half_t2, &field.psi_tau);
    displace(curve, frame, &a, &b)
}

/// γ + tφN, rejected if it leaves the admissible class.
pub fn geodesic_normal_variation<T: Real>(curve: &DiscreteCurve<T>, phi: &Profile<T>, t: T, endpoint_tol: T) -> Result<DiscreteCurve<T>> {
    let n = phi.len();
    if phi.first()[0].abs() > endpoint_tol || phi.last()[0].abs() > endpoint_tol {
        return Err(Error::Precondition("phi must vanish at both ends".into()));
    }
    let frame = frame_and_curvature(curve)?;
    let out = displace(curve, &frame, &phi.scale(t), &Profile::zeros(n))?;
    let f = frame_and_curvature(&out)?;
    let report = crate::curvegeom::check_admissible(&out, &f, endpoint_tol);
    if !report.is_admissible {
        return Err(Error::AdmissibilityLost(report.messages.join("; ")));
    }
    Ok(out)
}

/// Scalar functionals along variations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Functional<T> {
    InverseCurvature,
    Area,
    /// ℱ − λ𝒜.
    Lagrangian(T),
}

impl<T: Real> Functional<T> {
    pub fn eval(&self, curve: &DiscreteCurve<T>) -> Result<T> {
        match *self {
            Functional::InverseCurvature => total_inverse_curvature(curve, &frame_and_curvature(curve)?),
            Functional::Area => enclosed_area(curve),
            Functional::Lagrangian(l) => {
                let f = total_inverse_curvature(curve, &frame_and_curvature(curve)?)?;
                Ok(f - l * enclosed_area(curve)?)
            }
        }
    }
}

/// ∫((H⁻²)'' + 2)φ ds + H⁻²(2L) φ̇(2L) − H⁻²(0) φ̇(0).
pub fn first_variation_f<'a, T: Real>(base: impl Into<Base<'a, T>>, field: &VariationField<T>) -> Result<T> {
    let base = base.into();
    let curve = base.curve();
    let frame = frame_and_curvature(curve)?;
    for (i, &h) in frame.curvature.iter().enumerate() {
        if !(h > T::zero()) {
            return Err(Error::NonConvexCurve { index: i, value: to_f64(h) });
        }
    }
    let dd = base.inv_h2_dd(&frame)?;
    let two = lit::<T>(2.0);
    let g: Vec<T> = (0..curve.len()).map(|i| (dd[i] + two) * field.phi.v[i]).collect();
    let n = curve.len() - 1;
    let h0 = frame.curvature[0];
    let h1 = frame.curvature[n];
    Ok(simpson(curve.s(), &g) + field.phi.d1[n] / (h1 * h1) - field.phi.d1[0] / (h0 * h0))
}

/// [(ψ̇ − 2φ̇φ̇_τ)/H²] between the ends; reduces to [ψ̇/H²] on 𝒲₁ fields.
fn boundary_term<T: Real>(h: &[T], f: &VariationField<T>) -> T {
    let two = lit::<T>(2.0);
    let at = |i: usize| (f.psi.d1[i] - two * f.phi.d1[i] * f.phi_tau.d1[i]) / (h[i] * h[i]);
    at(h.len() - 1) - at(0)
}

/// ∫(ψ + Hφ_τ² + 2φφ̇_τ) ds, shared by the second variations.
fn tangential_block<T: Real>(s: &[T], h: &[T], f: &VariationField<T>) -> T {
    let two = lit::<T>(2.0);
    let g: Vec<T> = (0..s.len())
        .map(|i| f.psi.v[i] + h[i] * f.phi_tau.v[i] * f.phi_tau.v[i] + two * f.phi.v[i] * f.phi_tau.d1[i])
        .collect();
    simpson(s, &g)
}

fn curvature_samples<T: Real>(c: &CriticalCurve<T>) -> Vec<T> {
    c.s().iter().map(|&s| c.eval.curvature(s)).collect()
}

/// Second variation of ℱ at a critical curve:
/// ∫(2Hφ² − 2φ̇²/H + 2φ̈²/H³) + λ∫(ψ + Hφ_τ² + 2φφ̇_τ) + [(ψ̇ − 2φ̇φ̇_τ)/H²].
pub fn second_variation_f<T: Real>(c: &CriticalCurve<T>, field: &VariationField<T>) -> T {
    let s = c.s();
    let h = curvature_samples(c);
    let two = lit::<T>(2.0);
    let p = &field.phi;
    let g: Vec<T> = (0..s.len())
        .map(|i| {
            let hi = h[i];
            two * hi * p.v[i] * p.v[i] - two * p.d1[i] * p.d1[i] / hi + two * p.d2[i] * p.d2[i] / (hi * hi * hi)
        })
        .collect();
    simpson(s, &g) + c.params.lambda * tangential_block(s, &h, field) + boundary_term(&h, field)
}

/// Second variation of the area, valid on any admissible arc-length curve:
/// ∫Hφ² + ∫(ψ + Hφ_τ² + 2φφ̇_τ).
pub fn second_variation_area<T: Real>(curve: &DiscreteCurve<T>, field: &VariationField<T>) -> Result<T> {
    let frame = frame_and_curvature(curve)?;
    let s = curve.s();
    let h = &frame.curvature;
    let g: Vec<T> = (0..s.len()).map(|i| h[i] * field.phi.v[i] * field.phi.v[i]).collect();
    Ok(simpson(s, &g) + tangential_block(s, h, field))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondVariationG<T> {
    pub total: T,
    /// ∫((2−λ)Hφ² − 2φ̇²/H + 2φ̈²/H³), the part bounded below by coercivity.
    pub integral: T,
}

/// Second variation of ℱ − λ𝒜 at a critical curve.
pub fn second_variation_g<T: Real>(c: &CriticalCurve<T>, field: &VariationField<T>) -> SecondVariationG<T> {
    let s = c.s();
    let h = curvature_samples(c);
    let two = lit::<T>(2.0);
    let p = &field.phi;
    let k = two - c.params.lambda;
    let g: Vec<T> = (0..s.len())
        .map(|i| {
            let hi = h[i];
            k * hi * p.v[i] * p.v[i] - two * p.d1[i] * p.d1[i] / hi + two * p.d2[i] * p.d2[i] / (hi * hi * hi)
        })
        .collect();
    let integral = simpson(s, &g);
    SecondVariationG { total: integral + boundary_term(&h, field), integral }
}

/// One analytic-versus-finite-difference comparison.
#[derive(Debug, Clone, Serialize)]
pub struct VariationCheckReport {
    pub field_id: usize,
    pub analytic: f64,
    pub finite_difference: f64,
    pub abs_err: f64,
    /// Relative to max(1, |analytic|).
    pub rel_err: f64,
    pub fd_step: f64,
}

impl VariationCheckReport {
    pub fn new(field_id: usize, analytic: f64, fd: f64, step: f64) -> Self {
        let abs_err = (analytic - fd).abs();
        Self { field_id, analytic, finite_difference: fd, abs_err, rel_err: abs_err / analytic.abs().max(1.0), fd_step: step }
    }

    pub fn csv_header() -> &'static str {
        "field_id,analytic,fd,rel_err"
    }

    pub fn csv_row(&self) -> String {
        use crate::curvegeom::fmt17;
        format!("{},{},{},{}", self.field_id, fmt17(self.analytic), fmt17(self.finite_difference), fmt17(self.rel_err))
    }
}

/// Centered first difference of J along the variation.
pub fn fd_first<T: Real>(curve: &DiscreteCurve<T>, field: &VariationField<T>, j: Functional<T>, h: T) -> Result<T> {
    let frame = frame_and_curvature(curve)?;
    let jp = j.eval(&variation_family(curve, &frame, field, h)?)?;
    let jm = j.eval(&variation_family(curve, &frame, field, -h)?)?;
    Ok((jp - jm) / (lit::<T>(2.0) * h))
}

/// Centered second difference of J along the variation, Richardson-extrapolated once.
pub fn fd_second<T: Real>(curve: &DiscreteCurve<T>, field: &VariationField<T>, j: Functional<T>, h: T) -> Result<T> {
    let frame = frame_and_curvature(curve)?;
    let j0 = j.eval(curve)?;
    let d = |step: T| -> Result<T> {
        let jp = j.eval(&variation_family(curve, &frame, field, step)?)?;
        let jm = j.eval(&variation_family(curve, &frame, field, -step)?)?;
        Ok((jp - lit::<T>(2.0) * j0 + jm) / (step * step))
    };
    let coarse = d(h)?;
    let fine = d(h / lit(2.0))?;
    Ok((lit::<T>(4.0) * fine - coarse) / lit(3.0))
}

/// The three second-variation checks of one field at a critical curve.
#[derive(Debug, Clone, Serialize)]
pub struct SecondVariationChecks {
    pub f: VariationCheckReport,
    pub area: VariationCheckReport,
    pub lagrangian: VariationCheckReport,
    /// |δ²ℱ − λδ²𝒜 − δ²(ℱ−λ𝒜)| / max(1, |δ²(ℱ−λ𝒜)|).
    pub identity_error: f64,
}

pub fn check_second_variations<T: Real>(c: &CriticalCurve<T>, fields: &[VariationField<T>], h: T) -> Result<Vec<SecondVariationChecks>> {
    let lambda = c.params.lambda;
    fields
        .par_iter()
        .enumerate()
        .map(|(id, field)| {
            let sf = second_variation_f(c, field);
            let sa = second_variation_area(&c.curve, field)?;
            let sg = second_variation_g(c, field).total;
            let ff = fd_second(&c.curve, field, Functional::InverseCurvature, h)?;
            let fa = fd_second(&c.curve, field, Functional::Area, h)?;
            let fg = fd_second(&c.curve, field, Functional::Lagrangian(lambda), h)?;
            let step = to_f64(h);
            Ok(SecondVariationChecks {
                f: VariationCheckReport::new(id, to_f64(sf), to_f64(ff), step),
                area: VariationCheckReport::new(id, to_f64(sa), to_f64(fa), step),
                lagrangian: VariationCheckReport::new(id, to_f64(sg), to_f64(fg), step),
                identity_error: to_f64((sf - lambda * sa - sg).abs() / sg.abs().max(T::one())),
            })
        })
        .collect()
}

/// Area-preserving correction γ + tφN + g(t)ψ̂N with ψ̂ a bump on [L/2, 3L/2].
#[derive(Debug, Clone)]
pub struct AreaPreservingFamily<T: Real> {
    pub t: Vec<T>,
    pub g: Vec<T>,
    pub residual: Vec<T>,
    pub curves: Vec<DiscreteCurve<T>>,
}

impl<T: Real> AreaPreservingFamily<T> {
    /// Least-squares slope of log|g| against log|t| over nonzero entries.
    pub fn fitted_exponent(&self) -> Option<T> {
        let pts: Vec<(T, T)> = self
            .t
            .iter()
            .zip(&self.g)
            .filter(|(t, g)| **t != T::zero() && **g != T::zero())
            .map(|(t, g)| (t.abs().ln(), g.abs().ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = lit::<T>(pts.len() as f64);
        let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
        let my = pts.iter().map(|p| p.1).sum::<T>() / n;
        let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: T = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(sxy / sxx)
    }
}

/// The fixed correction bump ψ̂ on the grid of `curve`.
pub fn correction_bump<T: Real>(curve: &DiscreteCurve<T>) -> Profile<T> {
    let l = curve.half_length();
    let two = lit::<T>(2.0);
    Profile::from_fn(curve.s(), |s| poly_bump(l / two, lit::<T>(3.0) * l / two, s))
}

/// Solves 𝒜(γ + tφN + uψ̂N) = 𝒜(γ) for u = g(t) at every t by safeguarded Newton.
pub fn make_area_preserving<T: Real>(curve: &DiscreteCurve<T>, phi: &Profile<T>, t_grid: &[T]) -> Result<AreaPreservingFamily<T>> {
    let s = curve.s();
    let mean = simpson(s, &phi.v);
    let mass = simpson(s, &phi.v.iter().map(|v| v.abs()).collect::<Vec<_>>());
    if mean.abs() > lit::<T>(1e-10) * mass.max(T::min_positive_value()) {
        return Err(Error::Precondition(format!("phi is not mean-zero (integral {mean:e})")));
    }
    let frame = frame_and_curvature(curve)?;
    let bump = correction_bump(curve);
    let target = enclosed_area(curve)?;
    let tol = lit::<T>(1e-12) * target.abs().max(T::one());
    let zeros = Profile::zeros(curve.len());
    let mut out = AreaPreservingFamily { t: Vec::new(), g: Vec::new(), residual: Vec::new(), curves: Vec::new() };
    for &t in t_grid {
        let base = phi.scale(t);
        let member = |u: T| displace(curve, &frame, &base.axpy(u, &bump), &zeros);
        let slope = |c: &DiscreteCurve<T>| -> T {
            // d𝒜/du = ∫ (E_x ẏ − E_y ẋ) ds with E = ψ̂N
            let d = c.derivatives().expect("displaced curves carry derivatives");
            let g: Vec<T> = (0..c.len())
                .map(|i| {
                    let e = [bump.v[i] * frame.normal[i][0], bump.v[i] * frame.normal[i][1]];
                    e[0] * d.vel[i][1] - e[1] * d.vel[i][0]
                })
                .collect();
            simpson(s, &g)
        };
        let mut u = T::zero();
        let mut c = member(u)?;
        let mut res = enclosed_area(&c)? - target;
        let mut it = 0;
        while res.abs() > tol {
            it += 1;
            if it > 50 {
                return Err(Error::NewtonStall { iterations: 50, residual: to_f64(res) });
            }
            let step = res / slope(&c);
            let mut damp = T::one();
            loop {
                let cand_u = u - damp * step;
                let cand = member(cand_u)?;
                let cand_res = enclosed_area(&cand)? - target;
                if cand_res.abs() < res.abs() || damp < lit(1e-6) {
                    u = cand_u;
                    c = cand;
                    res = cand_res;
                    break;
                }
                damp /= lit(2.0);
            }
        }
        out.t.push(t);
        out.g.push(u);
        out.residual.push(res);
        out.curves.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::{build_critical_curve, make_params};
    use crate::curvegeom::CircleArc;

    fn crit() -> CriticalCurve<f64> {
        build_critical_curve(make_params(1.0, 4.0).unwrap(), 2049).unwrap()
    }

    /// φ ∈ 𝒲₁ with ∫φ = 0: sin²(πs/2L)·sin(2πs/2L) style combination.
    fn w1_mean_zero(s: &[f64], l: f64) -> Profile<f64> {
        let w = std::f64::consts::PI / (2.0 * l);
        Profile::from_jet(s, |x| {
            let a = x.scale(w).sin();
            a * a * x.scale(2.0 * w).sin()
        })
    }

    #[test]
    fn zero_field_gives_zero() {
        let c = crit();
        let z = VariationField::zeros(c.curve.len());
        assert_eq!(first_variation_f(&c, &z).unwrap(), 0.0);
        assert_eq!(second_variation_f(&c, &z), 0.0);
        assert_eq!(second_variation_area(&c.curve, &z).unwrap(), 0.0);
        assert_eq!(second_variation_g(&c, &z).total, 0.0);
    }

    #[test]
    fn t_zero_is_identity() {
        let c = crit();
        let phi = w1_mean_zero(c.s(), 4.0);
        let v = geodesic_normal_variation(&c.curve, &phi, 0.0, 1e-8).unwrap();
        for (a, b) in v.pts().iter().zip(c.curve.pts()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn stationary_on_mean_zero_w1_field() {
        let c = crit();
        let phi = w1_mean_zero(c.s(), 4.0);
        assert!(phi.integral(c.s()).abs() < 1e-12);
        let v = first_variation_f(&c, &VariationField::normal(phi)).unwrap();
        assert!(v.abs() < 1e-8, "{v}");
    }

    #[test]
    fn bump_variation_admissible_and_crossing_rejected() {
        let c = crit();
        let phi = Profile::from_fn(c.s(), |s| poly_bump(2.0, 6.0, s));
        assert!(geodesic_normal_variation(&c.curve, &phi, 1e-3, 1e-8).is_ok());
        // push the curve down through the axis
        let down = Profile::from_fn(c.s(), |s| poly_bump(0.5, 7.5, s));
        let r = geodesic_normal_variation(&c.curve, &down, 10.0, 1e-8);
        assert!(matches!(r, Err(Error::AdmissibilityLost(_))), "{r:?}");
    }

    #[test]
    fn pure_psi_area_term() {
        let c = crit();
        let mut f = VariationField::zeros(c.curve.len());
        f.psi = Profile::from_fn(c.s(), |s| poly_bump(1.0, 7.0, s));
        let want = f.psi.integral(c.s());
        assert!((second_variation_area(&c.curve, &f).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn first_variation_on_circle_matches_difference() {
        let arc = CircleArc::new(1.0, 0.3).sample(2049).unwrap();
        let l = arc.half_length();
        let f = VariationField::normal(Profile::from_fn(arc.s(), |s| poly_bump(0.3 * l, 1.5 * l, s)));
        let a: f64 = first_variation_f(&arc, &f).unwrap();
        let d = fd_first(&arc, &f, Functional::InverseCurvature, 1e-5).unwrap();
        assert!((a - d).abs() < 1e-6, "{a} vs {d}");
    }

    #[test]
    fn area_second_variation_on_semicircle() {
        let arc = CircleArc::new(1.0, 0.0).sample(2049).unwrap();
        let f = VariationField::normal(Profile::from_fn(arc.s(), |s| poly_bump(0.5, 2.5, s)));
        let a: f64 = second_variation_area(&arc, &f).unwrap();
        let d = fd_second(&arc, &f, Functional::Area, 1e-3).unwrap();
        assert!((a - d).abs() / a.abs() < 1e-4, "{a} vs {d}");
    }

    #[test]
    fn area_preserving_correction_is_quadratic() {
        let c = crit();
        let phi = w1_mean_zero(c.s(), 4.0);
        let ts = [1e-2, -1e-2, 5e-3, -5e-3, 2.5e-3, 1.25e-3];
        let fam = make_area_preserving(&c.curve, &phi, &ts).unwrap();
        for r in &fam.residual {
            assert!(r.abs() < 1e-12);
        }
        let e = fam.fitted_exponent().unwrap();
        assert!(e >= 1.9, "exponent {e}");
        let zero = make_area_preserving(&c.curve, &Profile::zeros(c.curve.len()), &[1e-2]).unwrap();
        assert_eq!(zero.g[0], 0.0);
        let biased = Profile::from_fn(c.s(), |s| poly_bump(1.0, 7.0, s));
        assert!(matches!(make_area_preserving(&c.curve, &biased, &[1e-2]), Err(Error::Precondition(_))));
    }
}
