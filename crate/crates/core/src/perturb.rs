//! Random clamped normal perturbations of the critical curve and the resulting
//! change of ℱ − λ𝒜 (and of ℱ alone along area-preserving corrections).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::critical::CriticalCurve;
use crate::curvegeom::{enclosed_area, frame_and_curvature, total_inverse_curvature, DiscreteCurve};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::quad::simpson;
use crate::real::{lit, to_f64, Real};
use crate::variations::{displace, make_area_preserving, second_variation_g, VariationField};

pub const SINE_MODES: usize = 12;

/// Sine series Σ c_k k⁻³ sin(kπs/S) on [0, S], corrected by two Hermite cubics so that the
/// slope vanishes at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct ClampedSineSeries<T> {
    pub span: T,
    pub coeffs: Vec<T>,
    slope0: T,
    slope1: T,
    /// Multiple of sin²(πs/S) subtracted to remove the mean.
    mean_shift: T,
    pub scale: T,
}

impl<T: Real> ClampedSineSeries<T> {
    pub fn new(span: T, coeffs: Vec<T>) -> Self {
        let mut out = Self { span, coeffs, slope0: T::zero(), slope1: T::zero(), mean_shift: T::zero(), scale: T::one() };
        out.slope0 = out.raw(T::zero())[1];
        out.slope1 = out.raw(span)[1];
        out
    }

    pub fn random(span: T, rng: &mut impl Rng) -> Self {
        let coeffs = (1..=SINE_MODES)
            .map(|k| lit::<T>(rng.gen_range(-1.0..1.0) / (k * k * k) as f64))
            .collect();
        Self::new(span, coeffs)
    }

    fn raw(&self, s: T) -> [T; 3] {
        let w = T::PI() / self.span;
        let mut out = [T::zero(); 3];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let f = w * lit(i as f64 + 1.0);
            let (sn, cs) = (f * s).sin_cos();
            out[0] += c * sn;
            out[1] += c * f * cs;
            out[2] -= c * f * f * sn;
        }
        out
    }

    fn clamped(&self, s: T) -> [T; 3] {
        let r = self.raw(s);
        let l = self.span;
        let x = s / l;
        let one = T::one();
        let (two, three, four, six) = (lit::<T>(2.0), lit::<T>(3.0), lit::<T>(4.0), lit::<T>(6.0));
        // q0 = s(1 − s/S)²: q0'(0) = 1, q0'(S) = 0; q1 = (s²/S²)(s − S): q1'(0) = 0, q1'(S) = 1
        let q0 = [s * (one - x) * (one - x), (one - x) * (one - three * x), (six * x - four) / l];
        let q1 = [x * x * (s - l), three * x * x - two * x, (six * x - two) / l];
        [
            r[0] - self.slope0 * q0[0] - self.slope1 * q1[0],
            r[1] - self.slope0 * q0[1] - self.slope1 * q1[1],
            r[2] - self.slope0 * q0[2] - self.slope1 * q1[2],
        ]
    }

    fn mean_mode(&self, s: T) -> [T; 3] {
        let w = T::PI() / self.span;
        let (sn, cs) = (w * s).sin_cos();
        let two = lit::<T>(2.0);
        [sn * sn, two * w * sn * cs, two * w * w * (cs * cs - sn * sn)]
    }

    pub fn eval(&self, s: T) -> [T; 3] {
        let c = self.clamped(s);
        let m = self.mean_mode(s);
        let k = self.mean_shift;
        [self.scale * (c[0] - k * m[0]), self.scale * (c[1] - k * m[1]), self.scale * (c[2] - k * m[2])]
    }

    pub fn profile(&self, s: &[T]) -> Profile<T> {
        Profile::from_fn(s, |t| self.eval(t))
    }

    /// Removes the mean over the grid `s` with a multiple of sin²(πs/S), which stays in 𝒲₁.
    pub fn with_zero_mean(mut self, s: &[T]) -> Self {
        let c: Vec<T> = s.iter().map(|&t| self.clamped(t)[0]).collect();
        let m: Vec<T> = s.iter().map(|&t| self.mean_mode(t)[0]).collect();
        self.mean_shift = simpson(s, &c) / simpson(s, &m);
        self
    }

    /// Rescales so that the sampled C² norm equals `eps`.
    pub fn with_c2_norm(mut self, s: &[T], eps: T) -> Self {
        self.scale = T::one();
        let n = self.profile(s).c2_norm();
        self.scale = eps / n;
        self
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PerturbRow {
    pub index: usize,
    pub c2_norm: f64,
    pub w22_norm_sq: f64,
    /// (ℱ − λ𝒜)(γ + φN) − (ℱ − λ𝒜)(γ).
    pub delta: f64,
    /// ½δ²(ℱ − λ𝒜)(φ), the quadratic part of Δ.
    pub second_order: f64,
    /// ½𝒞‖φ‖²_{W^{2,2}}.
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AreaRow {
    pub index: usize,
    pub c2_norm: f64,
    /// ℱ(γ_area) − ℱ(γ) for the area-preserving member at t = 1.
    pub delta_f: f64,
    pub correction: f64,
    pub area_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbSummary {
    pub x0: f64,
    #[serde(rename = "L")]
    pub half_length: f64,
    pub lambda: f64,
    pub seed: u64,
    pub count: usize,
    pub eps: f64,
    pub coercivity: f64,
    pub min_delta: f64,
    /// Smallest Δ / (½𝒞‖φ‖²); the quadratic bound holds within 20% when ≥ 0.8.
    pub min_ratio: f64,
    pub min_norm_delta: f64,
    pub all_positive: bool,
    pub bound_within_slack: bool,
    pub area_min_delta_f: Option<f64>,
    pub pass: bool,
}

pub const BOUND_SLACK: f64 = 0.8;

fn lagrangian<T: Real>(curve: &DiscreteCurve<T>, lambda: T) -> Result<T> {
    let f = total_inverse_curvature(curve, &frame_and_curvature(curve)?)?;
    Ok(f - lambda * enclosed_area(curve)?)
}

/// `count` seeded fields rescaled to ‖φ‖_{C²} = eps; mean-zero when `area` is set.
pub fn random_fields<T: Real>(s: &[T], span: T, seed: u64, count: usize, eps: T, area: bool) -> Vec<ClampedSineSeries<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut f = ClampedSineSeries::random(span, &mut rng);
            if area {
                f = f.with_zero_mean(s);
            }
            f.with_c2_norm(s, eps)
        })
        .collect()
}

/// A variation field with all four profiles drawn as clamped sine series of unit C² size;
/// φ is mean-zero when `mean_zero` is set.
pub fn random_variation_field<T: Real>(s: &[T], span: T, rng: &mut impl Rng, mean_zero: bool) -> VariationField<T> {
    let mut draw = |zero_mean: bool| {
        let mut f = ClampedSineSeries::random(span, rng);
        if zero_mean {
            f = f.with_zero_mean(s);
        }
        f.with_c2_norm(s, T::one()).profile(s)
    };
    let phi = draw(mean_zero);
    VariationField { phi, phi_tau: draw(false), psi: draw(false), psi_tau: draw(false) }
}

/// Δ(ℱ − λ𝒜) for each field against ½𝒞‖φ‖².
pub fn lagrangian_increments<T: Real>(c: &CriticalCurve<T>, fields: &[ClampedSineSeries<T>], coercivity: T) -> Result<Vec<PerturbRow>> {
    let curve = &c.curve;
    let frame = c.frame()?;
    let lambda = c.params.lambda;
    let base = lagrangian(curve, lambda)?;
    let zeros = Profile::zeros(curve.len());
    fields
        .par_iter()
        .enumerate()
        .map(|(index, field)| {
            let phi = field.profile(curve.s());
            let moved = displace(curve, &frame, &phi, &zeros)?;
            let g = lagrangian(&moved, lambda)?;
            let delta = g - base;
            let w = phi.w22_norm_sq(curve.s());
            let bound = coercivity * w / lit(2.0);
            let second = second_variation_g(c, &VariationField::normal(phi.clone())).total / lit(2.0);
            Ok(PerturbRow {
                index,
                c2_norm: to_f64(phi.c2_norm()),
                w22_norm_sq: to_f64(w),
                delta: to_f64(delta),
                second_order: to_f64(second),
                bound: to_f64(bound),
                ratio: to_f64(delta / bound),
            })
        })
        .collect()
}

/// ℱ along the area-preserving correction of each (mean-zero) field at t = 1.
pub fn area_increments<T: Real>(c: &CriticalCurve<T>, fields: &[ClampedSineSeries<T>]) -> Result<Vec<AreaRow>> {
    let curve = &c.curve;
    let f0 = total_inverse_curvature(curve, &c.frame()?)?;
    fields
        .par_iter()
        .enumerate()
        .map(|(index, field)| {
            let phi = field.profile(curve.s());
            let fam = make_area_preserving(curve, &phi, &[T::one()])?;
            let moved = &fam.curves[0];
            let f = total_inverse_curvature(moved, &frame_and_curvature(moved)?)?;
            Ok(AreaRow {
                index,
                c2_norm: to_f64(phi.c2_norm()),
                delta_f: to_f64(f - f0),
                correction: to_f64(fam.g[0]),
                area_residual: to_f64(fam.residual[0]),
            })
        })
        .collect()
}

pub struct PerturbSpec {
    pub seed: u64,
    pub count: usize,
    pub eps: f64,
    pub area: bool,
}

pub fn run_perturbations(
    c: &CriticalCurve<f64>,
    coercivity: f64,
    spec: &PerturbSpec,
) -> Result<(PerturbSummary, Vec<PerturbRow>, Option<Vec<AreaRow>>)> {
    if spec.count == 0 || !(spec.eps > 0.0) {
        return Err(Error::InvalidInput("count and eps must be positive".into()));
    }
    let s = c.s();
    let span = 2.0 * c.params.half_length;
    let fields = random_fields(s, span, spec.seed, spec.count, spec.eps, false);
    let rows = lagrangian_increments(c, &fields, coercivity)?;
    let area_rows = if spec.area {
        let fields = random_fields(s, span, spec.seed ^ 0x5eed, spec.count, spec.eps, true);
        Some(area_increments(c, &fields)?)
    } else {
        None
    };
    let min_delta = rows.iter().map(|r| r.delta).fold(f64::INFINITY, f64::min);
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let smallest = rows.iter().min_by(|a, b| a.w22_norm_sq.total_cmp(&b.w22_norm_sq)).unwrap();
    let area_min = area_rows.as_ref().map(|r| r.iter().map(|a| a.delta_f).fold(f64::INFINITY, f64::min));
    let all_positive = min_delta > 0.0;
    let bound_within_slack = min_ratio >= BOUND_SLACK;
    let summary = PerturbSummary {
        x0: c.params.x0,
        half_length: c.params.half_length,
        lambda: c.params.lambda,
        seed: spec.seed,
        count: spec.count,
        eps: spec.eps,
        coercivity,
        min_delta,
        min_ratio,
        min_norm_delta: smallest.delta,
        all_positive,
        bound_within_slack,
        area_min_delta_f: area_min,
        pass: all_positive && bound_within_slack && area_min.is_none_or(|d| d > 0.0),
    };
    Ok((summary, rows, area_rows))
}
