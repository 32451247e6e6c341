//! C¹ cubic Hermite elements for the Rayleigh quotient b(u,u)/a(u,u).
//!
//! Node i carries the value at dof 2i and the slope at dof 2i + 1.

use serde::Serialize;

use crate::critical::{CriticalEvaluator, CriticalParams};
use crate::error::{Error, Result};
use crate::linalg::{dot, smallest_eigenpair_with, LinearOperator, SymBand};
use crate::quad::gauss_legendre;
use crate::real::{from_usize, lit, to_f64, Real};

const HALF_BANDWIDTH: usize = 3;
const GAUSS_POINTS: usize = 6;
const EIG_TOL: f64 = 1e-14;
const EIG_MAX_ITER: usize = 5000;
const REFINE_STEPS: usize = 3;

/// Shape functions and their first two derivatives at t ∈ [0, 1] on an element of length h.
fn shape<T: Real>(t: T, h: T) -> [[T; 4]; 3] {
    let (one, two, three) = (T::one(), lit::<T>(2.0), lit::<T>(3.0));
    let (four, six, twelve) = (lit::<T>(4.0), lit::<T>(6.0), lit::<T>(12.0));
    let t2 = t * t;
    let t3 = t2 * t;
    let n = [
        one - three * t2 + two * t3,
        h * (t - two * t2 + t3),
        three * t2 - two * t3,
        h * (t3 - t2),
    ];
    let dn = [
        (six * t2 - six * t) / h,
        one - four * t + three * t2,
        (six * t - six * t2) / h,
        three * t2 - two * t,
    ];
    let h2 = h * h;
    let ddn = [
        (twelve * t - six) / h2,
        (six * t - four) / h,
        (six - twelve * t) / h2,
        (six * t - two) / h,
    ];
    [n, dn, ddn]
}

/// Uniform mesh of n elements on [0, 2L].
#[derive(Debug, Clone, Copy)]
pub struct HermiteMesh<T> {
    pub elements: usize,
    pub h: T,
    pub eval: CriticalEvaluator<T>,
}

impl<T: Real> HermiteMesh<T> {
    pub fn new(params: CriticalParams<T>, elements: usize) -> Self {
        let h = lit::<T>(2.0) * params.half_length / from_usize(elements);
        Self { elements, h, eval: CriticalEvaluator { params } }
    }

    pub fn dofs(&self) -> usize {
        2 * (self.elements + 1)
    }

    /// Value, first and second derivative of the Hermite interpolant with full dof vector `w`.
    pub fn eval_field(&self, w: &[T], s: T) -> [T; 3] {
        let pos = (s / self.h).max(T::zero());
        let e = pos.floor().to_usize().unwrap_or(0).min(self.elements - 1);
        let t = pos - from_usize(e);
        let sh = shape(t, self.h);
        let mut out = [T::zero(); 3];
        for (k, row) in sh.iter().enumerate() {
            out[k] = (0..4).map(|j| row[j] * w[2 * e + j]).sum();
        }
        out
    }
}

/// Global matrices over the full (unconstrained) dof space.
#[derive(Debug, Clone)]
pub struct Assembled<T> {
    pub mesh: HermiteMesh<T>,
    /// a(u,v) = ∫ 2u̇v̇/H.
    pub a: SymBand<T>,
    /// b(u,v) = ∫ (2üv̈/H³ + (2−λ)Huv).
    pub b: SymBand<T>,
    /// ∫ uv.
    pub mass: SymBand<T>,
    /// W^{2,2} inner product ∫ (uv + u̇v̇ + üv̈).
    pub gram: SymBand<T>,
    /// ∫ N_i, the mean-value functional.
    pub mean: Vec<T>,
}

pub fn assemble<T: Real>(params: CriticalParams<T>, elements: usize) -> Assembled<T> {
    let mesh = HermiteMesh::new(params, elements);
    let nd = mesh.dofs();
    let mut a = SymBand::zeros(nd, HALF_BANDWIDTH);
    let mut b = SymBand::zeros(nd, HALF_BANDWIDTH);
    let mut mass = SymBand::zeros(nd, HALF_BANDWIDTH);
    let mut gram = SymBand::zeros(nd, HALF_BANDWIDTH);
    let mut mean = vec![T::zero(); nd];
    let (xg, wg) = gauss_legendre::<T>(GAUSS_POINTS);
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    let c = two - params.lambda;
    let h = mesh.h;
    for e in 0..elements {
        let s0 = from_usize::<T>(e) * h;
        for (&x, &w) in xg.iter().zip(&wg) {
            let t = half * (x + T::one());
            let wt = w * half * h;
            let hs = mesh.eval.curvature(s0 + t * h);
            let [n, dn, ddn] = shape(t, h);
            let (ka, kb2, kb0) = (two / hs * wt, two / (hs * hs * hs) * wt, c * hs * wt);
            for i in 0..4 {
                let gi = 2 * e + i;
                mean[gi] += n[i] * wt;
                for j in 0..=i {
                    let gj = 2 * e + j;
                    a.add(gi, gj, ka * dn[i] * dn[j]);
                    b.add(gi, gj, kb2 * ddn[i] * ddn[j] + kb0 * n[i] * n[j]);
                    mass.add(gi, gj, wt * n[i] * n[j]);
                    gram.add(gi, gj, wt * (n[i] * n[j] + dn[i] * dn[j] + ddn[i] * ddn[j]));
                }
            }
        }
    }
    Assembled { mesh, a, b, mass, gram, mean }
}

/// Element-by-element quadratic forms of a full dof vector: (a(u,u), b(u,u), ‖u‖²_{W^{2,2}}).
///
/// Evaluating u̇ and ü at the quadrature points first avoids the cancellation in wᵀBw,
/// whose entries grow like h⁻³.
pub fn field_forms<T: Real>(mesh: &HermiteMesh<T>, w: &[T]) -> (T, T, T) {
    let (xg, wg) = gauss_legendre::<T>(GAUSS_POINTS);
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    let c = two - mesh.eval.params.lambda;
    let h = mesh.h;
    let (mut a, mut b, mut g) = (T::zero(), T::zero(), T::zero());
    for e in 0..mesh.elements {
        let s0 = from_usize::<T>(e) * h;
        for (&x, &wq) in xg.iter().zip(&wg) {
            let t = half * (x + T::one());
            let wt = wq * half * h;
            let hs = mesh.eval.curvature(s0 + t * h);
            let sh = shape(t, h);
            let f: Vec<T> = sh.iter().map(|row| (0..4).map(|j| row[j] * w[2 * e + j]).sum()).collect();
            a += wt * two / hs * f[1] * f[1];
            b += wt * (two / (hs * hs * hs) * f[2] * f[2] + c * hs * f[0] * f[0]);
            g += wt * (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
        }
    }
    (a, b, g)
}

/// Weights of (u v, u̇ v̇, ü v̈) in a bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    A,
    B,
    /// b − a
    BMinusA,
    Gram,
}

/// Matrix-free application of a form restricted to a set of dofs.
///
/// Fields are evaluated at the quadrature points before weighting, so the product
/// avoids the cancellation between band entries of size h⁻³.
pub struct FieldOperator<'a, T> {
    mesh: &'a HermiteMesh<T>,
    keep: &'a [usize],
    shapes: Vec<[[T; 4]; 3]>,
    /// Per element and quadrature point: weights of u·N, u̇·Ṅ, ü·N̈.
    coef: Vec<[T; 3]>,
}

impl<'a, T: Real> FieldOperator<'a, T> {
    pub fn new(mesh: &'a HermiteMesh<T>, keep: &'a [usize], form: Form) -> Self {
        let (xg, wg) = gauss_legendre::<T>(GAUSS_POINTS);
        let half = lit::<T>(0.5);
        let two = lit::<T>(2.0);
        let c = two - mesh.eval.params.lambda;
        let h = mesh.h;
        let shapes = xg.iter().map(|&x| shape(half * (x + T::one()), h)).collect();
        let mut coef = Vec::with_capacity(mesh.elements * GAUSS_POINTS);
        for e in 0..mesh.elements {
            let s0 = from_usize::<T>(e) * h;
            for (&x, &w) in xg.iter().zip(&wg) {
                let wt = w * half * h;
                let hs = mesh.eval.curvature(s0 + half * (x + T::one()) * h);
                let (a1, b0, b2) = (two / hs, c * hs, two / (hs * hs * hs));
                let k = match form {
                    Form::A => [T::zero(), a1, T::zero()],
                    Form::B => [b0, T::zero(), b2],
                    Form::BMinusA => [b0, -a1, b2],
                    Form::Gram => [T::one(), T::one(), T::one()],
                };
                coef.push(k.map(|v| v * wt));
            }
        }
        Self { mesh, keep, shapes, coef }
    }
}

impl<T: Real> LinearOperator<T> for FieldOperator<'_, T> {
    fn apply(&self, x: &[T]) -> Vec<T> {
        let nd = self.mesh.dofs();
        let w = expand(self.keep, x, nd);
        let mut out = vec![T::zero(); nd];
        for e in 0..self.mesh.elements {
            let local = &w[2 * e..2 * e + 4];
            for (q, sh) in self.shapes.iter().enumerate() {
                let k = self.coef[e * GAUSS_POINTS + q];
                let f: [T; 3] = std::array::from_fn(|d| (0..4).map(|j| sh[d][j] * local[j]).sum::<T>() * k[d]);
                for i in 0..4 {
                    out[2 * e + i] += f[0] * sh[0][i] + f[1] * sh[1][i] + f[2] * sh[2][i];
                }
            }
        }
        self.keep.iter().map(|&i| out[i]).collect()
    }
}

/// Dofs kept for 𝒲₁: all except the values and slopes at both ends.
pub fn w1_dofs(elements: usize) -> Vec<usize> {
    (2..2 * elements).collect()
}

/// Dofs kept for 𝒲₂: all except the two end values.
pub fn w2_dofs(elements: usize) -> Vec<usize> {
    (1..2 * elements + 2).filter(|&i| i != 2 * elements).collect()
}

fn expand<T: Real>(keep: &[usize], w: &[T], nd: usize) -> Vec<T> {
    let mut full = vec![T::zero(); nd];
    for (&k, &v) in keep.iter().zip(w) {
        full[k] = v;
    }
    full
}

/// A discrete minimizer: eigenvalue and the full dof vector, normalized to max |u| = 1 at the nodes.
#[derive(Debug, Clone)]
pub struct DiscreteMinimizer<T> {
    pub value: T,
    pub mesh: HermiteMesh<T>,
    pub dofs: Vec<T>,
    pub iterations: usize,
    pub residual: T,
}

impl<T: Real> DiscreteMinimizer<T> {
    pub fn eval(&self, s: T) -> [T; 3] {
        self.mesh.eval_field(&self.dofs, s)
    }

    /// |u| and |u̇| at both ends.
    pub fn endpoint_defect(&self) -> T {
        let n = self.dofs.len();
        [0, 1, n - 2, n - 1].iter().fold(T::zero(), |m, &i| m.max(self.dofs[i].abs()))
    }
}

#[derive(Debug, Clone, Copy)]
enum Quotient {
    /// b / a
    Rayleigh,
    /// (b − a) / ‖·‖²_{W^{2,2}}
    Coercivity,
}

fn minimize<T: Real>(
    k: &SymBand<T>,
    forms: (Form, Form),
    mesh: HermiteMesh<T>,
    keep: &[usize],
    constraint: Option<&[T]>,
    quotient: Quotient,
) -> Result<DiscreteMinimizer<T>> {
    let k_op = FieldOperator::new(&mesh, keep, forms.0);
    let m_op = FieldOperator::new(&mesh, keep, forms.1);
    let ep = smallest_eigenpair_with(k, &k_op, &m_op, constraint, lit(EIG_TOL), EIG_MAX_ITER, REFINE_STEPS)?;
    let mut dofs = expand(keep, &ep.vector, mesh.dofs());
    let (a, b, g) = field_forms(&mesh, &dofs);
    let value = match quotient {
        Quotient::Rayleigh => b / a,
        Quotient::Coercivity => (b - a) / g,
    };
    if !value.is_finite() {
        return Err(Error::SingularForm("non-finite Rayleigh quotient".into()));
    }
    let peak = dofs.iter().step_by(2).fold(T::zero(), |m, &v| if v.abs() > m.abs() { v } else { m });
    if peak != T::zero() {
        dofs.iter_mut().for_each(|v| *v /= peak);
    }
    Ok(DiscreteMinimizer { value, mesh, dofs, iterations: ep.iterations, residual: ep.residual })
}

/// Smallest b(u,u)/a(u,u) over the clamped Hermite space with n elements.
pub fn rayleigh_minimizer<T: Real>(params: CriticalParams<T>, n: usize) -> Result<DiscreteMinimizer<T>> {
    if n < 64 {
        return Err(Error::InvalidInput(format!("need at least 64 elements, got {n}")));
    }
    let asm = assemble(params, n);
    let keep = w1_dofs(n);
    minimize(&asm.b.restrict(&keep), (Form::B, Form::A), asm.mesh, &keep, None, Quotient::Rayleigh)
}

pub fn rayleigh_min_discrete<T: Real>(params: CriticalParams<T>, n: usize) -> Result<T> {
    Ok(rayleigh_minimizer(params, n)?.value)
}

/// Smallest (b − a)(u,u)/‖u‖²_{W^{2,2}} over the clamped Hermite space.
pub fn coercivity_minimizer<T: Real>(params: CriticalParams<T>, n: usize) -> Result<DiscreteMinimizer<T>> {
    let asm = assemble(params, n);
    let keep = w1_dofs(n);
    let k = asm.b.restrict(&keep).sub_scaled(&asm.a.restrict(&keep), T::one());
    minimize(&k, (Form::BMinusA, Form::Gram), asm.mesh, &keep, None, Quotient::Coercivity)
}

pub fn coercivity_constant<T: Real>(params: CriticalParams<T>, n: usize) -> Result<T> {
    let c = coercivity_minimizer(params, n)?.value;
    if !(c > T::zero()) {
        return Err(Error::SingularForm(format!("coercivity constant not positive: {c}")));
    }
    Ok(c)
}

/// Data of the one-sided problem on 𝒲₂ = {u(0) = u(2L) = 0, ∫u = 0}.
#[derive(Debug, Clone, Serialize)]
pub struct W2Statement {
    pub equation: String,
    pub conditions: Vec<String>,
    /// Columns s, r, q, p on a coarse grid.
    pub coefficients: Vec<[f64; 4]>,
    pub mu_w2_rayleigh: f64,
    pub mu_w1_rayleigh: f64,
    pub elements: usize,
    /// |∫u| / ‖u‖_{L²} of the returned minimizer.
    pub mean_defect: f64,
    pub natural_bc_defect: f64,
}

pub fn w2_bvp_statement<T: Real>(params: CriticalParams<T>, n: usize) -> Result<(W2Statement, DiscreteMinimizer<T>)> {
    let asm = assemble(params, n);
    let keep = w2_dofs(n);
    let c: Vec<T> = keep.iter().map(|&i| asm.mean[i]).collect();
    let min = minimize(&asm.b.restrict(&keep), (Form::B, Form::A), asm.mesh, &keep, Some(&c), Quotient::Rayleigh)?;
    let l2 = asm.mass.quad(&min.dofs, &min.dofs).sqrt();
    let mean_defect = dot(&asm.mean, &min.dofs).abs() / l2;
    let w1 = rayleigh_min_discrete(params, n)?;
    let two_l = lit::<T>(2.0) * params.half_length;
    let eps = lit::<T>(1e-9);
    let rough = [T::zero() + eps, two_l - eps].map(|s| to_f64(min.eval(s)[2].abs()));
    let ev = asm.mesh.eval;
    let coefficients = (0..=8)
        .map(|i| {
            let s = two_l * lit(i as f64 / 8.0);
            let h = ev.curvature(s);
            let two = lit::<T>(2.0);
            [to_f64(s), to_f64(two / (h * h * h)), to_f64(two / h), to_f64((two - params.lambda) * h)]
        })
        .collect();
    let stmt = W2Statement {
        equation: "(r u'')'' + mu (q u')' + p u = nu on (0, 2L), r = 2/H^3, q = 2/H, p = (2 - lambda) H".into(),
        conditions: vec![
            "u(0) = 0".into(),
            "u(2L) = 0".into(),
            "u''(0) = u''(2L) = 0 (natural)".into(),
            "integral of u over (0, 2L) = 0, nu free".into(),
        ],
        coefficients,
        mu_w2_rayleigh: to_f64(min.value),
        mu_w1_rayleigh: to_f64(w1),
        elements: n,
        mean_defect: to_f64(mean_defect),
        natural_bc_defect: rough[0].max(rough[1]),
    };
    Ok((stmt, min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::make_params;

    #[test]
    fn shape_partition_and_derivatives() {
        let h = 0.37;
        for &t in &[0.0, 0.2, 0.5, 0.9, 1.0] {
            let [n, dn, _] = shape(t, h);
            assert!((n[0] + n[2] - 1.0f64).abs() < 1e-15);
            assert!((dn[0] + dn[2]).abs() < 1e-12);
            // u(s) = s reproduced by values (0, h) and unit slopes
            let v = n[1] + n[2] * h + n[3];
            assert!((v - t * h).abs() < 1e-14);
        }
    }

    #[test]
    fn mean_vector_integrates_constants() {
        let p = make_params(1.0, 4.0).unwrap();
        let asm = assemble(p, 64);
        let total: f64 = asm.mean.iter().step_by(2).sum();
        assert!((total - 8.0).abs() < 1e-12);
    }

    #[test]
    fn rayleigh_above_root_and_decreasing() {
        let p = make_params(1.0, 4.0).unwrap();
        let coarse = rayleigh_min_discrete(p, 64).unwrap();
        let fine = rayleigh_min_discrete(p, 128).unwrap();
        assert!(fine <= coarse + 1e-12);
        assert!(fine > 1.3810595174139277);
        assert!((fine - 1.3810595174139277) / 1.3810595174139277 < 1e-3);
    }

    #[test]
    fn clamped_minimizer_endpoints_vanish() {
        let p = make_params(1.0, 4.0).unwrap();
        let m = rayleigh_minimizer(p, 64).unwrap();
        assert_eq!(m.endpoint_defect(), 0.0);
    }
}
