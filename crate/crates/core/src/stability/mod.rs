//! Stability of the critical curve: the constant μ_{𝒲₁} in
//! b(u,u) ≥ μ a(u,u) on clamped profiles, computed from the characteristic
//! determinant and from a Hermite finite-element Rayleigh quotient.

pub mod fem;
pub mod regime;
pub mod residual;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::critical::{make_params, CriticalEvaluator, CriticalParams};
use crate::error::Result;
use crate::profile::Profile;
use crate::quad::simpson;
use crate::real::{lit, to_f64, Real};

pub use fem::{
    assemble, coercivity_constant, coercivity_minimizer, rayleigh_min_discrete, rayleigh_minimizer,
    w2_bvp_statement, DiscreteMinimizer, HermiteMesh, W2Statement,
};
pub use regime::{
    characteristic_det, find_mu_w1, find_mu_w1_ratio, mu0_from_ratio, mu0_threshold, MuW1Search, Regime,
    RegimeParams, RegimeSample,
};
pub use residual::{
    closed_form_residuals, ode_residual, solution_basis, wronskian_check, ChebyshevProfile, JetProfile,
    ParticularSolution, ResidualCheck, SolutionBasis, WronskianCheck,
};

/// r = 2/H³, q = 2/H, p = (2 − λ)H along the critical curve.
#[derive(Debug, Clone, Copy)]
pub struct CoefficientTriple<T> {
    pub eval: CriticalEvaluator<T>,
}

impl<T: Real> CoefficientTriple<T> {
    pub fn new(params: CriticalParams<T>) -> Self {
        Self { eval: CriticalEvaluator { params } }
    }

    pub fn at(&self, s: T) -> [T; 3] {
        let h = self.eval.curvature(s);
        let two = lit::<T>(2.0);
        [two / (h * h * h), two / h, (two - self.eval.params.lambda) * h]
    }
}

/// (a(u,v), b(u,v)) by Simpson quadrature on the grid `s`.
pub fn quadratic_forms<T: Real>(params: &CriticalParams<T>, s: &[T], u: &Profile<T>, v: &Profile<T>) -> (T, T) {
    let c = CoefficientTriple::new(*params);
    let mut fa = Vec::with_capacity(s.len());
    let mut fb = Vec::with_capacity(s.len());
    for (i, &si) in s.iter().enumerate() {
        let [r, q, p] = c.at(si);
        fa.push(q * u.d1[i] * v.d1[i]);
        fb.push(r * u.d2[i] * v.d2[i] + p * u.v[i] * v.v[i]);
    }
    (simpson(s, &fa), simpson(s, &fb))
}

/// Chebyshev degree used to differentiate finite-element profiles four times: high enough
/// to resolve the eigenfunctions, low enough that the O(h⁴) element error is not amplified.
pub const RESIDUAL_DEGREE: usize = 18;
const RESIDUAL_NODES: usize = 8192;
const RESIDUAL_SAMPLES: usize = 400;

/// Residual of the clamped equation (ν = 0) for a discrete minimizer.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EigenvectorCheck {
    pub mu: f64,
    pub interior_residual: f64,
    pub endpoint_defect: f64,
    pub chebyshev_tail: f64,
}

pub fn eigenvector_check<T: Real>(params: &CriticalParams<T>, m: &DiscreteMinimizer<T>) -> EigenvectorCheck {
    let ch = ChebyshevProfile::fit(params, |s| m.eval(s)[0], RESIDUAL_NODES, RESIDUAL_DEGREE);
    EigenvectorCheck {
        mu: to_f64(m.value),
        interior_residual: to_f64(ode_residual(&ch, m.value, T::zero(), params, RESIDUAL_SAMPLES)),
        endpoint_defect: to_f64(m.endpoint_defect()),
        chebyshev_tail: to_f64(ch.tail_ratio()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub x0: f64,
    #[serde(rename = "L")]
    pub half_length: f64,
    pub ratio: f64,
    pub mu0: f64,
    pub mu_w1_det: f64,
    pub mu_w1_rayleigh: f64,
    pub rel_gap: f64,
    pub elements: usize,
    pub coercivity: f64,
    pub regime_trace: Vec<RegimeSample>,
    pub below_min_margin: f64,
    pub critical_det: f64,
    pub eigenvector: EigenvectorCheck,
    pub wronskians: Vec<WronskianCheck>,
    pub residuals: Vec<ResidualCheck>,
    pub pass: bool,
}

/// Runs both computations of μ_{𝒲₁}, the coercivity estimate and the closed-form checks.
pub fn analyze<T: Real>(params: &CriticalParams<T>, config: &RunConfig) -> Result<StabilityReport> {
    let search = find_mu_w1_ratio(params.ratio(), lit(config.mu_scan_step), lit(config.root_tol), lit(config.mu_cap))?;
    let n = config.fe_elements;
    let (ray, coer) = rayon::join(|| rayleigh_minimizer(*params, n), || coercivity_constant(*params, n));
    let (ray, coer) = (ray?, coer?);
    let mu_det = search.mu_w1;
    let mu_ray = to_f64(ray.value);
    let rel_gap = (mu_det - mu_ray).abs() / mu_det;
    let mu0 = to_f64(mu0_threshold(params));
    let mu_above: T = lit(mu_det);
    let wronskians = vec![
        wronskian_check(lit::<T>(0.5 * mu0), params),
        residual::wronskian_for(&residual::basis_for(RegimeParams::critical(params.ratio()), params)),
        wronskian_check(mu_above, params),
    ];
    let residuals = closed_form_residuals(params, mu_above, RESIDUAL_SAMPLES);
    let eigenvector = eigenvector_check(params, &ray);
    let pass = mu_det > 1.0 && mu_ray > 1.0 && to_f64(coer) > 0.0;
    Ok(StabilityReport {
        x0: to_f64(params.x0),
        half_length: to_f64(params.half_length),
        ratio: to_f64(params.ratio()),
        mu0,
        mu_w1_det: mu_det,
        mu_w1_rayleigh: mu_ray,
        rel_gap,
        elements: n,
        coercivity: to_f64(coer),
        regime_trace: search.trace,
        below_min_margin: search.below_min_margin,
        critical_det: search.critical_det,
        eigenvector,
        wronskians,
        residuals,
        pass,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub ratio: f64,
    pub mu0: f64,
    pub mu_w1: f64,
    pub mu_w1_rayleigh: f64,
    pub coercivity: f64,
}

impl SweepRow {
    pub fn csv_header() -> &'static str {
        "ratio,mu0,mu_w1,mu_w1_rayleigh,coercivity"
    }
}

/// Ratios r in (0, 1/4) realized with x0 = r, L = 1 − r.
pub fn sweep_params(ratio: f64) -> Result<CriticalParams<f64>> {
    make_params(ratio, 1.0 - ratio)
}

/// μ_{𝒲₁}, its Rayleigh estimate and the coercivity constant for each ratio, in parallel.
pub fn ratio_sweep(ratios: &[f64], config: &RunConfig) -> Result<Vec<SweepRow>> {
    ratios
        .par_iter()
        .map(|&ratio| {
            let p = sweep_params(ratio)?;
            let search = find_mu_w1_ratio(ratio, config.mu_scan_step, config.root_tol, config.mu_cap)?;
            let ray = rayleigh_min_discrete(p, config.fe_elements)?;
            let coer = coercivity_constant(p, config.fe_elements)?;
            Ok(SweepRow { ratio, mu0: search.mu0, mu_w1: search.mu_w1, mu_w1_rayleigh: ray, coercivity: coer })
        })
        .collect()
}
