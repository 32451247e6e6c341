//! Solution regimes of the homogeneous fourth-order equation and the
//! characteristic determinant of the clamped problem.

use rayon::prelude::*;
use serde::Serialize;

use crate::critical::CriticalParams;
use crate::error::{Error, Result};
use crate::real::{lit, to_f64, Real};
use crate::roots::brent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Below,
    Critical,
    Above,
}

/// ρ = x0/(L+x0) and the frequencies of the homogeneous solutions at a given μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeParams<T> {
    pub mu: T,
    pub mu0: T,
    pub ratio: T,
    pub regime: Regime,
    pub alpha: T,
    /// Hyperbolic frequency; zero outside the Below regime.
    pub beta: T,
    /// Second trigonometric frequency; zero outside the Above regime.
    pub gamma: T,
}

/// μ0 = −ρ + 2√ρ.
pub fn mu0_from_ratio<T: Real>(ratio: T) -> T {
    -ratio + lit::<T>(2.0) * ratio.sqrt()
}

pub fn mu0_threshold<T: Real>(params: &CriticalParams<T>) -> T {
    mu0_from_ratio(params.ratio())
}

impl<T: Real> RegimeParams<T> {
    /// Classifies μ; values within a few ulps of μ0 are treated as critical.
    pub fn new(mu: T, ratio: T) -> Self {
        let mu0 = mu0_from_ratio(ratio);
        let band = lit::<T>(8.0) * T::epsilon() * mu0.max(T::one());
        if (mu - mu0).abs() <= band {
            return Self::critical(ratio);
        }
        let half = lit::<T>(0.5);
        let two_root = lit::<T>(2.0) * ratio.sqrt();
        let alpha = half * (mu + ratio + two_root).sqrt();
        if mu < mu0 {
            let beta = half * (-mu - ratio + two_root).sqrt();
            Self { mu, mu0, ratio, regime: Regime::Below, alpha, beta, gamma: T::zero() }
        } else {
            let gamma = half * (mu + ratio - two_root).sqrt();
            Self { mu, mu0, ratio, regime: Regime::Above, alpha, beta: T::zero(), gamma }
        }
    }

    /// μ = μ0 exactly: α = ρ^{1/4}.
    pub fn critical(ratio: T) -> Self {
        let mu0 = mu0_from_ratio(ratio);
        Self {
            mu: mu0,
            mu0,
            ratio,
            regime: Regime::Critical,
            alpha: ratio.sqrt().sqrt(),
            beta: T::zero(),
            gamma: T::zero(),
        }
    }

    pub fn from_params(mu: T, params: &CriticalParams<T>) -> Self {
        Self::new(mu, params.ratio())
    }

    /// α − γ and α + γ (Above regime).
    pub fn z(&self) -> (T, T) {
        (self.alpha - self.gamma, self.alpha + self.gamma)
    }
}

/// Determinant of the clamped boundary conditions in the regime-specific normalization.
pub fn characteristic_det_regime<T: Real>(rp: &RegimeParams<T>) -> T {
    let two_pi = lit::<T>(2.0) * T::PI();
    let (a, b, g) = (rp.alpha, rp.beta, rp.gamma);
    match rp.regime {
        Regime::Below => {
            let sh = (two_pi * b).sinh();
            let sn = (two_pi * a).sin();
            a * a * sh * sh - b * b * sn * sn
        }
        Regime::Critical => {
            let sn = (two_pi * a).sin();
            sn * sn - two_pi * two_pi * a * a
        }
        Regime::Above => {
            let four = lit::<T>(4.0);
            let sa = (two_pi * a).sin();
            let sg = (two_pi * g).sin();
            four * g * g * sa * sa - four * a * a * sg * sg
        }
    }
}

pub fn characteristic_det<T: Real>(mu: T, params: &CriticalParams<T>) -> T {
    characteristic_det_regime(&RegimeParams::from_params(mu, params))
}

/// (sinh 2πβ/β)² − (sin 2πα/α)², strictly positive throughout the Below regime.
pub fn below_margin<T: Real>(rp: &RegimeParams<T>) -> T {
    let two_pi = lit::<T>(2.0) * T::PI();
    let sh = (two_pi * rp.beta).sinh() / rp.beta;
    let sn = (two_pi * rp.alpha).sin() / rp.alpha;
    sh * sh - sn * sn
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeSample {
    pub mu: f64,
    pub regime: Regime,
    pub det: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MuW1Search {
    pub ratio: f64,
    pub mu0: f64,
    pub mu_w1: f64,
    pub bracket: [f64; 2],
    /// Smallest normalized Below-regime margin seen on the scan of (0, μ0).
    pub below_min_margin: f64,
    pub critical_det: f64,
    pub trace: Vec<RegimeSample>,
}

const SCAN_BLOCK: usize = 2048;

/// Smallest root of the Above-regime determinant, after checking that no root exists in (0, μ0].
pub fn find_mu_w1_ratio<T: Real>(ratio: T, step: T, tol: T, cap: T) -> Result<MuW1Search> {
    let mu0 = mu0_from_ratio(ratio);
    let mut trace = Vec::new();

    // Below regime: the normalized margin must stay positive on the whole grid.
    let n_below = (mu0 / step).ceil().to_usize().unwrap_or(1).max(1);
    let below: Vec<(T, T, T)> = (1..n_below)
        .into_par_iter()
        .filter_map(|i| {
            let mu = step * lit(i as f64);
            let rp = RegimeParams::new(mu, ratio);
            (rp.regime == Regime::Below).then(|| (mu, below_margin(&rp), characteristic_det_regime(&rp)))
        })
        .collect();
    let mut below_min = T::infinity();
    for (i, &(mu, margin, det)) in below.iter().enumerate() {
        below_min = below_min.min(margin);
        if !(margin > T::zero()) {
            return Err(Error::SingularForm(format!("determinant vanishes below mu0 at mu = {mu}")));
        }
        if i % 100 == 0 {
            trace.push(RegimeSample { mu: to_f64(mu), regime: Regime::Below, det: to_f64(det) });
        }
    }
    let crit = characteristic_det_regime(&RegimeParams::critical(ratio));
    trace.push(RegimeSample { mu: to_f64(mu0), regime: Regime::Critical, det: to_f64(crit) });
    if !(crit < T::zero()) {
        return Err(Error::SingularForm(format!("critical determinant not negative: {crit}")));
    }

    let det_above = |mu: T| characteristic_det_regime(&RegimeParams::new(mu, ratio));
    let n_above = ((cap - mu0) / step).floor().to_usize().unwrap_or(0);
    let mut start = 1usize;
    let mut prev_mu = mu0 + step;
    let mut prev = det_above(prev_mu);
    while start < n_above {
        let end = (start + SCAN_BLOCK).min(n_above);
        let block: Vec<(T, T)> = (start + 1..=end)
            .into_par_iter()
            .map(|i| {
                let mu = mu0 + step * lit(i as f64);
                (mu, det_above(mu))
            })
            .collect();
        for &(mu, d) in &block {
            if d == T::zero() || d.signum() != prev.signum() {
                let root = if d == T::zero() { mu } else { brent(det_above, prev_mu, mu, tol, 200)? };
                trace.push(RegimeSample { mu: to_f64(prev_mu), regime: Regime::Above, det: to_f64(prev) });
                trace.push(RegimeSample { mu: to_f64(mu), regime: Regime::Above, det: to_f64(d) });
                return Ok(MuW1Search {
                    ratio: to_f64(ratio),
                    mu0: to_f64(mu0),
                    mu_w1: to_f64(root),
                    bracket: [to_f64(prev_mu), to_f64(mu)],
                    below_min_margin: to_f64(below_min),
                    critical_det: to_f64(crit),
                    trace,
                });
            }
            prev_mu = mu;
            prev = d;
        }
        start = end;
    }
    Err(Error::RootNotFound { cap: to_f64(cap) })
}

pub fn find_mu_w1<T: Real>(params: &CriticalParams<T>, step: T, tol: T) -> Result<MuW1Search> {
    find_mu_w1_ratio(params.ratio(), step, tol, lit(50.0))
}
