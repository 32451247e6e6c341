//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use icl_core::critical::{
    area_closed_form, build_critical_curve, el_residual, f_closed_form, hk_counterexample_ratio, make_params,
    solve_length, CriticalParams, InvariantReport,
};
use icl_core::curvegeom::{enclosed_area, total_inverse_curvature};
use icl_core::perturb::{random_variation_field, run_perturbations, PerturbSpec};
use icl_core::stability::{
    closed_form_residuals, coercivity_constant, find_mu_w1_ratio, rayleigh_min_discrete, sweep_params, Regime,
};
use icl_core::steiner::{corpus_specs, run_corpus, Corpus, DEFAULT_U_DELTA};
use icl_core::variations::{check_second_variations, first_variation_f, VariationField};
use icl_core::{Error, RunConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Result<Outcome, Error>) -> bool {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    let (pass, detail) = match out {
        Ok(o) => (o.pass && dt < limit, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "{} criterion {id} ({name}): {detail}; runtime {:.2} s (limit {} s)",
        if pass { "PASS" } else { "FAIL" },
        dt.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

/// Ten pairs with L/x0 spread geometrically over (3, 1e4], normalized to L + x0 = 1.
fn pairs() -> Vec<CriticalParams<f64>> {
    (0..10)
        .map(|i| {
            let q = 3.5f64 * (1e4f64 / 3.5).powf(i as f64 / 9.0);
            let x0 = 1.0 / (1.0 + q);
            make_params(x0, 1.0 - x0).unwrap()
        })
        .collect()
}

fn criterion_1() -> Result<Outcome, Error> {
    let mut worst_el = 0.0f64;
    let mut worst_bc = 0.0f64;
    for p in pairs() {
        let c = build_critical_curve(p, 4097)?;
        worst_el = worst_el.max(el_residual(&c));
        worst_bc = worst_bc.max(InvariantReport::new(&c)?.max_boundary_error());
    }
    Ok(Outcome {
        pass: worst_el <= 1e-10 && worst_bc <= 1e-10,
        detail: format!("max EL residual {worst_el:.3e}, max boundary error {worst_bc:.3e} over 10 pairs"),
    })
}

fn quadrature_errors(p: CriticalParams<f64>, n: usize) -> Result<(f64, f64), Error> {
    let c = build_critical_curve(p, n)?;
    let a = enclosed_area(&c.curve)?;
    let f = total_inverse_curvature(&c.curve, &c.frame()?)?;
    Ok(((a - area_closed_form(&p)).abs(), (f - f_closed_form(&p)).abs()))
}

/// Least-squares slope of −log(error) against log(intervals).
fn fitted_order(ns: &[usize], errs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns.iter().zip(errs).map(|(&n, &e)| (((n - 1) as f64).ln(), -e.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn criterion_2() -> Result<Outcome, Error> {
    let errs: Vec<(f64, f64)> = pairs()
        .par_iter()
        .map(|&p| quadrature_errors(p, (1 << 14) + 1))
        .collect::<Result<_, _>>()?;
    let max_a = errs.iter().map(|e| e.0).fold(0.0, f64::max);
    let max_f = errs.iter().map(|e| e.1).fold(0.0, f64::max);
    let p = make_params(1.0, 4.0)?;
    let ns = [513usize, 1025, 2049, 4097];
    let errs_n: Vec<(f64, f64)> = ns.iter().map(|&n| quadrature_errors(p, n)).collect::<Result<_, _>>()?;
    let order = fitted_order(&ns, &errs_n.iter().map(|e| e.0).collect::<Vec<_>>())
        .min(fitted_order(&ns, &errs_n.iter().map(|e| e.1).collect::<Vec<_>>()));
    Ok(Outcome {
        pass: max_a <= 1e-6 && max_f <= 1e-6 && order >= 3.7,
        detail: format!("max |dA| {max_a:.3e}, max |dF| {max_f:.3e} at 2^14 samples; fitted order {order:.2} over 512..4096 intervals"),
    })
}

fn criterion_3() -> Result<Outcome, Error> {
    let mut worst = 0.0f64;
    for p in pairs() {
        let l = solve_length(p.x0, area_closed_form(&p), 1e9)?;
        worst = worst.max((l - p.half_length).abs() / p.half_length);
    }
    let rejected = matches!(solve_length(1.0, 1.5 * std::f64::consts::PI, 1e9), Err(Error::ThresholdViolation(_)));
    Ok(Outcome {
        pass: worst <= 1e-9 && rejected,
        detail: format!("max rel. error in L {worst:.3e}; threshold area rejected: {rejected}"),
    })
}

fn criterion_4() -> Result<Outcome, Error> {
    let p = make_params(1.0, 4.0)?;
    let c = build_critical_curve(p, 4097)?;
    let s = c.s().to_vec();
    let span = 2.0 * p.half_length;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let stationary: Vec<VariationField<f64>> = (0..10)
        .map(|_| VariationField::normal(random_variation_field(&s, span, &mut rng, true).phi))
        .collect();
    let mut first = 0.0f64;
    for f in &stationary {
        first = first.max(first_variation_f(&c, f)?.abs());
    }
    let fields: Vec<VariationField<f64>> = (0..50).map(|_| random_variation_field(&s, span, &mut rng, false)).collect();
    let checks = check_second_variations(&c, &fields, 1e-3)?;
    let mut fd = 0.0f64;
    let mut identity = 0.0f64;
    for ch in &checks {
        fd = fd.max(ch.f.rel_err).max(ch.area.rel_err).max(ch.lagrangian.rel_err);
        identity = identity.max(ch.identity_error);
    }
    Ok(Outcome {
        pass: first <= 1e-8 && fd <= 1e-3 && identity <= 1e-8,
        detail: format!(
            "max |first variation| {first:.3e} on mean-zero W1 fields; max FD rel. error {fd:.3e} over 50 fields; identity error {identity:.3e}"
        ),
    })
}

fn criterion_5() -> Result<Outcome, Error> {
    let cfg = RunConfig::default();
    let ratios: Vec<f64> = (1..=24).map(|k| k as f64 / 100.0).collect();
    let rows: Vec<(f64, f64, f64, bool, f64)> = ratios
        .par_iter()
        .map(|&r| {
            let search = find_mu_w1_ratio(r, cfg.mu_scan_step, cfg.root_tol, cfg.mu_cap)?;
            let p = sweep_params(r)?;
            let ray = rayleigh_min_discrete(p, cfg.fe_elements)?;
            let no_root_below = search.below_min_margin > 0.0
                && search.critical_det != 0.0
                && search.trace.iter().filter(|t| t.regime == Regime::Below).all(|t| t.det != 0.0);
            let res = closed_form_residuals(&p, search.mu_w1, 400)
                .iter()
                .map(|c| c.residual)
                .fold(0.0, f64::max);
            Ok((search.mu_w1, ray, (search.mu_w1 - ray).abs() / search.mu_w1, no_root_below, res))
        })
        .collect::<Result<_, Error>>()?;
    let min_mu = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let max_gap = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let clean = rows.iter().all(|r| r.3);
    let max_res = rows.iter().map(|r| r.4).fold(0.0, f64::max);
    Ok(Outcome {
        pass: min_mu > 1.0 && rows.iter().all(|r| r.1 > 1.0) && max_gap <= 1e-2 && clean && max_res <= 1e-8,
        detail: format!(
            "min mu_W1 {min_mu:.6} over 24 ratios; max |det - Rayleigh|/det {max_gap:.3e} at n = {}; no root in (0, mu0]: {clean}; max closed-form residual {max_res:.3e}",
            cfg.fe_elements
        ),
    })
}

fn criterion_6() -> Result<Outcome, Error> {
    let p = make_params(1.0, 4.0)?;
    let c = build_critical_curve(p, 4097)?;
    let coer = coercivity_constant(p, 2048)?;
    let (sum, _, _) = run_perturbations(&c, coer, &PerturbSpec { seed: 7, count: 200, eps: 1e-2, area: true })?;
    let area_min = sum.area_min_delta_f.unwrap_or(f64::NAN);
    Ok(Outcome {
        pass: sum.pass,
        detail: format!(
            "min Delta {:.3e}; min Delta/(C/2 |phi|^2) {:.3} (C = {:.4}); min area-corrected Delta F {area_min:.3e}",
            sum.min_delta, sum.min_ratio, coer
        ),
    })
}

fn criterion_7() -> Result<Outcome, Error> {
    let cfg = RunConfig::default();
    let random = corpus_specs(Corpus::Random, 7, 100);
    let (_, rs) = run_corpus(&random, cfg.steiner_nodes, cfg.curvature_floor)?;
    let symmetric = corpus_specs(Corpus::Symmetric, 7, 10);
    let (_, ss) = run_corpus(&symmetric, cfg.steiner_nodes, cfg.curvature_floor)?;
    let pass = rs.pass && rs.asymmetric == 100 && rs.max_area_drift_rel <= 1e-8 && ss.pass && ss.max_change_symmetric == 0.0;
    Ok(Outcome {
        pass,
        detail: format!(
            "100 asymmetric pairs: max area drift {:.3e}, min relative F decrease {:.3e}; 10 symmetric pairs max change {:.1e}; clip estimate <= {:.2e} (window {DEFAULT_U_DELTA:e})",
            rs.max_area_drift_rel, rs.min_decrease_rel_asymmetric, ss.max_change_symmetric, rs.max_clip_estimate
        ),
    })
}

fn criterion_8() -> Result<Outcome, Error> {
    let ratios: Vec<f64> = (0..20)
        .map(|i| {
            let q = 3.01f64 * (1e8f64 / 3.01).powf(i as f64 / 19.0);
            hk_counterexample_ratio(&make_params(1.0, q).unwrap())
        })
        .collect();
    let above = ratios.iter().all(|&r| r > 0.5);
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let last = ratios[19] - 0.5;
    let trend = decreasing && last < 1e-3 * (ratios[0] - 0.5);
    Ok(Outcome {
        pass: above && trend,
        detail: format!(
            "ratio from {:.6} (L/x0 = 3.01) down to {:.9} (L/x0 = 1e8); all > 1/2: {above}; decreasing toward 1/2: {trend}",
            ratios[0], ratios[19]
        ),
    })
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, "Euler-Lagrange exactness", s(1), criterion_1),
        run(2, "closed form vs quadrature", s(10), criterion_2),
        run(3, "area-length round trip", s(1), criterion_3),
        run(4, "variation formulas", s(30), criterion_4),
        run(5, "stability sweep", s(120), criterion_5),
        run(6, "local minimality", s(60), criterion_6),
        run(7, "Steiner corpus", s(30), criterion_7),
        run(8, "counterexample ratio", s(1), criterion_8),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
