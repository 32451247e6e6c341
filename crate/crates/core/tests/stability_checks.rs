use icl_core::critical::make_params;
use icl_core::stability::fem::{coercivity_constant, rayleigh_min_discrete};
use icl_core::stability::regime::{characteristic_det, find_mu_w1, find_mu_w1_ratio, mu0_from_ratio};
use icl_core::stability::residual::wronskian_check;

#[test]
fn reference_root() {
    let s = find_mu_w1(&make_params(1.0f64, 4.0).unwrap(), 1e-3, 1e-14).unwrap();
    assert!((s.mu_w1 - 1.3810595174139277).abs() < 1e-10, "{}", s.mu_w1);
    assert!(s.mu_w1 > s.mu0);
    assert!(s.below_min_margin > 0.0);
    assert!(characteristic_det(s.mu_w1, &make_params(1.0f64, 4.0).unwrap()).abs() < 1e-8);
}

#[test]
fn depends_only_on_ratio() {
    let a = find_mu_w1(&make_params(1.0f64, 4.0).unwrap(), 1e-3, 1e-14).unwrap();
    let b = find_mu_w1(&make_params(2.0f64, 8.0).unwrap(), 1e-3, 1e-14).unwrap();
    let c = find_mu_w1_ratio(0.2f64, 1e-3, 1e-14, 50.0).unwrap();
    assert!((a.mu_w1 - b.mu_w1).abs() < 1e-12);
    assert!((a.mu_w1 - c.mu_w1).abs() < 1e-12);
    assert!((mu0_from_ratio(0.2f64) - a.mu0).abs() < 1e-15);
}

#[test]
fn roots_exceed_one_across_ratios() {
    for i in 1..24 {
        let r = 0.01 * i as f64;
        let s = find_mu_w1_ratio(r, 1e-3, 1e-12, 50.0).unwrap();
        assert!(s.mu_w1 > 1.0, "ratio {r}: {}", s.mu_w1);
    }
}

#[test]
fn rayleigh_approaches_root_from_above() {
    let p = make_params(1.0f64, 4.0).unwrap();
    let root = 1.3810595174139277;
    let coarse = rayleigh_min_discrete(p, 128).unwrap();
    let fine = rayleigh_min_discrete(p, 512).unwrap();
    assert!(coarse >= fine && fine >= root - 1e-9, "{coarse} {fine}");
    assert!((fine - root) / root < 1e-5);
}

#[test]
fn coercivity_is_positive() {
    let p = make_params(1.0f64, 4.0).unwrap();
    let c1 = coercivity_constant(p, 512).unwrap();
    let c2 = coercivity_constant(p, 1024).unwrap();
    // first-order approach from above
    assert!(c1 > c2, "{c1} {c2}");
    let limit = 2.0 * c2 - c1;
    assert!(limit > 0.05 && limit < c2, "{limit}");
}

#[test]
fn wronskians_match_closed_forms() {
    let p = make_params(1.0f64, 4.0).unwrap();
    for mu in [0.3, 0.36, 1.2] {
        let w = wronskian_check(mu, &p);
        assert!(w.rel_err < 1e-10, "{w:?}");
    }
}
