use icl_core::critical::{build_critical_curve, make_params};
use icl_core::output::{to_csv_string, to_json_string};
use icl_core::perturb::{run_perturbations, PerturbSpec};

#[test]
fn perturbations_increase_lagrangian() {
    let c = build_critical_curve(make_params(1.0f64, 4.0).unwrap(), 2049).unwrap();
    let spec = PerturbSpec { seed: 3, count: 24, eps: 1e-2, area: true };
    let (summary, rows, area) = run_perturbations(&c, 0.0552, &spec).unwrap();
    assert!(summary.pass, "{summary:?}");
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| (r.c2_norm - 1e-2).abs() < 1e-15));
    let area = area.unwrap();
    for r in &area {
        assert!(r.delta_f > 0.0 && r.area_residual.abs() < 1e-11 * 7.58, "{r:?}");
    }
}

#[test]
fn perturbations_are_reproducible() {
    let c = build_critical_curve(make_params(1.0f64, 4.0).unwrap(), 1025).unwrap();
    let spec = PerturbSpec { seed: 9, count: 6, eps: 1e-2, area: false };
    let (a, ra, _) = run_perturbations(&c, 0.0552, &spec).unwrap();
    let (b, rb, _) = run_perturbations(&c, 0.0552, &spec).unwrap();
    assert_eq!(to_json_string(&a).unwrap(), to_json_string(&b).unwrap());
    assert_eq!(to_csv_string(&ra).unwrap(), to_csv_string(&rb).unwrap());
}

#[test]
fn json_round_trip_is_exact() {
    let c = build_critical_curve(make_params(1.0f64, 4.0).unwrap(), 257).unwrap();
    let report = icl_core::critical::CriticalReport::new(&c);
    let text = to_json_string(&report).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["F"].as_f64().unwrap(), report.f);
    assert_eq!(v["area"].as_f64().unwrap(), report.area);
    assert_eq!(v["hk_ratio"].as_f64().unwrap(), report.hk_ratio);
}
