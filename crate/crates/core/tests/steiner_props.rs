use proptest::prelude::*;

use icl_core::critical::{build_critical_curve, make_params};
use icl_core::curvegeom::{frame_and_curvature, DiscreteCurve};
use icl_core::steiner::{
    compare_functionals, fubini_check, run_corpus, symmetrize, to_graph_pair, Corpus, PairSpec, DEFAULT_U_DELTA,
};
use icl_core::Error;

fn spec() -> impl Strategy<Value = PairSpec> {
    (0.3f64..3.0, 0.3f64..3.0, -1.5f64..1.5, -0.45f64..0.45).prop_map(|(x0, ybar, shear, b)| PairSpec {
        x0,
        ybar,
        shear,
        bend: b * x0 / (ybar * ybar),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetrization_preserves_area_and_lowers_f(s in spec()) {
        let pair = s.to_pair::<f64>(1025, DEFAULT_U_DELTA);
        let c = compare_functionals(&pair, 1e-12).unwrap();
        prop_assert!(c.area_drift_rel <= 1e-8);
        if s.is_symmetric() {
            prop_assert_eq!(c.f_after, c.f_before);
        } else if s.shear.abs() + s.bend.abs() > 1e-3 {
            prop_assert!(c.f_after < c.f_before, "{} !< {}", c.f_after, c.f_before);
        }
        prop_assert!(c.convexity_witness <= 1e-14);
        prop_assert!(c.curvature_bound >= -1e-3);
        prop_assert!(c.clip_estimate < 1e-6);
    }

    #[test]
    fn fubini_identity(s in spec()) {
        let pair = s.to_pair::<f64>(1025, DEFAULT_U_DELTA);
        let (a, b) = fubini_check(&pair, 2001).unwrap();
        prop_assert!((a - b).abs() / a < 1e-5, "{} vs {}", a, b);
    }

    #[test]
    fn symmetrize_is_idempotent(s in spec()) {
        let pair = s.to_pair::<f64>(257, DEFAULT_U_DELTA);
        let once = symmetrize(&pair);
        let twice = symmetrize(&once);
        prop_assert_eq!(&once.g, &twice.g);
        prop_assert_eq!(&once.f, &twice.f);
        once.validate().unwrap();
    }

    #[test]
    fn critical_curves_are_fixed_points(q in 3.2f64..200.0) {
        let c = build_critical_curve(make_params(1.0, q).unwrap(), 801).unwrap();
        let pair = to_graph_pair(&c.curve, &c.frame().unwrap(), 513, DEFAULT_U_DELTA).unwrap();
        prop_assert!(pair.asymmetry() < 1e-8 * (1.0 + pair.apex_x.abs()).max(pair.ybar));
    }
}

#[test]
fn sampled_ellipse_without_source() {
    let pts: Vec<[f64; 2]> = (0..=800)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / 800.0;
            [1.5 * t.cos() + 0.4 * t.sin(), t.sin()]
        })
        .collect();
    let c = DiscreteCurve::from_points(pts).unwrap();
    let fr = frame_and_curvature(&c).unwrap();
    let pair = to_graph_pair(&c, &fr, 257, DEFAULT_U_DELTA).unwrap();
    assert!((pair.ybar - 1.0).abs() < 1e-6);
    for i in 0..pair.len() {
        let y = pair.y[i];
        let w = 1.5 * (1.0 - y * y).sqrt();
        assert!((pair.g[i][0] - (0.4 * y + w)).abs() < 1e-5, "{i}");
        assert!((pair.f[i][0] - (0.4 * y - w)).abs() < 1e-5, "{i}");
    }
    let cmp = compare_functionals(&pair, 1e-12).unwrap();
    assert!(cmp.f_after < cmp.f_before);
}

#[test]
fn overturning_spiral_has_several_apexes() {
    // positive curvature throughout, but the tangent turns by 3π
    let pts: Vec<[f64; 2]> = (0..=1200)
        .map(|i| {
            let t = 3.0 * std::f64::consts::PI * i as f64 / 1200.0;
            let r = 1.0 + 0.1 * t;
            [r * t.cos(), r * t.sin() + 2.0]
        })
        .collect();
    let c = DiscreteCurve::from_points(pts).unwrap();
    let fr = frame_and_curvature(&c).unwrap();
    assert!(fr.curvature.iter().all(|&h| h > 0.0));
    assert!(matches!(to_graph_pair(&c, &fr, 65, DEFAULT_U_DELTA), Err(Error::MultipleApexes { count }) if count > 1));
}

#[test]
fn corpora_pass() {
    for kind in [Corpus::Sheared, Corpus::Symmetric, Corpus::Random, Corpus::Mixed] {
        let specs = icl_core::steiner::corpus_specs(kind, 11, 40);
        let (rows, summary) = run_corpus(&specs, 1025, 1e-12).unwrap();
        assert_eq!(rows.len(), 40);
        assert!(summary.pass, "{kind:?}: {summary:?}");
        assert!(summary.max_area_drift_rel <= 1e-8);
    }
}
