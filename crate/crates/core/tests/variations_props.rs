use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use icl_core::critical::{build_critical_curve, make_params};
use icl_core::perturb::random_variation_field;
use icl_core::variations::{check_second_variations, fd_first, first_variation_f, Functional, VariationField};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lagrangian_is_stationary_on_area_preserving_fields(seed in any::<u64>(), q in 3.3f64..40.0) {
        let c = build_critical_curve(make_params(1.0, q).unwrap(), 2049).unwrap();
        let span = 2.0 * q;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = VariationField::normal(random_variation_field(c.s(), span, &mut rng, true).phi);
        prop_assert!(field.in_w1(1e-12));
        let df = first_variation_f(&c, &field).unwrap();
        let da = fd_first(&c.curve, &field, Functional::Area, 1e-4).unwrap();
        prop_assert!(da.abs() < 1e-7, "area change {}", da);
        prop_assert!(df.abs() < 1e-8, "first variation {}", df);
    }

    #[test]
    fn first_variation_matches_differences(seed in any::<u64>()) {
        let c = build_critical_curve(make_params(1.0, 4.0).unwrap(), 4097).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = random_variation_field(c.s(), 8.0, &mut rng, false);
        let analytic: f64 = first_variation_f(&c, &field).unwrap();
        let fd = fd_first(&c.curve, &field, Functional::InverseCurvature, 1e-4).unwrap();
        prop_assert!((analytic - fd).abs() < 1e-5 * analytic.abs().max(1.0), "{} vs {}", analytic, fd);
    }
}

#[test]
fn second_variation_identity() {
    let c = build_critical_curve(make_params(1.0f64, 4.0).unwrap(), 4097).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let fields: Vec<_> = (0..6).map(|_| random_variation_field(c.s(), 8.0, &mut rng, false)).collect();
    for r in check_second_variations(&c, &fields, 1e-3).unwrap() {
        assert!(r.identity_error < 1e-10, "{r:?}");
        assert!(r.f.rel_err < 1e-5 && r.area.rel_err < 1e-5 && r.lagrangian.rel_err < 1e-5, "{r:?}");
    }
}
