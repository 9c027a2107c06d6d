mod common;

use common::{nonzero_form, rel_close};
use littlewood_core::forms::critical_cos;
use littlewood_core::*;
use proptest::prelude::*;
use std::f64::consts::SQRT_2;

fn ratio(t: &FormCoefficients, field: ScalarField) -> f64 {
    littlewood_ratio(t, field).unwrap().ratio
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn ratio_is_scale_invariant(t in nonzero_form(), lambda in prop_oneof![-50.0..-0.01f64, 0.01..50.0f64]) {
        let s = t.scaled(lambda).unwrap();
        for field in [ScalarField::Real, ScalarField::ComplexRealCoeffs] {
            prop_assert!(rel_close(ratio(&s, field), ratio(&t, field), 1e-12));
        }
    }

    #[test]
    fn real_ratio_is_at_most_sqrt2_with_equality_at_optimizers(t in nonzero_form()) {
        let r = ratio(&t, ScalarField::Real);
        prop_assert!(r <= SQRT_2 + 1e-12);
        prop_assert_eq!((r - SQRT_2).abs() <= 1e-9, is_real_optimizer(&t, 1e-12));
    }

    #[test]
    fn complex_ratio_never_exceeds_real(t in nonzero_form()) {
        prop_assert!(ratio(&t, ScalarField::ComplexRealCoeffs) <= ratio(&t, ScalarField::Real));
    }

    #[test]
    fn covered_cases_are_bounded_by_one(t in nonzero_form()) {
        if classify_complex_case(&t) != CaseLabel::Uncovered {
            prop_assert!(ratio(&t, ScalarField::ComplexRealCoeffs) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn balanced_case_norm_is_sqrt2_times_euclidean(
        a11 in 0.05..1.0f64, a21 in 0.05..1.0f64, a12 in 0.05..1.0f64, flip in any::<bool>()
    ) {
        let s = if flip { -1.0 } else { 1.0 };
        let t = FormCoefficients::new(s * a11, s * a21, a12, -(a11 * a21) / a12).unwrap();
        if critical_cos(&t).is_none() {
            // vertex branch; covered by the case bound tests
            return Ok(());
        }
        let euclid = t.to_array().iter().map(|v| v * v).sum::<f64>().sqrt();
        let oracle = oracle_norm_complex(&t, &PhaseGridConfig::default());
        prop_assert!((norm_complex_real_coeffs(&t).value - SQRT_2 * euclid).abs() <= 1e-8 * euclid.max(1.0));
        prop_assert!((oracle - SQRT_2 * euclid).abs() <= 1e-8 * euclid.max(1.0));
    }

    #[test]
    fn optimizer_families_for_any_nonzero_alpha(alpha in prop_oneof![-10.0..-1e-3f64, 1e-3..10.0f64], odd in 0usize..8) {
        let pattern = extreme_points()[8 + odd].sign_pattern;
        let t = FormCoefficients::from_array(pattern.map(|s| alpha * f64::from(s))).unwrap();
        prop_assert!(is_real_optimizer(&t, 0.0));
        prop_assert!((ratio(&t, ScalarField::Real) - SQRT_2).abs() <= 1e-12);
    }
}

#[test]
fn scan_report_is_sorted_and_reevaluates() {
    let cfg = ScanConfig::new(0.25, ScalarField::ComplexRealCoeffs);
    let r = grid_scan(&cfg).unwrap();
    assert_eq!(r.points_scanned, 9u64.pow(4) - 1);
    assert!(r
        .argmax_list
        .windows(2)
        .all(|w| w[0].to_array() < w[1].to_array()));
    for t in &r.argmax_list {
        assert!((ratio(t, cfg.field) - r.max_ratio).abs() <= 1e-9);
    }
}

#[test]
fn scan_is_independent_of_thread_count() {
    let cfg = ScanConfig::new(0.2, ScalarField::ComplexRealCoeffs);
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    assert_eq!(
        one.install(|| grid_scan(&cfg)).unwrap(),
        four.install(|| grid_scan(&cfg)).unwrap()
    );
}

#[test]
fn case_bound_examples() {
    for case in [
        CaseLabel::Case1ZeroProduct,
        CaseLabel::Case2PosPos,
        CaseLabel::Case4PosNegBalanced,
    ] {
        let r = verify_case_bound(case, 20_000, 5).unwrap();
        assert!(r.worst_ratio <= 1.0 + 1e-12, "{case:?} {}", r.worst_ratio);
        assert_eq!(r.case, case);
    }
}
