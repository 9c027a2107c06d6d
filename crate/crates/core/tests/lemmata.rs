use littlewood_core::*;
use proptest::prelude::*;

fn magnitude() -> impl Strategy<Value = f64> {
    (-3.0..3.0f64).prop_map(|e| 10f64.powf(e))
}

fn quadruple() -> impl Strategy<Value = SignedQuadruple> {
    (magnitude(), magnitude(), magnitude(), magnitude())
        .prop_map(|(a, b, c, d)| SignedQuadruple::new(a, b, c, -d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5000))]

    #[test]
    fn maxpos_and_maxneg_are_biconditionals(q in quadruple()) {
        let (pl, pr) = maxpos_equiv(&q);
        let (nl, nr) = maxneg_equiv(&q);
        prop_assert_eq!(pl, pr);
        prop_assert_eq!(nl, nr);
        prop_assert!(pl || nl);
    }

    #[test]
    fn tec01_sides_agree(q in quadruple()) {
        let (l, r) = tec01_equiv(&q);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn endpoint_maximum(a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64, d in -10.0..10.0f64) {
        prop_assume!(a != 0.0 && b != 0.0);
        prop_assert!(monomax_check(a, b, c, d));
    }

    #[test]
    fn equality_surface_forces_a_shared_magnitude(lo in magnitude(), gap in 0.01..10.0f64, stretch in 1.0..10.0f64, swap in any::<bool>()) {
        let (small, big) = (lo, lo * (1.0 + gap));
        let (a, b) = if swap { (big, small) } else { (small, big) };
        let q = SignedQuadruple::new(a, b, small * stretch, -small).unwrap();
        prop_assert_eq!(maxig_check(&q), Ok(true));
    }
}

#[test]
fn verification_report_round_trips() {
    let r = verify_lemmas(2000, 3, 1e-9).unwrap();
    assert!(r.all_passed());
    let json = serde_json::to_string(&r).unwrap();
    let back: LemmaReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
