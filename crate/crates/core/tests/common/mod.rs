#![allow(dead_code)]

use littlewood_core::{norm_real, FormCoefficients};
use proptest::prelude::*;

/// Mostly uniform entries, with exact zeros and shared dyadic magnitudes mixed
/// in so that degenerate sign patterns and ties show up.
pub fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![
        6 => -1.0..=1.0f64,
        1 => Just(0.0),
        2 => prop::sample::select(vec![-1.0, -0.5, -0.25, 0.25, 0.5, 1.0]),
    ]
}

pub fn form() -> impl Strategy<Value = FormCoefficients> {
    [coeff(), coeff(), coeff(), coeff()].prop_map(|c| FormCoefficients::from_array(c).unwrap())
}

pub fn nonzero_form() -> impl Strategy<Value = FormCoefficients> {
    form().prop_filter("nonzero", |t| !t.is_zero())
}

/// Normalized to the sphere and scaled by a factor in `[0, 1]`.
pub fn ball_form() -> impl Strategy<Value = FormCoefficients> {
    (nonzero_form(), prop_oneof![Just(1.0), 0.0..=1.0f64]).prop_map(|(t, r)| {
        let s = t.scaled(r / norm_real(&t).value).unwrap();
        if norm_real(&s).value <= 1.0 {
            s
        } else {
            // rounding pushed it just outside; pull back by one step
            s.scaled(1.0 - f64::EPSILON).unwrap()
        }
    })
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
