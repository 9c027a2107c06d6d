//! Fixed inputs shared by the benchmarks.

use littlewood_core::FormCoefficients;

/// A deterministic spread of forms in `[-1, 1]^4`, covering every sign pattern.
pub fn sample_forms(n: usize) -> Vec<FormCoefficients> {
    // Weyl sequence: cheap, reproducible, well spread
    const ALPHA: [f64; 4] = [
        0.618_033_988_749_895,
        0.414_213_562_373_095,
        0.732_050_807_568_877,
        0.236_067_977_499_790,
    ];
    (1..=n)
        .map(|k| {
            let c = ALPHA.map(|a| 2.0 * (k as f64 * a).fract() - 1.0);
            FormCoefficients::from_array(c).expect("finite")
        })
        .collect()
}

/// Forms in the closed unit ball, obtained by dividing by the real norm.
pub fn ball_forms(n: usize) -> Vec<FormCoefficients> {
    sample_forms(n)
        .into_iter()
        .filter_map(|t| {
            let s = littlewood_core::norm_real(&t).value;
            (s > 0.0).then(|| t.scaled(0.9 / s).expect("finite"))
        })
        .collect()
}
