//! Coefficient records and closed-form operator norms.
//!
//! Coefficients are always ordered `(a11, a21, a12, a22)`, where `aij` is the
//! coefficient of `x_i y_j`. Serialization and every array view use this order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four real coefficients of `T(x, y) = sum a_ij x_i y_j`.
///
/// All entries are finite; construction through [`FormCoefficients::new`] or
/// deserialization rejects NaN and infinities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCoefficients")]
pub struct FormCoefficients {
    a11: f64,
    a21: f64,
    a12: f64,
    a22: f64,
}

#[derive(Deserialize)]
struct RawCoefficients {
    a11: f64,
    a21: f64,
    a12: f64,
    a22: f64,
}

impl TryFrom<RawCoefficients> for FormCoefficients {
    type Error = Error;

    fn try_from(raw: RawCoefficients) -> Result<Self> {
        Self::new(raw.a11, raw.a21, raw.a12, raw.a22)
    }
}

pub(crate) const SLOT_NAMES: [&str; 4] = ["a11", "a21", "a12", "a22"];

impl FormCoefficients {
    pub fn new(a11: f64, a21: f64, a12: f64, a22: f64) -> Result<Self> {
        Self::from_array([a11, a21, a12, a22])
    }

    pub fn from_array(coeffs: [f64; 4]) -> Result<Self> {
        for (name, value) in SLOT_NAMES.iter().zip(coeffs) {
            if !value.is_finite() {
                return Err(Error::NonFiniteInput { name, value });
            }
        }
        Ok(Self::from_array_unchecked(coeffs))
    }

    /// Caller guarantees every entry is finite.
    pub(crate) fn from_array_unchecked(c: [f64; 4]) -> Self {
        debug_assert!(c.iter().all(|v| v.is_finite()));
        Self {
            a11: c[0],
            a21: c[1],
            a12: c[2],
            a22: c[3],
        }
    }

    /// Reads a row-major matrix `[[a11, a12], [a21, a22]]` flattened as
    /// `(a11, a12, a21, a22)`.
    pub fn from_matrix_order(m: [f64; 4]) -> Result<Self> {
        Self::from_array([m[0], m[2], m[1], m[3]])
    }

    pub const fn zero() -> Self {
        Self {
            a11: 0.0,
            a21: 0.0,
            a12: 0.0,
            a22: 0.0,
        }
    }

    pub fn a11(&self) -> f64 {
        self.a11
    }
    pub fn a21(&self) -> f64 {
        self.a21
    }
    pub fn a12(&self) -> f64 {
        self.a12
    }
    pub fn a22(&self) -> f64 {
        self.a22
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.a11, self.a21, self.a12, self.a22]
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|&v| v == 0.0)
    }

    /// `lambda * T`; fails if the product overflows.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::from_array(self.to_array().map(|v| v * lambda))
    }

    /// Largest coefficientwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Validating constructor, kept as a free function for symmetry with the other
/// operations.
pub fn make_form(a11: f64, a21: f64, a12: f64, a22: f64) -> Result<FormCoefficients> {
    FormCoefficients::new(a11, a21, a12, a22)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarField {
    Real,
    /// Complex arguments, real coefficients.
    ComplexRealCoeffs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormBranch {
    /// `|a11 + a21| + |a12 + a22|`, the profile at `t = 0`.
    VertexPlus,
    /// `|a11 - a21| + |a12 - a22|`, the profile at `t = pi`.
    VertexMinus,
    /// Interior critical point of the complex phase profile.
    InteriorCritical,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub branch: NormBranch,
    /// `cos t0` at the interior maximiser; present iff `branch` is
    /// [`NormBranch::InteriorCritical`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_cos: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryProfilePoint {
    pub t: f64,
    pub f_of_t: f64,
}

pub fn evaluate_real(form: &FormCoefficients, x: [f64; 2], y: [f64; 2]) -> f64 {
    form.a11 * x[0] * y[0]
        + form.a21 * x[1] * y[0]
        + form.a12 * x[0] * y[1]
        + form.a22 * x[1] * y[1]
}

/// The two vertex candidates `(|a11+a21|+|a12+a22|, |a11-a21|+|a12-a22|)`.
pub fn vertex_candidates(form: &FormCoefficients) -> (f64, f64) {
    let plus = (form.a11 + form.a21).abs() + (form.a12 + form.a22).abs();
    let minus = (form.a11 - form.a21).abs() + (form.a12 - form.a22).abs();
    (plus, minus)
}

fn vertex_result(form: &FormCoefficients) -> NormResult {
    let (plus, minus) = vertex_candidates(form);
    // Ties report VertexPlus.
    if plus >= minus {
        NormResult {
            value: plus,
            branch: NormBranch::VertexPlus,
            critical_cos: None,
        }
    } else {
        NormResult {
            value: minus,
            branch: NormBranch::VertexMinus,
            critical_cos: None,
        }
    }
}

/// Operator norm over real arguments: the larger vertex candidate.
pub fn norm_real(form: &FormCoefficients) -> NormResult {
    vertex_result(form)
}

/// `cos t0` of the interior critical point, when the closed form admits one:
/// every coefficient nonzero, `a11 a21` and `a12 a22` of opposite sign, and
/// `|N| <= |D|` with
///
/// ```text
/// N = (a11 a21 / (a12 a22))^2 (a12^2 + a22^2) - (a11^2 + a21^2)
/// D = 2 a11 a21 (1 - a11 a21 / (a12 a22))
/// ```
pub fn critical_cos(form: &FormCoefficients) -> Option<f64> {
    let [a11, a21, a12, a22] = form.to_array();
    if a11 == 0.0 || a21 == 0.0 || a12 == 0.0 || a22 == 0.0 {
        return None;
    }
    let q = a11 * a21;
    let s = a12 * a22;
    if (q > 0.0) == (s > 0.0) {
        return None;
    }
    let ratio = q / s;
    let numer = ratio * ratio * (a12 * a12 + a22 * a22) - (a11 * a11 + a21 * a21);
    let denom = 2.0 * q * (1.0 - ratio);
    if !(numer.is_finite() && denom.is_finite()) || numer.abs() > denom.abs() {
        return None;
    }
    Some((numer / denom).clamp(-1.0, 1.0))
}

/// Operator norm over complex arguments for real coefficients.
///
/// The maximum of the phase profile is taken over the two vertex candidates
/// and, when [`critical_cos`] exists, the interior critical value. The
/// profile is concave in `cos t`, so these candidates are exhaustive.
pub fn norm_complex_real_coeffs(form: &FormCoefficients) -> NormResult {
    let mut best = vertex_result(form);
    if let Some(c) = critical_cos(form) {
        let interior = profile_at_cos(form, c);
        if interior > best.value {
            best = NormResult {
                value: interior,
                branch: NormBranch::InteriorCritical,
                critical_cos: Some(c),
            };
        }
    }
    best
}

pub fn norm(form: &FormCoefficients, field: ScalarField) -> NormResult {
    match field {
        ScalarField::Real => norm_real(form),
        ScalarField::ComplexRealCoeffs => norm_complex_real_coeffs(form),
    }
}

/// `sqrt(a^2 + b^2 + 2ab c)` for `c in [-1, 1]`.
///
/// The radicand is expanded around the nearer endpoint, `(a+b)^2 - 2ab(1-c)`
/// or `(a-b)^2 + 2ab(1+c)`, so that `c = +-1` reproduce `|a +- b|` exactly.
fn phase_radical(a: f64, b: f64, c: f64) -> f64 {
    let radicand = if c >= 0.0 {
        let s = a + b;
        s * s - 2.0 * a * b * (1.0 - c)
    } else {
        let d = a - b;
        d * d + 2.0 * a * b * (1.0 + c)
    };
    if radicand >= 0.0 {
        return radicand.sqrt();
    }
    // Analytically the radicand is at least (|a|-|b|)^2; only rounding can
    // push it below zero.
    debug_assert!(
        radicand >= -1e-12 * (a * a + b * b).max(f64::MIN_POSITIVE),
        "radicand {radicand} below rounding band"
    );
    0.0
}

pub(crate) fn profile_at_cos(form: &FormCoefficients, c: f64) -> f64 {
    phase_radical(form.a11, form.a21, c) + phase_radical(form.a12, form.a22, c)
}

/// `f(t) = sqrt(a11^2 + a21^2 + 2 a11 a21 cos t) + sqrt(a12^2 + a22^2 + 2 a12 a22 cos t)`.
pub fn boundary_profile(form: &FormCoefficients, t: f64) -> BoundaryProfilePoint {
    BoundaryProfilePoint {
        t,
        f_of_t: profile_at_cos(form, t.cos()),
    }
}

/// `(sum |a_ij|^p)^(1/p)` for `p >= 1`.
pub fn coeff_lp_norm(form: &FormCoefficients, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let abs = form.to_array().map(f64::abs);
    let scale = abs.iter().copied().fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(abs.iter().sum());
    }
    let sum: f64 = abs.iter().map(|v| (v / scale).powf(p)).sum();
    Ok(scale * sum.powf(p.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn form(a: [f64; 4]) -> FormCoefficients {
        FormCoefficients::from_array(a).unwrap()
    }

    #[test]
    fn make_form_echoes_and_rejects() {
        let t = make_form(1.0, 1.0, 1.0, -1.0).unwrap();
        assert_eq!(t.to_array(), [1.0, 1.0, 1.0, -1.0]);
        assert!(make_form(0.0, 0.0, 0.0, 0.0).unwrap().is_zero());
        assert!(matches!(
            make_form(1.0, f64::NAN, 0.0, 0.0),
            Err(Error::NonFiniteInput { name: "a21", .. })
        ));
        assert!(make_form(f64::INFINITY, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn matrix_order_swaps_the_off_diagonal() {
        let t = FormCoefficients::from_matrix_order([1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(t.to_array(), [1.0, 3.0, 2.0, 4.0]);
    }

    #[test]
    fn deserialization_rejects_missing_and_keeps_order() {
        let t = form([0.3, -0.2, 0.5, 0.1]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"a11":0.3,"a21":-0.2,"a12":0.5,"a22":0.1}"#);
        let back: FormCoefficients = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<FormCoefficients>(r#"{"a11":1,"a21":0,"a12":0}"#).is_err());
    }

    #[test]
    fn evaluate_real_examples() {
        assert_eq!(
            evaluate_real(&form([1.0, 1.0, 1.0, -1.0]), [1.0, 1.0], [1.0, -1.0]),
            2.0
        );
        assert_eq!(
            evaluate_real(&form([1.0, 0.0, 0.0, 0.0]), [1.0, 0.0], [1.0, 0.0]),
            1.0
        );
        assert_eq!(
            evaluate_real(&FormCoefficients::zero(), [0.3, -7.0], [2.0, 5.0]),
            0.0
        );
    }

    #[test]
    fn norm_real_examples() {
        assert_eq!(norm_real(&form([1.0, 1.0, 1.0, -1.0])).value, 2.0);
        assert_eq!(norm_real(&form([1.0, 0.0, 0.0, 0.0])).value, 1.0);
        let r = norm_real(&form([0.3, -0.2, 0.5, 0.1]));
        // candidates 0.1 + 0.6 = 0.7 and 0.5 + 0.4 = 0.9
        assert!((r.value - 0.9).abs() < 1e-15);
        assert_eq!(r.branch, NormBranch::VertexMinus);
        assert_eq!(r.critical_cos, None);
    }

    #[test]
    fn vertex_tie_reports_plus() {
        // (1,0,0,0): both candidates equal 1
        assert_eq!(
            norm_real(&form([1.0, 0.0, 0.0, 0.0])).branch,
            NormBranch::VertexPlus
        );
        assert_eq!(
            norm_real(&FormCoefficients::zero()).branch,
            NormBranch::VertexPlus
        );
    }

    #[test]
    fn norm_complex_examples() {
        let r = norm_complex_real_coeffs(&form([1.0, 1.0, 1.0, -1.0]));
        assert!((r.value - 2.0 * SQRT_2).abs() < 1e-15);
        assert_eq!(r.branch, NormBranch::InteriorCritical);
        assert_eq!(r.critical_cos, Some(0.0));

        let r = norm_complex_real_coeffs(&form([1.0, 0.0, 0.0, 0.0]));
        assert_eq!(r.value, 1.0);
        assert_eq!(r.branch, NormBranch::VertexPlus);

        let r = norm_complex_real_coeffs(&form([1.0, 2.0, 3.0, 4.0]));
        assert_eq!(r.value, 10.0);
        assert_eq!(r.critical_cos, None);
    }

    #[test]
    fn interior_candidate_skipped_when_outside_cos_range() {
        // a11 a21 = 0.01, a12 a22 = -1: opposite signs but |N| > |D|.
        let t = form([1.0, 0.01, 1.0, -1.0]);
        assert_eq!(critical_cos(&t), None);
        assert_eq!(norm_complex_real_coeffs(&t).value, norm_real(&t).value);
    }

    #[test]
    fn boundary_profile_examples() {
        let t = form([1.0, 1.0, 1.0, -1.0]);
        assert_eq!(boundary_profile(&t, 0.0).f_of_t, 2.0);
        assert!((boundary_profile(&t, FRAC_PI_2).f_of_t - 2.0 * SQRT_2).abs() < 1e-15);
        let m = form([1.0, 0.0, 0.0, 0.0]);
        for t in [0.0, 0.3, 1.0, PI, 5.0] {
            assert_eq!(boundary_profile(&m, t).f_of_t, 1.0);
        }
    }

    #[test]
    fn vertex_identity_is_exact() {
        let t = form([0.3, -0.2, 0.5, 0.1]);
        let (plus, minus) = vertex_candidates(&t);
        assert_eq!(boundary_profile(&t, 0.0).f_of_t, plus);
        assert_eq!(boundary_profile(&t, PI).f_of_t, minus);
    }

    #[test]
    fn lp_norm_examples() {
        let t = form([1.0, 1.0, 1.0, -1.0]);
        assert!((coeff_lp_norm(&t, 4.0 / 3.0).unwrap() - 4f64.powf(0.75)).abs() < 1e-15);
        assert_eq!(
            coeff_lp_norm(&form([1.0, 0.0, 0.0, 0.0]), 4.0 / 3.0).unwrap(),
            1.0
        );
        let s = coeff_lp_norm(&form([0.3, -0.2, 0.5, 0.1]), 1.0).unwrap();
        assert!((s - 1.1).abs() < 1e-15);
        assert_eq!(coeff_lp_norm(&t, 0.5), Err(Error::InvalidExponent(0.5)));
        assert!(coeff_lp_norm(&t, f64::NAN).is_err());
        assert_eq!(coeff_lp_norm(&FormCoefficients::zero(), 2.0).unwrap(), 0.0);
    }
}
