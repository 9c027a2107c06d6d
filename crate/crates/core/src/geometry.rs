//! Geometry of the closed unit ball of real bilinear forms.
//!
//! The ball has exactly 16 extreme points: the eight signed monomials
//! `+-x_i y_j` and the eight half-forms `(s11, s21, s12, s22) / 2` whose sign
//! vector has odd parity. Every extreme point is exposed, and the functional
//! that exposes it has the extreme point's own coefficients.
//!
//! Non-extreme forms in the ball are certified by a [`SplitWitness`]: two
//! distinct ball members whose midpoint is the form, verified in floating
//! point with an exact midpoint identity.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{norm_real, vertex_candidates, FormCoefficients};

/// Norm slack allowed for witness members.
pub const WITNESS_NORM_TOL: f64 = 1e-12;

/// Default coefficientwise tolerance when matching against extreme points.
pub const DEFAULT_MATCH_TOL: f64 = 1e-9;

const MAX_HALVINGS: usize = 60;

/// Inner-term ties and tight vertex candidates are decided with this slack.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremeKind {
    Monomial,
    HalfForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremePoint {
    pub coeffs: FormCoefficients,
    pub kind: ExtremeKind,
    /// Sign of each coefficient slot; monomials carry `0` in their empty slots.
    pub sign_pattern: [i8; 4],
}

/// The 16 extreme points: monomials first (slot order `a11, a21, a12, a22`,
/// `+` before `-`), then half-forms in lexicographic sign order with `-1 < +1`.
pub fn extreme_points() -> &'static [ExtremePoint; 16] {
    static POINTS: OnceLock<[ExtremePoint; 16]> = OnceLock::new();
    POINTS.get_or_init(|| {
        let mut out = Vec::with_capacity(16);
        for slot in 0..4 {
            for sign in [1i8, -1] {
                let mut pattern = [0i8; 4];
                pattern[slot] = sign;
                out.push(ExtremePoint {
                    coeffs: FormCoefficients::from_array_unchecked(pattern.map(f64::from)),
                    kind: ExtremeKind::Monomial,
                    sign_pattern: pattern,
                });
            }
        }
        for bits in 0u8..16 {
            // bit 3 -> s11 ... bit 0 -> s22, set bit means +1
            let pattern: [i8; 4] =
                std::array::from_fn(|i| if bits >> (3 - i) & 1 == 1 { 1 } else { -1 });
            if pattern.iter().map(|&s| s as i32).product::<i32>() != -1 {
                continue;
            }
            out.push(ExtremePoint {
                coeffs: FormCoefficients::from_array_unchecked(pattern.map(|s| 0.5 * f64::from(s))),
                kind: ExtremeKind::HalfForm,
                sign_pattern: pattern,
            });
        }
        out.try_into().expect("16 extreme points")
    })
}

fn matching_extreme_point(form: &FormCoefficients, tol: f64) -> Option<&'static ExtremePoint> {
    extreme_points()
        .iter()
        .find(|e| e.coeffs.max_abs_diff(form) <= tol)
}

/// Which construction produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// At most one nonzero coefficient; move along that monomial.
    SingleTerm,
    /// Two nonzero coefficients; trade mass between them.
    TwoTerms,
    /// Three nonzero coefficients, paired terms of equal sign.
    ThreeTermsAlike,
    /// Three nonzero coefficients, paired terms of opposite sign.
    ThreeTermsOpposed,
    /// Four nonzero coefficients with `a11 a21 > 0` and `a12 a22 > 0`.
    FourTermsBothAlike,
    /// Four nonzero coefficients with `a11 a21 < 0` and `a12 a22 < 0`.
    FourTermsBothOpposed,
    /// Odd sign parity, equal magnitudes below one half.
    ScaledHalfForm,
    /// Odd sign parity, one vertex candidate strictly below the other.
    OddParityVertexGap,
    /// Odd sign parity, equal vertex candidates, norm below one.
    OddParityTiedInterior,
    /// Odd sign parity, tied candidates on the sphere, `c = b`.
    OddParityTiedDiagonal,
    /// Odd sign parity, tied candidates on the sphere, `c > b`.
    OddParityTiedShift,
    /// Direction along the face cut out by the tight vertex candidates.
    FaceDirection,
    /// Exhaustive search over small integer directions.
    DirectionSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub a: FormCoefficients,
    pub b: FormCoefficients,
    pub epsilon: f64,
    pub case: WitnessCase,
}

impl SplitWitness {
    /// Exact midpoint identity, `A != B`, and both norms within
    /// [`WITNESS_NORM_TOL`] of the ball.
    pub fn is_valid_for(&self, form: &FormCoefficients) -> bool {
        let (a, b, t) = (self.a.to_array(), self.b.to_array(), form.to_array());
        let midpoint_exact = (0..4).all(|i| (a[i] + b[i]) * 0.5 == t[i]);
        midpoint_exact
            && a != b
            && norm_real(&self.a).value <= 1.0 + WITNESS_NORM_TOL
            && norm_real(&self.b).value <= 1.0 + WITNESS_NORM_TOL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Extreme,
    NotExtreme,
    OutsideBall,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub norm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<ExtremePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SplitWitness>,
}

/// Classify a form against the unit ball.
///
/// Forms with norm above `1 + tol` are outside; forms within `tol` of an
/// extreme point (coefficientwise) are extreme; every other form is
/// not extreme and carries a verified witness whenever its norm is at most
/// `1 + WITNESS_NORM_TOL`.
pub fn classify(form: &FormCoefficients, tol: f64) -> Result<ClassificationResult> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be >= 0, got {tol}"
        )));
    }
    let norm = norm_real(form).value;
    if norm > 1.0 + tol {
        return Ok(ClassificationResult {
            verdict: Verdict::OutsideBall,
            norm,
            matched: None,
            witness: None,
        });
    }
    if let Some(e) = matching_extreme_point(form, tol) {
        return Ok(ClassificationResult {
            verdict: Verdict::Extreme,
            norm,
            matched: Some(*e),
            witness: None,
        });
    }
    let witness = match split_witness(form) {
        Ok(w) => Some(w),
        // Within the caller's tolerance of the sphere but strictly outside the
        // ball: no midpoint pair of ball members exists.
        Err(Error::OutsideBall(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ClassificationResult {
        verdict: Verdict::NotExtreme,
        norm,
        matched: None,
        witness,
    })
}

// --- symmetries ------------------------------------------------------------

/// A signed coordinate permutation `v -> (sign[i] * v[perm[i]])_i` that
/// preserves the real norm. Applying one is exact in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Symmetry {
    perm: [usize; 4],
    sign: [f64; 4],
}

impl Symmetry {
    const IDENTITY: Self = Self {
        perm: [0, 1, 2, 3],
        sign: [1.0; 4],
    };

    fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| self.sign[i] * v[self.perm[i]])
    }

    /// `self` after `other`.
    fn compose(&self, other: &Self) -> Self {
        Self {
            perm: std::array::from_fn(|i| other.perm[self.perm[i]]),
            sign: std::array::from_fn(|i| self.sign[i] * other.sign[self.perm[i]]),
        }
    }

    fn inverse(&self) -> Self {
        let mut perm = [0; 4];
        let mut sign = [1.0; 4];
        for i in 0..4 {
            perm[self.perm[i]] = i;
            sign[self.perm[i]] = self.sign[i];
        }
        Self { perm, sign }
    }
}

/// The 64 norm-preserving signed permutations generated by argument sign
/// flips, row and column swaps and transposition, identity first.
fn symmetry_group() -> &'static [Symmetry] {
    static GROUP: OnceLock<Vec<Symmetry>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let flip = |a: usize, b: usize| {
            let mut sign = [1.0; 4];
            sign[a] = -1.0;
            sign[b] = -1.0;
            Symmetry {
                perm: [0, 1, 2, 3],
                sign,
            }
        };
        let swap = |perm: [usize; 4]| Symmetry {
            perm,
            sign: [1.0; 4],
        };
        let generators = [
            flip(0, 2),         // x1 -> -x1
            flip(1, 3),         // x2 -> -x2
            flip(0, 1),         // y1 -> -y1
            flip(2, 3),         // y2 -> -y2
            swap([1, 0, 3, 2]), // x1 <-> x2
            swap([2, 3, 0, 1]), // y1 <-> y2
            swap([0, 2, 1, 3]), // x <-> y
        ];
        let mut group = vec![Symmetry::IDENTITY];
        let mut frontier = 0;
        while frontier < group.len() {
            let g = group[frontier];
            for h in &generators {
                let gh = h.compose(&g);
                if !group.contains(&gh) {
                    group.push(gh);
                }
            }
            frontier += 1;
        }
        group
    })
}

// --- witness construction --------------------------------------------------

/// A perturbation direction and step, before floating-point realisation.
#[derive(Clone, Copy, Debug)]
struct Candidate {
    direction: [f64; 4],
    epsilon: f64,
    case: WitnessCase,
}

fn sgn(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn mapped(g: &Symmetry, direction: [f64; 4], epsilon: f64, case: WitnessCase) -> Candidate {
    Candidate {
        direction: g.inverse().apply(direction),
        epsilon,
        case,
    }
}

/// Split `t` into `(a, b)` with `(a + b) * 0.5 == t` exactly and `a - t`
/// close to `d`.
fn exact_split(t: f64, d: f64) -> Option<(f64, f64)> {
    let a = t + d;
    let b = t - d;
    if (a + b) * 0.5 == t {
        return Some((a, b));
    }
    let b2 = 2.0 * t - a;
    if (a + b2) * 0.5 == t {
        return Some((a, b2));
    }
    let a2 = 2.0 * t - b;
    if (a2 + b) * 0.5 == t {
        return Some((a2, b));
    }
    None
}

/// Realise `T +- eps * v`, halving `eps` until the pair validates.
fn realize(form: &FormCoefficients, cand: &Candidate) -> Option<SplitWitness> {
    if !(cand.epsilon > 0.0 && cand.epsilon.is_finite()) {
        return None;
    }
    let t = form.to_array();
    let mut eps = cand.epsilon;
    for _ in 0..=MAX_HALVINGS {
        let mut a = [0.0; 4];
        let mut b = [0.0; 4];
        let mut ok = true;
        for i in 0..4 {
            match exact_split(t[i], eps * cand.direction[i]) {
                Some((ai, bi)) => {
                    a[i] = ai;
                    b[i] = bi;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && a.iter().chain(&b).all(|v| v.is_finite()) {
            let w = SplitWitness {
                a: FormCoefficients::from_array_unchecked(a),
                b: FormCoefficients::from_array_unchecked(b),
                epsilon: eps,
                case: cand.case,
            };
            if w.is_valid_for(form) {
                return Some(w);
            }
        }
        eps *= 0.5;
    }
    None
}

/// The case construction for `t`, following the sign/zero pattern.
fn case_candidate(t: [f64; 4]) -> Option<Candidate> {
    let nonzero: Vec<usize> = (0..4).filter(|&i| t[i] != 0.0).collect();
    match nonzero.len() {
        0 => Some(Candidate {
            direction: [1.0, 0.0, 0.0, 0.0],
            epsilon: 0.5,
            case: WitnessCase::SingleTerm,
        }),
        1 => {
            let k = nonzero[0];
            let mut direction = [0.0; 4];
            direction[k] = sgn(t[k]);
            Some(Candidate {
                direction,
                epsilon: (1.0 - t[k].abs()) / 2.0,
                case: WitnessCase::SingleTerm,
            })
        }
        2 => {
            // ||T|| = |a| + |b| wherever the two terms sit.
            let (i, j) = (nonzero[0], nonzero[1]);
            let mut direction = [0.0; 4];
            direction[i] = sgn(t[i]);
            direction[j] = -sgn(t[j]);
            Some(Candidate {
                direction,
                epsilon: t[i].abs().min(t[j].abs()) / 2.0,
                case: WitnessCase::TwoTerms,
            })
        }
        3 => three_term_candidate(t),
        _ => four_term_candidate(t),
    }
}

/// Zero moved to `a22`: `T = a x1y1 + b x2y1 + c x1y2`.
fn three_term_candidate(t: [f64; 4]) -> Option<Candidate> {
    let g = symmetry_group().iter().find(|g| g.apply(t)[3] == 0.0)?;
    let [a, b, c, _] = g.apply(t);
    if a * b > 0.0 {
        let eps = (1.0 - ((a - b).abs() + c.abs())) / 4.0;
        Some(mapped(
            g,
            [1.0, -1.0, 0.0, 0.0],
            eps,
            WitnessCase::ThreeTermsAlike,
        ))
    } else {
        let eps = (1.0 - ((a + b).abs() + c.abs())) / 4.0;
        Some(mapped(
            g,
            [1.0, 1.0, 0.0, 0.0],
            eps,
            WitnessCase::ThreeTermsOpposed,
        ))
    }
}

fn four_term_candidate(t: [f64; 4]) -> Option<Candidate> {
    let [a, b, c, d] = t;
    let (plus, minus) = vertex_candidates(&FormCoefficients::from_array_unchecked(t));
    if a * b > 0.0 && c * d > 0.0 {
        return Some(Candidate {
            direction: [1.0, -1.0, 0.0, 0.0],
            epsilon: (1.0 - minus) / 4.0,
            case: WitnessCase::FourTermsBothAlike,
        });
    }
    if a * b < 0.0 && c * d < 0.0 {
        return Some(Candidate {
            direction: [1.0, 1.0, 0.0, 0.0],
            epsilon: (1.0 - plus) / 4.0,
            case: WitnessCase::FourTermsBothOpposed,
        });
    }
    odd_parity_candidate(t)
}

fn canonical_odd(s: &[f64; 4]) -> bool {
    s[0] > 0.0 && s[1] > 0.0 && s[2] > 0.0 && s[3] < 0.0
}

/// Odd sign parity, brought to `a, b, c > 0 > d` by a symmetry.
fn odd_parity_candidate(t: [f64; 4]) -> Option<Candidate> {
    let group = symmetry_group();
    let g = group.iter().find(|g| canonical_odd(&g.apply(t)))?;
    let s = g.apply(t);
    let [a, b, c, d] = s;

    if a == b && b == c && c == -d {
        return Some(mapped(
            g,
            [1.0, 1.0, 1.0, -1.0],
            (0.5 - a) / 2.0,
            WitnessCase::ScaledHalfForm,
        ));
    }

    let plus = a + b + (c + d).abs();
    let minus = (a - b).abs() + c - d;
    if plus > minus + TIE_TOL {
        return Some(mapped(
            g,
            [1.0, -1.0, 0.0, 0.0],
            (1.0 - minus) / 4.0,
            WitnessCase::OddParityVertexGap,
        ));
    }
    if minus > plus + TIE_TOL {
        return Some(mapped(
            g,
            [1.0, 1.0, 0.0, 0.0],
            (1.0 - plus) / 4.0,
            WitnessCase::OddParityVertexGap,
        ));
    }

    // Tied candidates: some symmetric image has a > b = -d and c >= b.
    for h in group {
        let u = h.apply(t);
        let [a, b, c, d] = u;
        if !(canonical_odd(&u) && a > b && (b + d).abs() <= TIE_TOL && c >= b) {
            continue;
        }
        let total = a + c;
        let cand = if total < 1.0 - TIE_TOL {
            mapped(
                h,
                [1.0, 0.0, 0.0, 0.0],
                (a - b).min(1.0 - total) / 2.0,
                WitnessCase::OddParityTiedInterior,
            )
        } else if c == b {
            mapped(
                h,
                [1.0, -1.0, -1.0, 1.0],
                b.min((a - b) / 2.0) / 2.0,
                WitnessCase::OddParityTiedDiagonal,
            )
        } else {
            mapped(
                h,
                [1.0, 0.0, -1.0, 0.0],
                (a - b).min(1.0 - a - b) / 2.0,
                WitnessCase::OddParityTiedShift,
            )
        };
        return Some(cand);
    }
    None
}

/// Directions along which both tight vertex candidates stay constant.
///
/// With `u = (v11 + v21, v12 + v22)` and `w = (v11 - v21, v12 - v22)`, the
/// plus candidate depends only on `u` and the minus candidate only on `w`.
/// A tight candidate with both inner terms nonzero admits the one direction
/// that keeps their signed sum fixed; one with a vanishing inner term admits
/// none.
fn face_candidates(form: &FormCoefficients) -> Vec<Candidate> {
    let [a, b, c, d] = form.to_array();
    let (plus, minus) = vertex_candidates(form);
    let sums = [a + b, c + d];
    let diffs = [a - b, c - d];

    let admissible = |inner: [f64; 2], value: f64| -> Vec<[f64; 2]> {
        if value < 1.0 - TIE_TOL {
            vec![[1.0, 0.0], [0.0, 1.0]]
        } else if inner[0] != 0.0 && inner[1] != 0.0 {
            vec![[1.0, -sgn(inner[0]) * sgn(inner[1])]]
        } else {
            vec![]
        }
    };

    let mut directions = Vec::new();
    for u in admissible(sums, plus) {
        directions.push([u[0], u[0], u[1], u[1]]);
    }
    for w in admissible(diffs, minus) {
        directions.push([w[0], -w[0], w[1], -w[1]]);
    }

    directions
        .into_iter()
        .map(|v| {
            let du = [v[0] + v[1], v[2] + v[3]];
            let dw = [v[0] - v[1], v[2] - v[3]];
            let mut bound = f64::INFINITY;
            for (inner, delta, value) in [(sums, du, plus), (diffs, dw, minus)] {
                if value >= 1.0 - TIE_TOL {
                    // keep nonzero inner terms from changing sign
                    for k in 0..2 {
                        if delta[k] != 0.0 && inner[k] != 0.0 {
                            bound = bound.min(inner[k].abs() / delta[k].abs());
                        }
                    }
                } else {
                    let rate = delta[0].abs() + delta[1].abs();
                    if rate > 0.0 {
                        bound = bound.min((1.0 - value) / rate);
                    }
                }
            }
            Candidate {
                direction: v,
                epsilon: if bound.is_finite() { bound / 2.0 } else { 0.5 },
                case: WitnessCase::FaceDirection,
            }
        })
        .collect()
}

fn search_candidates() -> impl Iterator<Item = Candidate> {
    (0..81).filter(|&k| k != 40).map(|k: i32| {
        let digit = |p: u32| f64::from((k / 3i32.pow(p)) % 3 - 1);
        Candidate {
            direction: [digit(3), digit(2), digit(1), digit(0)],
            epsilon: 0.5,
            case: WitnessCase::DirectionSearch,
        }
    })
}

/// Build a verified pair `(A, B)` of ball members with midpoint `form`.
///
/// The case construction matching the sign/zero pattern is tried first, with
/// `epsilon` half of its admissible upper bound. Patterns it does not reach
/// fall back to face directions of the tight vertex candidates and finally to
/// a search over directions in `{-1, 0, 1}^4` with step halving.
pub fn split_witness(form: &FormCoefficients) -> Result<SplitWitness> {
    let norm = norm_real(form).value;
    if norm > 1.0 + WITNESS_NORM_TOL {
        return Err(Error::OutsideBall(norm));
    }
    if matching_extreme_point(form, 0.0).is_some() {
        return Err(Error::IsExtreme);
    }
    case_candidate(form.to_array())
        .into_iter()
        .chain(face_candidates(form))
        .chain(search_candidates())
        .find_map(|cand| realize(form, &cand))
        .ok_or(Error::WitnessNotFound)
}

// --- exposing functionals --------------------------------------------------

/// `f(T) = c11 a11 + c21 a21 + c12 a12 + c22 a22` with its dual norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualFunctional {
    pub c11: f64,
    pub c21: f64,
    pub c12: f64,
    pub c22: f64,
    pub dual_norm: f64,
}

impl DualFunctional {
    pub fn new(coeffs: [f64; 4]) -> Self {
        let [c11, c21, c12, c22] = coeffs;
        Self {
            c11,
            c21,
            c12,
            c22,
            dual_norm: dual_norm_of(coeffs),
        }
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.c11, self.c21, self.c12, self.c22]
    }

    pub fn apply(&self, form: &FormCoefficients) -> f64 {
        let c = self.coefficients();
        form.to_array().iter().zip(c).map(|(a, c)| a * c).sum()
    }
}

fn dual_norm_of(coeffs: [f64; 4]) -> f64 {
    extreme_points()
        .iter()
        .map(|e| {
            e.coeffs
                .to_array()
                .iter()
                .zip(coeffs)
                .map(|(a, c)| a * c)
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

/// Sup of `|f|` over the ball, attained at one of the 16 extreme points.
pub fn dual_norm(f: &DualFunctional) -> f64 {
    dual_norm_of(f.coefficients())
}

/// The functional exposing `e`: `+-1` in the monomial's slot, or the half-form
/// signs divided by two.
pub fn exposing_functional(e: &ExtremePoint) -> Result<DualFunctional> {
    if !extreme_points().contains(e) {
        return Err(Error::NotExtremePoint);
    }
    let coeffs = match e.kind {
        ExtremeKind::Monomial => e.sign_pattern.map(f64::from),
        ExtremeKind::HalfForm => e.sign_pattern.map(|s| 0.5 * f64::from(s)),
    };
    Ok(DualFunctional::new(coeffs))
}
