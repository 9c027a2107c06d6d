//! The Littlewood 4/3 ratio `(sum |a_ij|^{4/3})^{3/4} / ||T||`, its real
//! optimizers, the complex sign-pattern cases and deterministic scans.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{coeff_lp_norm, norm, FormCoefficients, NormResult, ScalarField};
use crate::sampling::{chunk_ranges, chunk_rng, positive_unit, random_sign};

/// Exponent of the coefficient norm in the numerator.
pub const LITTLEWOOD_EXPONENT: f64 = 4.0 / 3.0;

/// Slack for grid-point ties when collecting maximisers.
pub const ARGMAX_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub ratio: f64,
    pub field: ScalarField,
    pub norm_used: NormResult,
}

pub fn littlewood_ratio(form: &FormCoefficients, field: ScalarField) -> Result<RatioReport> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    let norm_used = norm(form, field);
    let ratio = coeff_lp_norm(form, LITTLEWOOD_EXPONENT)? / norm_used.value;
    Ok(RatioReport {
        ratio,
        field,
        norm_used,
    })
}

/// True iff the coefficients have one common nonzero magnitude (within the
/// absolute `tol`) and an odd number of negative signs. These are exactly the
/// forms with real ratio `sqrt(2)`.
pub fn is_real_optimizer(form: &FormCoefficients, tol: f64) -> bool {
    let c = form.to_array();
    let mags = c.map(f64::abs);
    let hi = mags.iter().copied().fold(0.0, f64::max);
    let lo = mags.iter().copied().fold(f64::INFINITY, f64::min);
    let negatives = c.iter().filter(|v| v.is_sign_negative()).count();
    c.iter().all(|&v| v != 0.0) && hi - lo <= tol && negatives % 2 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    /// `a11 a21 = 0` or `a12 a22 = 0`.
    Case1ZeroProduct,
    /// `a11 a21 > 0` and `a12 a22 > 0`.
    Case2PosPos,
    /// `a11 a21 < 0` and `a12 a22 < 0`.
    Case3NegNeg,
    /// `a11 a21 > 0 > a12 a22` and `a11 a21 + a12 a22 = 0`.
    Case4PosNegBalanced,
    /// `a11 a21 < 0 < a12 a22` and `a11 a21 + a12 a22 = 0`.
    Case5NegPosBalanced,
    /// Products of opposite sign that do not cancel; no bound is proven.
    Uncovered,
}

impl CaseLabel {
    pub const COVERED: [CaseLabel; 5] = [
        CaseLabel::Case1ZeroProduct,
        CaseLabel::Case2PosPos,
        CaseLabel::Case3NegNeg,
        CaseLabel::Case4PosNegBalanced,
        CaseLabel::Case5NegPosBalanced,
    ];
}

/// Label from exact sign tests on `p = a11 a21` and `s = a12 a22`.
pub fn classify_complex_case(form: &FormCoefficients) -> CaseLabel {
    let [a11, a21, a12, a22] = form.to_array();
    let p = a11 * a21;
    let s = a12 * a22;
    if p == 0.0 || s == 0.0 {
        CaseLabel::Case1ZeroProduct
    } else if p > 0.0 && s > 0.0 {
        CaseLabel::Case2PosPos
    } else if p < 0.0 && s < 0.0 {
        CaseLabel::Case3NegNeg
    } else if p + s != 0.0 {
        CaseLabel::Uncovered
    } else if p > 0.0 {
        CaseLabel::Case4PosNegBalanced
    } else {
        CaseLabel::Case5NegPosBalanced
    }
}

// --- grid scans ------------------------------------------------------------

/// A cubic grid over `[lo, hi]^4` with spacing `step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub step: f64,
    pub lo: f64,
    pub hi: f64,
    pub field: ScalarField,
    pub exclude_zero_forms: bool,
}

impl ScanConfig {
    pub fn new(step: f64, field: ScalarField) -> Self {
        Self {
            step,
            lo: -1.0,
            hi: 1.0,
            field,
            exclude_zero_forms: true,
        }
    }

    pub fn with_box(mut self, lo: f64, hi: f64) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn grid(&self) -> Result<ScanGrid> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.step.is_finite() && self.step > 0.0) {
            return bad(format!(
                "step must be positive and finite, got {}",
                self.step
            ));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return bad(format!(
                "box [{}, {}] is not a finite interval",
                self.lo, self.hi
            ));
        }
        let cells = (self.hi - self.lo) / self.step;
        let whole = cells.round();
        if (cells - whole).abs() > 1e-12 * whole.max(1.0) {
            return bad(format!(
                "step {} does not divide [{}, {}] into whole cells",
                self.step, self.lo, self.hi
            ));
        }
        let per_axis = whole as u64 + 1;
        if per_axis.checked_pow(4).is_none() || per_axis > 1 << 15 {
            return bad(format!("{per_axis} points per axis is too many"));
        }
        // Aligned boxes use integer multiples of the step, one rounding each.
        let first = self.lo / self.step;
        let offset = (first - first.round()).abs() <= 1e-12 * first.abs().max(1.0);
        let grid = ScanGrid {
            per_axis,
            lo: self.lo,
            step: self.step,
            first_multiple: offset.then(|| first.round() as i64),
        };
        if !self.exclude_zero_forms && grid.axis_values().any(|v| v == 0.0) {
            return bad("the zero form lies on the grid and has no ratio".into());
        }
        Ok(grid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanGrid {
    per_axis: u64,
    lo: f64,
    step: f64,
    first_multiple: Option<i64>,
}

impl ScanGrid {
    pub fn per_axis(&self) -> u64 {
        self.per_axis
    }

    pub fn len(&self) -> u64 {
        self.per_axis.pow(4)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn axis_value(&self, i: u64) -> f64 {
        match self.first_multiple {
            Some(k0) => (k0 + i as i64) as f64 * self.step,
            None => self.lo + i as f64 * self.step,
        }
    }

    pub fn axis_values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.per_axis).map(|i| self.axis_value(i))
    }

    /// Point `index` in lexicographic order of `(a11, a21, a12, a22)`.
    pub fn point(&self, index: u64) -> FormCoefficients {
        let n = self.per_axis;
        let digits = [
            index / (n * n * n),
            index / (n * n) % n,
            index / n % n,
            index % n,
        ];
        FormCoefficients::from_array_unchecked(digits.map(|i| self.axis_value(i)))
    }

    pub fn points(&self) -> impl Iterator<Item = FormCoefficients> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub max_ratio: f64,
    pub argmax_list: Vec<FormCoefficients>,
    pub points_scanned: u64,
    pub config: ScanConfig,
}

/// Running maximum plus every index within [`ARGMAX_TOL`] of it.
#[derive(Default)]
struct Best {
    max: f64,
    hits: Vec<(u64, f64)>,
    scanned: u64,
}

impl Best {
    fn push(&mut self, index: u64, ratio: f64) {
        self.scanned += 1;
        if ratio > self.max {
            self.max = ratio;
            self.hits.retain(|&(_, r)| r >= ratio - ARGMAX_TOL);
        }
        if ratio >= self.max - ARGMAX_TOL {
            self.hits.push((index, ratio));
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.max = self.max.max(other.max);
        self.hits.extend(other.hits);
        let floor = self.max - ARGMAX_TOL;
        self.hits.retain(|&(_, r)| r >= floor);
        self.scanned += other.scanned;
        self
    }
}

const SCAN_BLOCK: u64 = 1 << 12;

/// Ratio at every grid point, reduced to the maximum and all maximisers.
///
/// Work is split into fixed index blocks; the merge is associative, and the
/// maximisers are sorted by grid index, so the report does not depend on the
/// thread count.
pub fn grid_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let grid = cfg.grid()?;
    let blocks = grid.len().div_ceil(SCAN_BLOCK);
    let best = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut best = Best::default();
            for index in b * SCAN_BLOCK..((b + 1) * SCAN_BLOCK).min(grid.len()) {
                let form = grid.point(index);
                if form.is_zero() {
                    continue;
                }
                best.push(index, littlewood_ratio(&form, cfg.field)?.ratio);
            }
            Ok(best)
        })
        .try_reduce(Best::default, |a, b| Ok(a.merge(b)))?;
    let mut hits = best.hits;
    hits.sort_unstable_by_key(|&(i, _)| i);
    Ok(ScanReport {
        max_ratio: best.max,
        argmax_list: hits.into_iter().map(|(i, _)| grid.point(i)).collect(),
        points_scanned: best.scanned,
        config: *cfg,
    })
}

// --- sampled case bounds ---------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseBoundReport {
    pub case: CaseLabel,
    pub samples: u64,
    pub seed: u64,
    pub worst_ratio: f64,
    pub worst_form: FormCoefficients,
}

/// Random form in the given sign/zero pattern.
fn sample_case(case: CaseLabel, rng: &mut impl Rng) -> FormCoefficients {
    let mut mag = || positive_unit(rng);
    let mut c = [mag(), mag(), mag(), mag()];
    let signs: [f64; 4] = std::array::from_fn(|_| random_sign(rng));
    match case {
        CaseLabel::Case1ZeroProduct => {
            for (v, s) in c.iter_mut().zip(signs) {
                *v *= s;
            }
            c[rng.random_range(0..4)] = 0.0;
        }
        CaseLabel::Case2PosPos | CaseLabel::Case3NegNeg => {
            let within = if case == CaseLabel::Case2PosPos {
                1.0
            } else {
                -1.0
            };
            c = [
                signs[0] * c[0],
                within * signs[0] * c[1],
                signs[1] * c[2],
                within * signs[1] * c[3],
            ];
        }
        CaseLabel::Case4PosNegBalanced | CaseLabel::Case5NegPosBalanced => {
            let within = if case == CaseLabel::Case4PosNegBalanced {
                1.0
            } else {
                -1.0
            };
            let a11 = signs[0] * c[0];
            let a21 = within * signs[0] * c[1];
            let a12 = signs[1] * c[2];
            c = [a11, a21, a12, -(a11 * a21) / a12];
        }
        CaseLabel::Uncovered => unreachable!("rejected by caller"),
    }
    FormCoefficients::from_array_unchecked(c)
}

/// Largest complex ratio over `samples` random forms of a covered case.
///
/// Balanced cases draw three coefficients and solve `a22` from
/// `a11 a21 + a12 a22 = 0`.
pub fn verify_case_bound(case: CaseLabel, samples: u64, seed: u64) -> Result<CaseBoundReport> {
    if case == CaseLabel::Uncovered {
        return Err(Error::UncoveredCase);
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    let worst = chunk_ranges(samples)
        .into_par_iter()
        .map(|(chunk, range)| {
            let mut rng = chunk_rng(seed, chunk);
            let mut worst: Option<(f64, u64, FormCoefficients)> = None;
            for i in range {
                let form = sample_case(case, &mut rng);
                let r = littlewood_ratio(&form, ScalarField::ComplexRealCoeffs)?.ratio;
                if worst.map_or(true, |(w, _, _)| r > w) {
                    worst = Some((r, i, form));
                }
            }
            Ok(worst)
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                        y
                    } else {
                        x
                    }),
                    (x, None) => x,
                    (None, y) => y,
                })
            },
        )?
        .expect("at least one sample");
    Ok(CaseBoundReport {
        case,
        samples,
        seed,
        worst_ratio: worst.0,
        worst_form: worst.2,
    })
}
