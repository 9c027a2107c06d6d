//! Brute-force reference norms.
//!
//! These share no code path with the closed forms in [`crate::forms`] beyond
//! coefficient access and the phase profile itself, which is the definition
//! of the complex norm after the reduction to one phase variable.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{boundary_profile, evaluate_real, FormCoefficients};

const SIGNS: [f64; 2] = [-1.0, 1.0];

/// Real norm by enumerating the 16 vertex pairs `(x, y)` of the square.
pub fn oracle_norm_real(form: &FormCoefficients) -> f64 {
    let mut best = 0.0f64;
    for x1 in SIGNS {
        for x2 in SIGNS {
            for y1 in SIGNS {
                for y2 in SIGNS {
                    best = best.max(evaluate_real(form, [x1, x2], [y1, y2]).abs());
                }
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGridConfig {
    coarse_points: usize,
    refine_iters: usize,
    tol: f64,
}

impl PhaseGridConfig {
    pub fn new(coarse_points: usize, refine_iters: usize, tol: f64) -> Result<Self> {
        if coarse_points < 8 {
            return Err(Error::InvalidConfig(format!(
                "coarse_points must be at least 8, got {coarse_points}"
            )));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {tol}"
            )));
        }
        Ok(Self {
            coarse_points,
            refine_iters,
            tol,
        })
    }

    pub fn coarse_points(&self) -> usize {
        self.coarse_points
    }
    pub fn refine_iters(&self) -> usize {
        self.refine_iters
    }
    pub fn tol(&self) -> f64 {
        self.tol
    }
}

impl Default for PhaseGridConfig {
    fn default() -> Self {
        Self {
            coarse_points: 4096,
            refine_iters: 60,
            tol: 1e-10,
        }
    }
}

/// Complex norm by maximising the phase profile numerically: a uniform coarse
/// scan of `[0, 2pi)` followed by golden-section refinement in `t` around the
/// best sample.
///
/// The profile is unimodal on `[0, pi]` and symmetric about `pi`, so the
/// neighbours of the best coarse sample bracket a global maximiser. The
/// returned value is the largest profile value actually evaluated and so
/// never exceeds the true norm beyond rounding.
pub fn oracle_norm_complex(form: &FormCoefficients, cfg: &PhaseGridConfig) -> f64 {
    let f = |t: f64| boundary_profile(form, t).f_of_t;
    let step = TAU / cfg.coarse_points as f64;

    let (mut best_t, mut best_f) = (0.0, f(0.0));
    for i in 1..cfg.coarse_points {
        let t = i as f64 * step;
        let v = f(t);
        // Strict comparison keeps the smallest t on ties.
        if v > best_f {
            best_t = t;
            best_f = v;
        }
    }

    let refined = golden_section_max(f, best_t - step, best_t + step, cfg.refine_iters, cfg.tol);
    best_f.max(refined)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns the best value evaluated.
fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    max_iters: usize,
    tol: f64,
) -> f64 {
    // 1/phi
    const INV_PHI: f64 = 0.618_033_988_749_894_8;

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = f1.max(f2);

    for _ in 0..max_iters {
        if hi - lo < tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            best = best.max(f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            best = best.max(f1);
        }
    }
    best
}
