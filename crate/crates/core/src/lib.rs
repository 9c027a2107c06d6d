//! Exact operator norms, unit-ball geometry and Littlewood 4/3 constants for
//! bilinear forms `T(x, y) = a11 x1 y1 + a21 x2 y1 + a12 x1 y2 + a22 x2 y2` on
//! the two-dimensional max-norm space.
//!
//! The crate is organised bottom-up:
//!
//! * [`forms`]: coefficient records and the closed-form real and complex norms.
//! * [`oracle`]: brute-force reference norms used to cross-check the closed forms.
//! * [`geometry`]: the 16 extreme points of the real unit ball, classification,
//!   split witnesses for non-extreme forms and exposing functionals.
//! * [`littlewood`]: the 4/3 ratio, optimizer characterisation, complex case
//!   labels and deterministic grid scans.
//! * [`lemmata`]: executable forms of the elementary inequalities the rest of
//!   the crate relies on.

pub mod error;
pub mod forms;
pub mod geometry;
pub mod lemmata;
pub mod littlewood;
pub mod oracle;
mod sampling;

pub use error::{Error, Result};
pub use forms::{
    boundary_profile, coeff_lp_norm, evaluate_real, make_form, norm, norm_complex_real_coeffs,
    norm_real, BoundaryProfilePoint, FormCoefficients, NormBranch, NormResult, ScalarField,
};
pub use geometry::{
    classify, dual_norm, exposing_functional, extreme_points, split_witness, ClassificationResult,
    DualFunctional, ExtremeKind, ExtremePoint, SplitWitness, Verdict, WitnessCase,
};
pub use lemmata::{
    maxig_check, maxneg_equiv, maxpos_equiv, monomax_check, tec01_equiv, verify_lemmas,
    LemmaReport, LemmaTally, SignedQuadruple,
};
pub use littlewood::{
    classify_complex_case, grid_scan, is_real_optimizer, littlewood_ratio, verify_case_bound,
    CaseBoundReport, CaseLabel, RatioReport, ScanConfig, ScanGrid, ScanReport,
};
pub use oracle::{oracle_norm_complex, oracle_norm_real, PhaseGridConfig};
