//! Elementary inequalities between the two vertex candidates, as executable
//! predicates.
//!
//! Each biconditional is exposed as a `(lhs, rhs)` pair so that sampling can
//! compare the two sides. [`verify_lemmas`] runs all of them over seeded
//! random quadruples.

use std::sync::OnceLock;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{chunk_ranges, chunk_rng, log_uniform, random_sign};

/// `a, b, c > 0` and `d < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedQuadruple {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl SignedQuadruple {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let finite = [a, b, c, d].iter().all(|v| v.is_finite());
        if !(finite && a > 0.0 && b > 0.0 && c > 0.0 && d < 0.0) {
            return Err(Error::InvalidRegion);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn scale(&self) -> f64 {
        self.a.max(self.b).max(self.c).max(-self.d)
    }
}

/// `a + b + |c + d| >= |a - b| + c - d` against
/// `(a, b, c >= -d) or (a, b >= c and -d >= c)`.
pub fn maxpos_equiv(q: &SignedQuadruple) -> (bool, bool) {
    let SignedQuadruple { a, b, c, d } = *q;
    let lhs = a + b + (c + d).abs() >= (a - b).abs() + c - d;
    let rhs = (a >= -d && b >= -d && c >= -d) || (a >= c && b >= c && -d >= c);
    (lhs, rhs)
}

/// `|a - b| + c - d >= a + b + |c + d|` against
/// `(a, c, -d >= b) or (b, c, -d >= a)`.
pub fn maxneg_equiv(q: &SignedQuadruple) -> (bool, bool) {
    let SignedQuadruple { a, b, c, d } = *q;
    let lhs = (a - b).abs() + c - d >= a + b + (c + d).abs();
    let rhs = (a >= b && c >= b && -d >= b) || (b >= a && c >= a && -d >= a);
    (lhs, rhs)
}

/// Under `|a + b| + |c + d| = |a - b| + |c - d|` and `a != b`, reports whether
/// `b = -d` or `a = -d`.
///
/// The conclusion follows from the hypothesis only when `c >= -d`; with
/// `c < -d` the hypothesis forces `c = min(a, b)` instead and this returns
/// `false`, e.g. for `(1, 0.5, 0.5, -2)`.
pub fn maxig_check(q: &SignedQuadruple) -> Result<bool> {
    let SignedQuadruple { a, b, c, d } = *q;
    let scale = q.scale();
    let lhs = (a + b).abs() + (c + d).abs();
    let rhs = (a - b).abs() + (c - d).abs();
    if (lhs - rhs).abs() > 1e-12 * scale.max(1.0) {
        return Err(Error::HypothesisNotMet("|a+b| + |c+d| = |a-b| + |c-d|"));
    }
    if a == b {
        return Err(Error::HypothesisNotMet("a != b"));
    }
    let near = |x: f64, y: f64| (x - y).abs() <= 1e-9 * scale.max(1.0);
    Ok(near(b, -d) || near(a, -d))
}

const MONOMAX_POINTS: usize = 10_000;

fn monomax_grid() -> &'static [f64] {
    static GRID: OnceLock<Vec<f64>> = OnceLock::new();
    GRID.get_or_init(|| {
        let last = (MONOMAX_POINTS - 1) as f64;
        (0..MONOMAX_POINTS)
            .map(|k| -1.0 + 2.0 * k as f64 / last)
            .collect()
    })
}

/// Whether `f(t) = |a + b t| + |c + d t|` on an evenly spaced grid of
/// `[-1, 1]` (endpoints included) never exceeds `max(f(-1), f(1))`, with
/// slack `1e-12` relative to that maximum.
pub fn monomax_check(a: f64, b: f64, c: f64, d: f64) -> bool {
    let f = |t: f64| (a + b * t).abs() + (c + d * t).abs();
    let ends = f(-1.0).max(f(1.0));
    let grid = monomax_grid();
    let mut acc = [f64::NEG_INFINITY; 4];
    let mut chunks = grid.chunks_exact(4);
    for ch in &mut chunks {
        for j in 0..4 {
            let v = f(ch[j]);
            acc[j] = if v > acc[j] { v } else { acc[j] };
        }
    }
    let inner = chunks
        .remainder()
        .iter()
        .map(|&t| f(t))
        .chain(acc)
        .fold(f64::NEG_INFINITY, f64::max);
    inner <= ends + 1e-12 * ends.max(1.0)
}

/// `|(ab/(cd))^2 (c^2 + d^2) - (a^2 + b^2)| <= 2ab(1 - ab/(cd))` against
/// `|cd/(ab) (a - b)| <= c - d` and `|ab/(cd) (c + d)| <= a + b`.
pub fn tec01_equiv(q: &SignedQuadruple) -> (bool, bool) {
    let m = tec01_margins(q);
    (m[0] >= 0.0, m[1] >= 0.0 && m[2] >= 0.0)
}

/// Signed slack of each inequality, relative to its operand scale.
fn tec01_margins(q: &SignedQuadruple) -> [f64; 3] {
    let SignedQuadruple { a, b, c, d } = *q;
    let r = a * b / (c * d);
    let l0 = (r * r * (c * c + d * d) - (a * a + b * b)).abs();
    let r0 = 2.0 * a * b * (1.0 - r);
    let l1 = ((a - b) / r).abs();
    let r1 = c - d;
    let l2 = (r * (c + d)).abs();
    let r2 = a + b;
    let rel = |l: f64, rhs: f64| (rhs - l) / l.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    [rel(l0, r0), rel(l1, r1), rel(l2, r2)]
}

fn maxpos_margins(q: &SignedQuadruple) -> [f64; 4] {
    let SignedQuadruple { a, b, c, d } = *q;
    let s = q.scale();
    [
        (a + b + (c + d).abs() - ((a - b).abs() + c - d)) / s,
        (a.min(b).min(c) + d) / s,
        (a.min(b) - c) / s,
        (-d - c) / s,
    ]
}

fn maxneg_margins(q: &SignedQuadruple) -> [f64; 4] {
    let SignedQuadruple { a, b, c, d } = *q;
    let s = q.scale();
    [
        maxpos_margins(q)[0],
        (a - b) / s,
        (c - a.min(b)) / s,
        (-d - a.min(b)) / s,
    ]
}

const MAX_COUNTEREXAMPLES: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LemmaTally {
    pub checked: u64,
    pub passed: u64,
    pub skipped_boundary: u64,
    pub failed: u64,
    /// The first few failing inputs in sample order.
    pub counterexamples: Vec<[f64; 4]>,
}

impl LemmaTally {
    fn record(&mut self, ok: bool, input: [f64; 4]) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(input);
            }
        }
    }

    fn skip(&mut self) {
        self.skipped_boundary += 1;
    }

    fn merge(mut self, other: LemmaTally) -> LemmaTally {
        self.checked += other.checked;
        self.passed += other.passed;
        self.skipped_boundary += other.skipped_boundary;
        self.failed += other.failed;
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.truncate(MAX_COUNTEREXAMPLES);
        self
    }

    pub fn is_clean(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub samples: u64,
    pub seed: u64,
    pub band: f64,
    pub maxpos: LemmaTally,
    pub maxneg: LemmaTally,
    /// `maxpos` or `maxneg` holds.
    pub coverage: LemmaTally,
    /// Sampled on the equality surface with `c >= -d`.
    pub maxig: LemmaTally,
    pub monomax: LemmaTally,
    pub tec01: LemmaTally,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.maxpos,
            &self.maxneg,
            &self.coverage,
            &self.maxig,
            &self.monomax,
            &self.tec01,
        ]
        .iter()
        .all(|t| t.is_clean())
    }

    fn merge(self, o: LemmaReport) -> LemmaReport {
        LemmaReport {
            maxpos: self.maxpos.merge(o.maxpos),
            maxneg: self.maxneg.merge(o.maxneg),
            coverage: self.coverage.merge(o.coverage),
            maxig: self.maxig.merge(o.maxig),
            monomax: self.monomax.merge(o.monomax),
            tec01: self.tec01.merge(o.tec01),
            ..self
        }
    }
}

const MAG_LO: f64 = 1e-3;
const MAG_HI: f64 = 1e3;

fn random_quadruple(rng: &mut impl Rng) -> SignedQuadruple {
    let mut m = || log_uniform(rng, MAG_LO, MAG_HI);
    SignedQuadruple {
        a: m(),
        b: m(),
        c: m(),
        d: -m(),
    }
}

/// A point of the equality surface with `a != b` and `c >= -d`, where
/// `d = -min(a, b)`.
fn random_maxig_quadruple(rng: &mut impl Rng) -> SignedQuadruple {
    loop {
        let a = log_uniform(rng, MAG_LO, MAG_HI);
        let b = log_uniform(rng, MAG_LO, MAG_HI);
        if a == b {
            continue;
        }
        let d = -a.min(b);
        let c = -d
            * log_uniform(rng, 1.0, MAG_HI / MAG_LO)
                .min(MAG_HI / -d)
                .max(1.0);
        return SignedQuadruple { a, b, c, d };
    }
}

fn empty_report(samples: u64, seed: u64, band: f64) -> LemmaReport {
    LemmaReport {
        samples,
        seed,
        band,
        maxpos: LemmaTally::default(),
        maxneg: LemmaTally::default(),
        coverage: LemmaTally::default(),
        maxig: LemmaTally::default(),
        monomax: LemmaTally::default(),
        tec01: LemmaTally::default(),
    }
}

fn near_boundary(margins: &[f64], band: f64) -> bool {
    margins.iter().any(|m| m.abs() <= band)
}

/// Check every lemma on `samples` seeded random inputs.
///
/// Biconditional samples whose relative margin on any comparison is within
/// `band` are counted as skipped rather than checked. Magnitudes are
/// log-uniform in `[1e-3, 1e3]`; the univariate maximum check uses the same
/// magnitudes with random signs.
pub fn verify_lemmas(samples: u64, seed: u64, band: f64) -> Result<LemmaReport> {
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    if !(band >= 0.0 && band.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "band must be finite and >= 0, got {band}"
        )));
    }
    let report = chunk_ranges(samples)
        .into_par_iter()
        .map(|(chunk, range)| {
            let mut rng = chunk_rng(seed, chunk);
            let mut r = empty_report(samples, seed, band);
            for _ in range {
                let q = random_quadruple(&mut rng);
                let input = q.to_array();

                let (pl, pr) = maxpos_equiv(&q);
                let (nl, nr) = maxneg_equiv(&q);
                r.coverage.record(pl || nl, input);
                if near_boundary(&maxpos_margins(&q), band) {
                    r.maxpos.skip();
                } else {
                    r.maxpos.record(pl == pr, input);
                }
                if near_boundary(&maxneg_margins(&q), band) {
                    r.maxneg.skip();
                } else {
                    r.maxneg.record(nl == nr, input);
                }
                if near_boundary(&tec01_margins(&q), band) {
                    r.tec01.skip();
                } else {
                    let (tl, tr) = tec01_equiv(&q);
                    r.tec01.record(tl == tr, input);
                }

                let signs: [f64; 4] = std::array::from_fn(|_| random_sign(&mut rng));
                let [a, b, c, d] = std::array::from_fn(|i| input[i].abs() * signs[i]);
                r.monomax.record(monomax_check(a, b, c, d), [a, b, c, d]);

                let g = random_maxig_quadruple(&mut rng);
                match maxig_check(&g) {
                    Ok(ok) => r.maxig.record(ok, g.to_array()),
                    Err(_) => r.maxig.skip(),
                }
            }
            r
        })
        .reduce(|| empty_report(samples, seed, band), LemmaReport::merge);
    Ok(report)
}
