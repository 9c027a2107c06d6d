//! Command implementations behind the `littlewood` binary.
//!
//! Every command produces one JSON envelope `{command, inputs, result,
//! version}` with floating-point numbers written to 17 significant digits,
//! plus an exit code.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use littlewood_core::{
    classify, grid_scan, littlewood_ratio, norm, oracle_norm_complex, oracle_norm_real,
    verify_lemmas, ClassificationResult, Error as CoreError, FormCoefficients, LemmaReport,
    NormResult, PhaseGridConfig, ScalarField, ScanConfig, ScanReport,
};
use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest tolerated gap between the closed-form norm and its oracle.
pub const ORACLE_GAP_LIMIT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Usage = 2,
    Io = 3,
    SelfCheck = 4,
}

#[derive(Debug)]
pub struct Failure {
    pub code: ExitCode,
    pub message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Self {
            code: ExitCode::Usage,
            message: e.to_string(),
        }
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self {
            code: ExitCode::Io,
            message: format!("{}: {e}", path.display()),
        }
    }
}

/// What a command prints and how the process should exit.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: ExitCode,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<I, R> {
    pub command: String,
    pub inputs: I,
    pub result: R,
    pub version: String,
}

impl<I, R> Envelope<I, R> {
    pub fn new(command: &str, inputs: I, result: R) -> Self {
        Self {
            command: command.into(),
            inputs,
            result,
            version: VERSION.into(),
        }
    }
}

/// Compact JSON whose floats carry 17 significant digits, enough to
/// round-trip any `f64`.
struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SeventeenDigits);
    value.serialize(&mut ser).expect("serializing to memory");
    String::from_utf8(out).expect("JSON is UTF-8")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoeffOrder {
    /// `a11,a21,a12,a22`.
    #[default]
    ColumnMajor,
    /// `a11,a12,a21,a22`, a row-major reading of the matrix.
    Matrix,
}

/// Four comma-separated finite reals.
pub fn parse_coeffs(s: &str, order: CoeffOrder) -> Result<FormCoefficients, String> {
    let values = parse_list::<4>(s)?;
    let form = match order {
        CoeffOrder::ColumnMajor => FormCoefficients::from_array(values),
        CoeffOrder::Matrix => FormCoefficients::from_matrix_order(values),
    };
    form.map_err(|e| e.to_string())
}

pub fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated numbers, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        let v: f64 = part
            .parse()
            .map_err(|_| format!("`{part}` is not a number"))?;
        if !v.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
        *slot = v;
    }
    Ok(out)
}

fn field_name(field: ScalarField) -> &'static str {
    match field {
        ScalarField::Real => "real",
        ScalarField::ComplexRealCoeffs => "complex",
    }
}

// --- norm ------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormInputs {
    pub coeffs: FormCoefficients,
    pub field: String,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub value: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormPayload {
    pub norm: NormResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

pub fn cmd_norm(coeffs: FormCoefficients, field: ScalarField, with_oracle: bool) -> Outcome {
    let result = norm(&coeffs, field);
    let oracle = with_oracle.then(|| {
        let value = match field {
            ScalarField::Real => oracle_norm_real(&coeffs),
            ScalarField::ComplexRealCoeffs => {
                oracle_norm_complex(&coeffs, &PhaseGridConfig::default())
            }
        };
        OracleCheck {
            value,
            gap: (value - result.value).abs(),
        }
    });
    let failed = oracle
        .as_ref()
        .is_some_and(|o| o.gap.is_nan() || o.gap > ORACLE_GAP_LIMIT);
    let env = Envelope::new(
        "norm",
        NormInputs {
            coeffs,
            field: field_name(field).into(),
            oracle: with_oracle,
        },
        NormPayload {
            norm: result,
            oracle,
        },
    );
    Outcome {
        stdout: to_json(&env),
        code: if failed {
            ExitCode::SelfCheck
        } else {
            ExitCode::Success
        },
        message: failed.then(|| format!("oracle gap exceeds {ORACLE_GAP_LIMIT:e}")),
    }
}

// --- classify --------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyInputs {
    pub coeffs: FormCoefficients,
    pub tol: f64,
}

pub fn cmd_classify(coeffs: FormCoefficients, tol: f64) -> Result<Outcome, Failure> {
    let result: ClassificationResult = classify(&coeffs, tol).map_err(|e| match e {
        CoreError::InvalidConfig(_) => Failure::usage(e),
        other => Failure {
            code: ExitCode::SelfCheck,
            message: other.to_string(),
        },
    })?;
    Ok(Outcome {
        stdout: to_json(&Envelope::new(
            "classify",
            ClassifyInputs { coeffs, tol },
            result,
        )),
        code: ExitCode::Success,
        message: None,
    })
}

// --- scan ------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanInputs {
    pub step: f64,
    #[serde(rename = "box")]
    pub bounds: [f64; 2],
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

/// Printed instead of the full report when the report goes to a file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub max_ratio: f64,
    pub points_scanned: u64,
    pub argmax_count: usize,
}

pub fn cmd_scan(
    cfg: ScanConfig,
    out: Option<&Path>,
    csv_path: Option<&Path>,
) -> Result<Outcome, Failure> {
    let grid = cfg.grid().map_err(Failure::usage)?;
    let report: ScanReport = grid_scan(&cfg).map_err(Failure::usage)?;
    let inputs = ScanInputs {
        step: cfg.step,
        bounds: [cfg.lo, cfg.hi],
        field: field_name(cfg.field).into(),
        out: out.map(Path::to_path_buf),
        csv: csv_path.map(Path::to_path_buf),
    };
    if let Some(path) = csv_path {
        write_scan_csv(path, &cfg, grid.points()).map_err(|e| Failure::io(path, e))?;
    }
    let stdout = match out {
        Some(path) => {
            let full = to_json(&Envelope::new("scan", inputs.clone(), &report));
            std::fs::write(path, full + "\n").map_err(|e| Failure::io(path, e))?;
            let summary = ScanSummary {
                max_ratio: report.max_ratio,
                points_scanned: report.points_scanned,
                argmax_count: report.argmax_list.len(),
            };
            to_json(&Envelope::new("scan", inputs, summary))
        }
        None => to_json(&Envelope::new("scan", inputs, &report)),
    };
    Ok(Outcome {
        stdout,
        code: ExitCode::Success,
        message: None,
    })
}

fn write_scan_csv(
    path: &Path,
    cfg: &ScanConfig,
    points: impl Iterator<Item = FormCoefficients>,
) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["a11", "a21", "a12", "a22", "norm", "ratio"])?;
    for t in points.filter(|t| !t.is_zero()) {
        let r = littlewood_ratio(&t, cfg.field)?;
        let [a, b, c, d] = t.to_array();
        w.write_record([a, b, c, d, r.norm_used.value, r.ratio].map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

// --- verify-lemmas ---------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaInputs {
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
}

pub fn cmd_verify_lemmas(samples: u64, seed: u64, tol: f64) -> Result<Outcome, Failure> {
    let report: LemmaReport = verify_lemmas(samples, seed, tol).map_err(Failure::usage)?;
    let clean = report.all_passed();
    Ok(Outcome {
        stdout: to_json(&Envelope::new(
            "verify-lemmas",
            LemmaInputs { samples, seed, tol },
            &report,
        )),
        code: if clean {
            ExitCode::Success
        } else {
            ExitCode::SelfCheck
        },
        message: (!clean).then(|| "lemma counterexample found".to_string()),
    })
}
