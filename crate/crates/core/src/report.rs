//! Run reports: the structured, versioned output of eigen and singular runs.
//!
//! Reports are JSON with full-precision numbers. Everything except the `timings`
//! field is a pure function of the input bytes and the request, so two runs with
//! the same seed produce byte-identical reports once timings are dropped.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::parse_tensor;
use crate::morse::{audit, MorseReport};
use crate::norms::NormParam;
use crate::oracle::circle_critical_points;
use crate::solver::{
    generalized_eigenpairs, mode_eigenpairs, singular_tuples, symmetric_eigenpairs, EigenPair, SingularTuple,
    SolverConfig,
};
use crate::tensor::DenseTensor;

pub const SCHEMA_VERSION: u32 = 1;

/// Tolerance on values when comparing a run against the circle oracle.
pub const ORACLE_VALUE_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    /// SHA-256 of the tensor file contents, hex encoded.
    pub sha256: String,
    pub shape: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    /// `"symmetric"`, `"mode"` or `"singular"`.
    pub kind: String,
    /// 0 for symmetric runs, the 1-based mode otherwise; absent for singular runs.
    pub mode: Option<usize>,
    pub p: f64,
    pub seed: u64,
    pub restarts: usize,
    /// Where the restart count came from: `"flag"`, `"env:<VAR>"` or `"default"`.
    pub restarts_source: String,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub dedupe_tolerance: f64,
    pub audit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub vector: Vec<f64>,
    pub value: f64,
    pub mode: usize,
    pub residual: f64,
    pub index: Option<usize>,
    pub nondegenerate: Option<bool>,
    pub near_nonsmooth: bool,
}

impl From<&EigenPair<f64>> for PairRecord {
    fn from(p: &EigenPair<f64>) -> Self {
        Self {
            vector: p.vector.clone(),
            value: p.value,
            mode: p.kind.code(),
            residual: p.residual,
            index: p.index,
            nondegenerate: p.nondegenerate,
            near_nonsmooth: p.near_nonsmooth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub vectors: Vec<Vec<f64>>,
    pub sigma: f64,
    pub raw_sigma: f64,
    pub multipliers: Vec<f64>,
    pub mode_residuals: Vec<f64>,
    pub residual: f64,
    pub degenerate: bool,
}

impl From<&SingularTuple<f64>> for TupleRecord {
    fn from(t: &SingularTuple<f64>) -> Self {
        Self {
            vectors: t.vectors.clone(),
            sigma: t.sigma,
            raw_sigma: t.raw_sigma,
            multipliers: t.multipliers.clone(),
            mode_residuals: t.mode_residuals.clone(),
            residual: t.residual,
            degenerate: t.degenerate,
        }
    }
}

/// Comparison of a symmetric run on `R^2` against the complete circle oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub oracle: String,
    pub oracle_points: usize,
    pub solver_points: usize,
    /// Same cardinality, and the sorted `(value, index)` lists agree within
    /// [`ORACLE_VALUE_TOLERANCE`].
    pub agree: bool,
    pub max_value_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub solve_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    AuditViolation,
    Degenerate,
}

impl RunStatus {
    /// Process exit code: 0 ok, 3 audit violation, 4 degenerate.
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::AuditViolation => 3,
            RunStatus::Degenerate => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputInfo,
    pub config: ConfigEcho,
    pub status: RunStatus,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pairs: Option<Vec<PairRecord>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tuples: Option<Vec<TupleRecord>>,
    pub morse: Option<MorseReport>,
    pub oracle: Option<OracleComparison>,
    pub timings: Option<Timings>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with `timings` cleared, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        Self { timings: None, ..self.clone() }
    }
}

/// Which eigen problem to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigTarget {
    Symmetric,
    /// 0-based mode.
    Mode(usize),
}

/// Search settings shared by eigen and singular runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub p: f64,
    pub seed: u64,
    pub restarts: usize,
    pub restarts_source: String,
}

impl RunSettings {
    fn config(&self) -> Result<SolverConfig<f64>> {
        let config =
            SolverConfig::default().with_seed(self.seed).with_restarts(self.restarts).with_p(NormParam::new(self.p)?);
        config.validate()?;
        Ok(config)
    }

    fn echo(&self, config: &SolverConfig<f64>, kind: &str, mode: Option<usize>, audit: bool) -> ConfigEcho {
        ConfigEcho {
            kind: kind.into(),
            mode,
            p: self.p,
            seed: self.seed,
            restarts: self.restarts,
            restarts_source: self.restarts_source.clone(),
            max_iterations: config.max_iterations,
            gradient_tolerance: config.gradient_tolerance,
            dedupe_tolerance: config.dedupe_tolerance,
            audit,
        }
    }
}

fn input_info(bytes: &[u8], t: &DenseTensor<f64>) -> InputInfo {
    InputInfo { sha256: hex::encode(Sha256::digest(bytes)), shape: t.dims().to_vec() }
}

fn parse(bytes: &[u8]) -> Result<DenseTensor<f64>> {
    parse_tensor(std::str::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?)
}

/// Compares solver pairs with the circle oracle by sorted `(value, index)` lists.
pub fn compare_with_circle(t: &DenseTensor<f64>, pairs: &[EigenPair<f64>]) -> Result<OracleComparison> {
    let set = circle_critical_points(t, 1e-3)?;
    let mut oracle: Vec<(f64, usize)> = set.points.iter().map(|p| (p.value, p.index)).collect();
    let mut solver: Vec<(f64, usize)> = pairs.iter().map(|p| (p.value, p.index.unwrap_or(usize::MAX))).collect();
    let key = |a: &(f64, usize), b: &(f64, usize)| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1));
    oracle.sort_by(key);
    solver.sort_by(key);
    let (agree, max_value_error) = if oracle.len() == solver.len() {
        let err = oracle.iter().zip(&solver).map(|(a, b)| (a.0 - b.0).abs()).fold(0.0, f64::max);
        let same_index = oracle.iter().zip(&solver).all(|(a, b)| a.1 == b.1);
        (same_index && err <= ORACLE_VALUE_TOLERANCE, Some(err))
    } else {
        (false, None)
    };
    Ok(OracleComparison {
        oracle: "circle".into(),
        oracle_points: oracle.len(),
        solver_points: solver.len(),
        agree,
        max_value_error,
    })
}

/// Runs an eigen solver on a tensor document and builds its report.
///
/// `audit` requires the symmetric target with `p = 2`. Input, shape and usage
/// problems are returned as errors; degenerate tensors and audit violations are
/// reported through [`RunReport::status`].
pub fn run_eig(bytes: &[u8], target: EigTarget, settings: &RunSettings, audit_run: bool) -> Result<RunReport> {
    let t = parse(bytes)?;
    let config = settings.config()?;
    if audit_run && (target != EigTarget::Symmetric || settings.p != 2.0) {
        return Err(Error::Argument("--audit requires --symmetric and p = 2".into()));
    }
    if !t.is_square() {
        return Err(Error::Shape(format!("eigenpairs need a square tensor, got {:?}", t.dims())));
    }
    let (kind, mode) = match target {
        EigTarget::Symmetric => ("symmetric", 0),
        EigTarget::Mode(i) => ("mode", i + 1),
    };
    let mut report = RunReport {
        schema_version: SCHEMA_VERSION,
        command: "eig".into(),
        input: input_info(bytes, &t),
        config: settings.echo(&config, kind, Some(mode), audit_run),
        status: RunStatus::Ok,
        diagnostics: Vec::new(),
        pairs: Some(Vec::new()),
        tuples: None,
        morse: None,
        oracle: None,
        timings: None,
    };

    let started = Instant::now();
    let result = match target {
        EigTarget::Symmetric => symmetric_eigenpairs(&t, &config),
        EigTarget::Mode(i) if settings.p == 2.0 => mode_eigenpairs(&t, i, &config),
        EigTarget::Mode(i) => generalized_eigenpairs(&t, i, &config),
    };
    let set = match result {
        Ok(set) => set,
        Err(Error::Degenerate(msg)) => {
            report.status = RunStatus::Degenerate;
            report.diagnostics.push(msg);
            report.timings = Some(Timings { solve_seconds: started.elapsed().as_secs_f64() });
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.diagnostics = set.diagnostics();
    report.pairs = Some(set.pairs.iter().map(PairRecord::from).collect());

    if audit_run {
        let n = t.dims()[0];
        match audit(&set.pairs, n) {
            Ok(morse) => {
                if !morse.consistent {
                    report.status = RunStatus::AuditViolation;
                }
                report.morse = Some(morse);
            }
            Err(Error::Precondition(msg)) => {
                report.status = RunStatus::Degenerate;
                report.diagnostics.push(msg);
            }
            Err(e) => return Err(e),
        }
        if n == 2 && t.order() >= 2 {
            match compare_with_circle(&t, &set.pairs) {
                Ok(cmp) => {
                    if !cmp.agree {
                        report.status = match report.status {
                            RunStatus::Ok => RunStatus::AuditViolation,
                            other => other,
                        };
                        report.diagnostics.push(format!(
                            "solver found {} critical points, the circle oracle {}",
                            cmp.solver_points, cmp.oracle_points
                        ));
                    }
                    report.oracle = Some(cmp);
                }
                Err(Error::Degenerate(msg)) => report.diagnostics.push(format!("circle oracle: {msg}")),
                Err(e) => return Err(e),
            }
        }
    }
    report.timings = Some(Timings { solve_seconds: started.elapsed().as_secs_f64() });
    Ok(report)
}

/// Runs the singular tuple solver on a tensor document and builds its report.
pub fn run_svd(bytes: &[u8], settings: &RunSettings) -> Result<RunReport> {
    let t = parse(bytes)?;
    let config = settings.config()?;
    let started = Instant::now();
    let set = singular_tuples(&t, &config)?;
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command: "svd".into(),
        input: input_info(bytes, &t),
        config: settings.echo(&config, "singular", None, false),
        status: RunStatus::Ok,
        diagnostics: set.diagnostics(),
        pairs: None,
        tuples: Some(set.tuples.iter().map(TupleRecord::from).collect()),
        morse: None,
        oracle: None,
        timings: Some(Timings { solve_seconds: started.elapsed().as_secs_f64() }),
    })
}
