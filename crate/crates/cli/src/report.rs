//! JSON reports and command dispatch.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use golodlab_core::golod::certificate::ElementRecord;
use golodlab_core::golod::{
    golod_by_series, golod_certificate, verify_certificate, CertificateOptions, GolodCertificate,
    SeriesComparison, VerificationReport,
};
use golodlab_core::groebner::ideal_power;
use golodlab_core::koszul::QuotientRing;
use golodlab_core::poly::{Polynomial, RingSpec};
use golodlab_core::resolution::{minimal_free_resolution, verify_resolution, Resolution};
use golodlab_core::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::problem::{parse_problem, ProblemSpec};

pub const SCHEMA: u32 = 1;
pub const STEP_BUDGET_VAR: &str = "GOLODLAB_STEP_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Resolve,
    Koszul,
    GolodCertify,
    Poincare,
    Corpus,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::Koszul => "koszul",
            Command::GolodCertify => "golod-certify",
            Command::Poincare => "poincare",
            Command::Corpus => "corpus",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub truncate: Option<usize>,
    pub full_degree_scan: bool,
    pub step_budget: Option<u64>,
}

impl RunOptions {
    /// Reads the step budget from the environment.
    pub fn with_env_budget(mut self) -> Result<Self, RunError> {
        if let Ok(v) = std::env::var(STEP_BUDGET_VAR) {
            let budget = v.trim().parse().map_err(|_| {
                RunError::Input(format!("{STEP_BUDGET_VAR} must be an integer, got `{v}`"))
            })?;
            self.step_budget = Some(budget);
        }
        Ok(self)
    }
}

/// Analysis commands only report; `golod-certify`, `resolve` and `corpus`
/// can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub ring: Vec<String>,
    pub weights: Vec<u32>,
    pub ideal: Vec<String>,
    pub power: usize,
    pub truncate: usize,
}

impl InputEcho {
    fn new(spec: &ProblemSpec) -> Self {
        InputEcho {
            ring: spec.ring.names().to_vec(),
            weights: spec.ring.weights().to_vec(),
            ideal: spec.generator_strings(),
            power: spec.power,
            truncate: spec.truncate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub l: usize,
    pub degree: u32,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionPayload {
    /// Minimal generators of `J`.
    pub generators: Vec<String>,
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<u32>>,
    /// `maps[i-1][j][k] = α^{(i)}_{jk}`.
    pub maps: Vec<Vec<Vec<String>>>,
    pub betti: Vec<BettiEntry>,
    pub verified: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub l: usize,
    pub degree: u32,
    pub dim: usize,
    pub betti: usize,
    pub representatives: Vec<ElementRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulPayload {
    pub generators: Vec<String>,
    pub homology: Vec<HomologyEntry>,
    pub matches_betti: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePayload {
    pub certificate: GolodCertificate,
    pub verification: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincarePayload {
    pub generators: Vec<String>,
    pub comparison: SeriesComparison,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub file: String,
    pub command: Command,
    pub outcome: Option<Outcome>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusPayload {
    pub entries: Vec<CorpusEntry>,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Resolution(ResolutionPayload),
    Koszul(KoszulPayload),
    Certificate(Box<CertificatePayload>),
    Poincare(PoincarePayload),
    Corpus(CorpusPayload),
}

/// Everything except timing; identical inputs give identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canonical {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub input: Option<InputEcho>,
    pub verdict: Outcome,
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(flatten)]
    pub canonical: Canonical,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::Input(format!("report JSON: {e}")))
    }

    pub fn exit_code(&self) -> i32 {
        match self.canonical.verdict {
            Outcome::Fail => 1,
            Outcome::Pass | Outcome::Report => 0,
        }
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let c = &self.canonical;
        let mut out = format!("{}: {:?}", c.command.name(), c.verdict).to_lowercase();
        match &c.payload {
            Payload::Resolution(r) => {
                out += &format!("\nranks {:?}", r.ranks);
                for e in &r.betti {
                    out += &format!("\n  beta[{},{}] = {}", e.l, e.degree, e.count);
                }
            }
            Payload::Koszul(k) => {
                for h in &k.homology {
                    out += &format!("\n  dim H_{}(R)_{} = {}", h.l, h.degree, h.dim);
                }
            }
            Payload::Certificate(p) => {
                let cert = &p.certificate;
                out += &format!(
                    "\n{} cycles, {} products, series {:?}",
                    cert.cycles.len(),
                    cert.products.len(),
                    cert.series.poincare.coefficients
                );
                if cert.fallback_representatives {
                    out += "\nfallback representatives used";
                }
                for check in &p.verification.checks {
                    out += &format!(
                        "\n  verify {}: {}",
                        check.name,
                        if check.passed { "ok" } else { "FAILED" }
                    );
                }
            }
            Payload::Poincare(p) => {
                out += &format!(
                    "\npoincare {:?}\nbound    {:?}",
                    p.comparison.poincare.coefficients, p.comparison.bound.coefficients
                );
                out += &match p.comparison.first_difference {
                    Some(i) => format!(
                        "\nfirst difference at t^{i} ({} vs {})",
                        p.comparison.poincare.coefficients[i], p.comparison.bound.coefficients[i]
                    ),
                    None if p.comparison.poincare.complete => "\nseries agree".to_string(),
                    None => "\nincomplete: step budget exhausted".to_string(),
                };
            }
            Payload::Corpus(p) => {
                for e in &p.entries {
                    let status = match (&e.outcome, &e.error) {
                        (_, Some(err)) => format!("error: {err}"),
                        (Some(o), None) => format!("{o:?}").to_lowercase(),
                        (None, None) => "?".to_string(),
                    };
                    out += &format!("\n  {} [{}] {}", e.file, e.command.name(), status);
                }
                out += &format!("\n{} passed, {} failed", p.passed, p.failed);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunError {
    /// Bad input: exit code 2.
    Input(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Input(e.to_string())
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn wrap(
    command: Command,
    input: Option<InputEcho>,
    verdict: Outcome,
    payload: Payload,
    start: Instant,
) -> Report {
    Report {
        canonical: Canonical {
            schema: SCHEMA,
            tool: "golodlab".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            input,
            verdict,
            payload,
        },
        timing: Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    }
}

/// Generators of `J = I^power`.
fn defining_ideal(spec: &ProblemSpec) -> Result<Vec<Polynomial>, RunError> {
    if spec.power == 0 {
        return Err(RunError::Input("power must be at least 1".into()));
    }
    if spec.generators.is_empty() {
        return Ok(Vec::new());
    }
    Ok(ideal_power(&spec.ring, &spec.generators, spec.power)?
        .into_iter()
        .map(|g| g.poly)
        .collect())
}

pub fn resolution_payload(ring: &RingSpec, res: &Resolution) -> ResolutionPayload {
    let check = verify_resolution(res);
    ResolutionPayload {
        generators: res.ideal().iter().map(|g| ring.format(g)).collect(),
        ranks: res.ranks(),
        shifts: res.modules().iter().map(|m| m.shifts().to_vec()).collect(),
        maps: res
            .maps()
            .iter()
            .map(|m| {
                m.rows()
                    .iter()
                    .map(|row| row.comps().iter().map(|f| ring.format(f)).collect())
                    .collect()
            })
            .collect(),
        betti: betti_entries(res),
        verified: check.passed(),
        failure: check.failure.map(|f| format!("{f:?}")),
    }
}

fn betti_entries(res: &Resolution) -> Vec<BettiEntry> {
    res.betti_table()
        .entries()
        .iter()
        .map(|(&(l, degree), &count)| BettiEntry { l, degree, count })
        .collect()
}

pub fn run_command(
    spec: &ProblemSpec,
    command: Command,
    options: &RunOptions,
) -> Result<Report, RunError> {
    let start = Instant::now();
    let input = Some(InputEcho::new(spec));
    let truncate = options.truncate.unwrap_or(spec.truncate);
    let ring = &spec.ring;
    match command {
        Command::Resolve => {
            let j = defining_ideal(spec)?;
            let res = minimal_free_resolution(ring, &j)?;
            let payload = resolution_payload(ring, &res);
            let verdict = if payload.verified {
                Outcome::Pass
            } else {
                Outcome::Fail
            };
            Ok(wrap(
                command,
                input,
                verdict,
                Payload::Resolution(payload),
                start,
            ))
        }
        Command::Koszul => {
            let j = defining_ideal(spec)?;
            let res = minimal_free_resolution(ring, &j)?;
            let q = QuotientRing::new(ring, res.ideal())?;
            let betti = res.betti_table();
            let mut homology = Vec::new();
            for l in 1..=res.length() {
                let basis = q.homology_basis(l, &res)?;
                for (d, piece) in basis.pieces {
                    homology.push(HomologyEntry {
                        l,
                        degree: d,
                        dim: piece.dim(),
                        betti: betti.get(l, d),
                        representatives: piece
                            .representatives
                            .iter()
                            .map(|z| ElementRecord::new(ring, z))
                            .collect(),
                    });
                }
            }
            let matches_betti = homology.iter().all(|h| h.dim == h.betti);
            let payload = KoszulPayload {
                generators: res.ideal().iter().map(|g| ring.format(g)).collect(),
                homology,
                matches_betti,
            };
            Ok(wrap(
                command,
                input,
                Outcome::Report,
                Payload::Koszul(payload),
                start,
            ))
        }
        Command::GolodCertify => {
            if spec.power < 2 {
                return Err(RunError::Input(format!(
                    "golod-certify needs power >= 2, got {}",
                    spec.power
                )));
            }
            let opts = CertificateOptions {
                truncation: truncate,
                full_degree_scan: options.full_degree_scan,
                step_budget: options.step_budget,
            };
            let certificate = golod_certificate(ring, &spec.generators, spec.power, &opts)?;
            let verification = verify_certificate(&certificate)?;
            let verdict = if certificate.passed() && verification.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            };
            let payload = CertificatePayload {
                certificate,
                verification,
            };
            Ok(wrap(
                command,
                input,
                verdict,
                Payload::Certificate(Box::new(payload)),
                start,
            ))
        }
        Command::Poincare => {
            let j = defining_ideal(spec)?;
            let res = minimal_free_resolution(ring, &j)?;
            let q = QuotientRing::new(ring, res.ideal())?;
            let betti = res.betti_table();
            let totals: Vec<usize> = (0..=res.length()).map(|i| betti.total(i)).collect();
            let comparison = golod_by_series(&q, &totals, truncate, options.step_budget)?;
            let payload = PoincarePayload {
                generators: res.ideal().iter().map(|g| ring.format(g)).collect(),
                comparison,
            };
            Ok(wrap(
                command,
                input,
                Outcome::Report,
                Payload::Poincare(payload),
                start,
            ))
        }
        Command::Corpus => Err(RunError::Input(
            "corpus runs on a directory; use run_corpus".into(),
        )),
    }
}

/// Files with the `.golod` extension in `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let read =
        std::fs::read_dir(dir).map_err(|e| RunError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "golod"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every problem in `dir`: `golod-certify` when `power >= 2`, else a
/// resolution check. Input errors count as failures.
pub fn run_corpus(dir: &Path, options: &RunOptions) -> Result<Report, RunError> {
    let start = Instant::now();
    let files = corpus_files(dir)?;
    let entries: Vec<CorpusEntry> = files
        .par_iter()
        .map(|path| {
            let file = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let parsed = std::fs::read_to_string(path)
                .map_err(|e| RunError::Input(e.to_string()))
                .and_then(|text| parse_problem(&text).map_err(RunError::from));
            let (command, result) = match parsed {
                Ok(spec) => {
                    let command = if spec.power >= 2 {
                        Command::GolodCertify
                    } else {
                        Command::Resolve
                    };
                    (command, run_command(&spec, command, options))
                }
                Err(e) => (Command::Resolve, Err(e)),
            };
            match result {
                Ok(r) => CorpusEntry {
                    file,
                    command,
                    outcome: Some(r.canonical.verdict),
                    error: None,
                },
                Err(e) => CorpusEntry {
                    file,
                    command,
                    outcome: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let passed = entries
        .iter()
        .filter(|e| e.outcome == Some(Outcome::Pass))
        .count();
    let failed = entries.len() - passed;
    let verdict = if failed == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(wrap(
        Command::Corpus,
        None,
        verdict,
        Payload::Corpus(CorpusPayload {
            entries,
            passed,
            failed,
        }),
        start,
    ))
}
