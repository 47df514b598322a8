//! Seeded conformance suites over the catalogued instances, producing JSON
//! reports.

mod sample;
mod suites;

use serde::{Deserialize, Serialize};

pub use sample::{corner_ideals, sample_d_modules, sample_ideals, sample_m_elements, sample_t_ideals};
pub use suites::{
    verify_oracle_agreement, verify_pic_splitting, verify_pvmd, verify_quasilocal_iso, verify_split_exact,
    verify_star_algebra, verify_t_extension,
};

pub use crate::star_ops::Violation;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::pullback::{DegreeWindow, PullbackInstance};
use crate::star_ops::{Side, StarOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleParams {
    pub seed: u64,
    pub count: usize,
    pub max_gens: usize,
    pub max_degree: u32,
    /// Bound on numerators of sampled coefficients.
    pub height: i64,
    pub window: DegreeWindow,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { seed: 0, count: 100, max_gens: 3, max_degree: 2, height: 4, window: DegreeWindow::default() }
    }
}

impl SampleParams {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 || self.max_gens == 0 || self.height <= 0 || self.window.height <= 0 {
            return Err(Error::Config("sample bounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// What a suite saw on one sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub index: usize,
    pub sample: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub instance: String,
    pub seed: u64,
    pub op: Option<String>,
    pub params: SampleParams,
    pub n_samples: usize,
    pub n_violations: usize,
    pub violations: Vec<Violation>,
    /// Expected counterexamples, e.g. a non-`t`-invertible ideal on a
    /// non-PvMD instance. They do not count as violations.
    #[serde(default)]
    pub witnesses: Vec<Violation>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub records: Vec<Record>,
    pub verdict: Verdict,
}

impl Report {
    fn new(suite: &str, inst: &PullbackInstance, op: Option<&StarOp>, params: &SampleParams) -> Self {
        Report {
            suite: suite.into(),
            instance: inst.name().into(),
            seed: params.seed,
            op: op.map(StarOp::to_string),
            params: *params,
            n_samples: 0,
            n_violations: 0,
            violations: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            records: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    fn push(&mut self, index: usize, sample: String, outcome: String, violations: Vec<Violation>) {
        self.n_samples += 1;
        self.records.push(Record { index, sample, outcome });
        self.violations.extend(violations);
    }

    fn finish(mut self) -> Self {
        self.n_violations = self.violations.len();
        self.verdict = if self.violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("report: {e}")))
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{} on {}{}: {} samples, {} violations, {}\n",
            self.suite,
            self.instance,
            self.op.as_ref().map(|o| format!(" (op {o})")).unwrap_or_default(),
            self.n_samples,
            self.n_violations,
            if self.passed() { "pass" } else { "fail" }
        );
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness: {} -> {} ({})\n", w.sample, w.got, w.witness));
        }
        for v in &self.violations {
            out.push_str(&format!("  violation: {}: expected {}, got {} [{}]\n", v.sample, v.expected, v.got, v.witness));
        }
        out
    }
}

pub const SUITES: [&str; 7] =
    ["split-exact", "quasilocal-iso", "pvmd", "t-extension", "pic-splitting", "oracle-agreement", "star-algebra"];

/// Runs a suite by name. `op` defaults to `t`.
pub fn run_suite(name: &str, inst: &PullbackInstance, op: Option<&StarOp>, params: &SampleParams, exec: Exec) -> Result<Report> {
    params.validate()?;
    let default_op = StarOp::t(Side::R);
    let op = op.unwrap_or(&default_op);
    if op.side() != Side::R {
        return Err(Error::OutOfDomain(format!("suites take an operation on R, got {op}")));
    }
    match name {
        "split-exact" => verify_split_exact(inst, op, params, exec),
        "quasilocal-iso" => verify_quasilocal_iso(inst, op, params, exec),
        "pvmd" => verify_pvmd(inst, op, params, exec),
        "t-extension" => verify_t_extension(inst, params, exec),
        "pic-splitting" => verify_pic_splitting(inst, params, exec),
        "oracle-agreement" => verify_oracle_agreement(inst, params, exec),
        "star-algebra" => verify_star_algebra(inst, params, exec),
        other => Err(Error::Config(format!("unknown suite '{other}'; known: {}", SUITES.join(", ")))),
    }
}
