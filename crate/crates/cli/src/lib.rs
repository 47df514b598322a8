//! Command-line front end: `eval`, `verify`, `instances` and `report`.
//!
//! Exit codes: 0 on success or a passing suite, 1 when a suite reports
//! violations, 2 on usage, parse or evaluation errors.

pub mod config;
pub mod eval;
pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use starpull_core::exec::Exec;
use starpull_core::harness::{run_suite, Report, SUITES};
use starpull_core::pullback::{describe_base, PullbackInstance, CATALOG};
use starpull_core::star_ops::{Side, StarOp};

use config::Config;

#[derive(Parser, Debug)]
#[command(name = "starpull", version, about = "Ideal and star-operation calculus on pullback rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an ideal expression and print its canonical form.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Expression, e.g. "v(ideal(2, X))".
        #[arg(short, long)]
        expr: String,
    },
    /// Run a conformance suite and write its JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// One of: split-exact, quasilocal-iso, pvmd, t-extension, pic-splitting, oracle-agreement, star-algebra.
        #[arg(short, long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
        /// Star operation on R, e.g. "t" or "meet(lift(v),ovr(d))".
        #[arg(long)]
        op: Option<String>,
        /// Write the JSON report here and print a summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run samples one after another.
        #[arg(long)]
        sequential: bool,
    },
    /// List the catalogued instances and their flags.
    Instances {
        #[arg(long)]
        json: bool,
    },
    /// Pretty-print a JSON report.
    Report {
        path: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Catalogue name A-E.
    #[arg(short, long)]
    instance: Option<String>,
    /// Flat `key = value` config file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

impl Common {
    fn config(&self) -> starpull_core::Result<Config> {
        let mut c = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        if let Some(name) = &self.instance {
            c = Config { instance: Some(name.clone()), base: None, k_disc: None, t_kind: None, ..c };
        }
        if self.json {
            c.json = Some(true);
        }
        Ok(c)
    }
}

/// Runs the tool on `argv` (including the program name) and returns the exit
/// status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Eval { common, expr } => eval_command(&common, &expr, out),
        Command::Verify { common, suite, seed, count, op, out: path, sequential } => {
            let mut c = common.config().map_err(|e| e.to_string())?;
            c.suite = suite.or(c.suite);
            c.seed = seed.or(c.seed);
            c.count = count.or(c.count);
            c.op = op.or(c.op);
            c.out = path.or(c.out);
            verify_command(&c, if sequential { Exec::Sequential } else { Exec::Parallel }, out)
        }
        Command::Instances { json } => instances_command(json, out),
        Command::Report { path } => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let report = Report::from_json(&text).map_err(|e| e.to_string())?;
            emit(out, &report.summary())?;
            Ok(0)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), String> {
    writeln!(out, "{}", text.trim_end()).map_err(|e| e.to_string())
}

fn eval_command(common: &Common, expr: &str, out: &mut dyn Write) -> Result<i32, String> {
    let c = common.config().map_err(|e| e.to_string())?;
    let inst = c.instance().map_err(|e| e.to_string())?;
    let ast = parse::parse_expression(expr).map_err(|e| e.to_string())?;
    let value = eval::evaluate(&ast, &inst).map_err(|e| e.to_string())?;
    if c.json.unwrap_or(false) {
        emit(out, &serde_json::to_string_pretty(&value.to_json(&inst)).expect("json values serialize"))?;
    } else {
        emit(out, &value.display(&inst))?;
    }
    Ok(0)
}

fn verify_command(c: &Config, exec: Exec, out: &mut dyn Write) -> Result<i32, String> {
    let inst = c.instance().map_err(|e| e.to_string())?;
    let suite = c.suite.as_deref().ok_or_else(|| format!("no suite given; known: {}", SUITES.join(", ")))?;
    let op = match &c.op {
        Some(text) => Some(StarOp::parse(text, Side::R).map_err(|e| e.to_string())?),
        None => None,
    };
    let report = run_suite(suite, &inst, op.as_ref(), &c.params(), exec).map_err(|e| e.to_string())?;
    let json = report.to_json();
    match &c.out {
        Some(path) => {
            std::fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
            let text = if c.json.unwrap_or(false) { json } else { report.summary() };
            emit(out, &text)?;
        }
        None => emit(out, &json)?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn instances_command(as_json: bool, out: &mut dyn Write) -> Result<i32, String> {
    let insts: Vec<PullbackInstance> = CATALOG.iter().map(|n| PullbackInstance::catalog(n).expect("catalogued")).collect();
    if as_json {
        let list: Vec<serde_json::Value> = insts
            .iter()
            .map(|i| {
                json!({
                    "name": i.name(),
                    "base": describe_base(i),
                    "d": i.base().name(),
                    "k": i.base().k_name(),
                    "t": i.t_name(),
                    "class_group": i.base().class_group().orders(),
                    "flags": i.flags(),
                    "r_is_pvmd": i.flags().r_is_pvmd(),
                })
            })
            .collect();
        emit(out, &serde_json::to_string_pretty(&list).expect("json values serialize"))?;
        return Ok(0);
    }
    for i in &insts {
        let f = i.flags();
        let mut tags = Vec::new();
        if f.is_square_plus {
            tags.push("qf(D) = k");
        }
        if f.t_quasilocal {
            tags.push("T quasilocal");
        }
        if f.d_pvmd {
            tags.push("D PvMD");
        }
        if f.r_is_pvmd() {
            tags.push("R PvMD");
        }
        emit(out, &format!("{i}  [{}]", tags.join(", ")))?;
    }
    Ok(0)
}
