//! Command-line harness over `groupoid-reps-core`: subcommands, TOML
//! configuration, JSON reports and the parallel default grid.

pub mod cli;
pub mod config;
pub mod error;
pub mod tasks;

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::Parser;
use groupoid_reps_core::report::{Check, Report};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use cli::{Cli, Command};
use config::{OutFormat, Params};
pub use error::CliError;
pub use tasks::{Settings, Task, TaskOutput};

pub const SCHEMA: &str = "groupoid-reps/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// The JSON document emitted by every command.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: Params,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Task name to result payload.
    pub results: BTreeMap<String, Value>,
    /// Wall-clock seconds per task; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl Envelope {
    pub fn new(command: &str, parameters: Params, outputs: Vec<TaskOutput>) -> Self {
        let prefix = outputs.len() > 1;
        let mut report = Report::new();
        let mut results = BTreeMap::new();
        let mut timings = BTreeMap::new();
        for o in outputs {
            let r = if prefix { o.report.prefixed(&format!("{}/", o.name)) } else { o.report };
            report.extend(r);
            results.insert(o.name.clone(), o.result);
            timings.insert(o.name, o.seconds);
        }
        Envelope {
            schema: SCHEMA,
            version: VERSION,
            command: command.to_string(),
            parameters,
            passed: report.passed(),
            checks: report.checks,
            results,
            timings,
        }
    }

    /// Everything except the timings, serialized.
    pub fn payload(&self) -> String {
        let mut v = serde_json::to_value(self).expect("envelope serializes");
        v.as_object_mut().expect("object").remove("timings");
        serde_json::to_string(&v).expect("value serializes")
    }

    pub fn render(&self, out: OutFormat) -> String {
        match out {
            OutFormat::Json => serde_json::to_string_pretty(self).expect("envelope serializes") + "\n",
            OutFormat::Text => {
                let mut s = format!("{} ({SCHEMA}, v{VERSION})\n", self.command);
                for c in &self.checks {
                    let status = if c.status == groupoid_reps_core::report::Status::Pass { "PASS" } else { "FAIL" };
                    if c.details.is_empty() {
                        s += &format!("{status}  {}\n", c.name);
                    } else {
                        s += &format!("{status}  {}  [{}]\n", c.name, c.details);
                    }
                }
                for (name, v) in &self.results {
                    s += &format!("result {name}: {v}\n");
                }
                let failed = self.checks.iter().filter(|c| c.status != groupoid_reps_core::report::Status::Pass).count();
                let total: f64 = self.timings.values().sum();
                s += &format!("{} checks, {failed} failed, {total:.2}s\n", self.checks.len());
                s
            }
        }
    }
}

/// The default grid of `all`: `ℓ ≤ 3`, `d ≤ 3` for every module, `(2,4)`
/// with sampled pairs for `Φ`, every `k | ℓ` for `G(ℓ,k,d)`, and the tensor
/// cases of the duality checks.
pub fn default_grid() -> Vec<Task> {
    let mut tasks = Vec::new();
    for ell in 1..=3 {
        for d in 0..=3 {
            tasks.push(Task::Objects { ell, d });
            tasks.push(Task::VerifyIso { ell, d, pairs: None });
            tasks.push(Task::Simples { ell, d });
            tasks.push(Task::Gelfand { ell, d });
            if d >= 1 {
                tasks.push(Task::Branching { ell, d });
            }
            for k in (1..=ell).filter(|k| ell % k == 0) {
                tasks.push(Task::Gkd { ell, k, d });
            }
        }
    }
    tasks.push(Task::VerifyIso { ell: 2, d: 4, pairs: Some(2_000) });
    tasks.extend(schur_weyl_cases().into_iter().map(|(kvec, d)| Task::SchurWeyl { kvec, d }));
    tasks.extend(theorem95_cases().into_iter().map(|(ell, k, m, d)| Task::Theorem95 { ell, k, m, d }));
    tasks.extend((1..=4).map(|d| Task::Rook { d }));
    tasks
}

/// `(k, d)` for the tensor-space duality.
pub fn schur_weyl_cases() -> Vec<(Vec<usize>, usize)> {
    vec![
        (vec![2], 2),
        (vec![2], 3),
        (vec![1, 1], 2),
        (vec![1, 1], 3),
        (vec![2, 1], 2),
        (vec![2, 2], 2),
    ]
}

/// `(ℓ, k, m, d)` for the cyclic-shift variant.
pub fn theorem95_cases() -> Vec<(usize, usize, usize, usize)> {
    vec![(2, 2, 1, 1), (2, 2, 2, 2), (4, 2, 1, 2)]
}

/// Runs tasks on `jobs` threads (all cores if `None`), in input order.
pub fn run_tasks(tasks: &[Task], settings: &Settings, jobs: Option<usize>) -> Result<Vec<TaskOutput>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    pool.install(|| tasks.par_iter().map(|t| t.run(settings)).collect())
}

fn tasks_for(command: &Command, p: &Params) -> Result<Vec<Task>, CliError> {
    let ell = || p.require(p.ell, "ell");
    let d = || p.require(p.d, "d");
    let task = match command {
        Command::Objects(_) => Task::Objects { ell: ell()?, d: d()? },
        Command::Simples(_) => Task::Simples { ell: ell()?, d: d()? },
        Command::VerifyIso(_) => Task::VerifyIso { ell: ell()?, d: d()?, pairs: None },
        Command::Gelfand(_) => Task::Gelfand { ell: ell()?, d: d()? },
        Command::Branching(_) => Task::Branching { ell: ell()?, d: d()? },
        Command::Gkd { .. } => Task::Gkd { ell: ell()?, k: p.require(p.k, "k")?, d: d()? },
        Command::SchurWeyl { .. } if p.theorem95 == Some(true) => {
            Task::Theorem95 { ell: ell()?, k: p.require(p.kk, "kk")?, m: p.require(p.m, "m")?, d: d()? }
        }
        Command::SchurWeyl { .. } => {
            let kvec = p.kvec.clone().ok_or_else(|| CliError::Usage("missing --k k1,k2,...".into()))?;
            if let Some(ell) = p.ell {
                if ell != kvec.len() {
                    return Err(CliError::Usage(format!("--ell {ell} but {} block sizes", kvec.len())));
                }
            }
            Task::SchurWeyl { kvec, d: d()? }
        }
        Command::RookCheck { .. } => Task::Rook { d: d()? },
        Command::All => return Ok(default_grid()),
    };
    Ok(vec![task])
}

/// What the binary prints and returns.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub envelope: Option<Envelope>,
}

impl Outcome {
    fn error(e: CliError) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code(), envelope: None }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: 2, envelope: None }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: 0, envelope: None }
            };
        }
    };
    let mut params = cli.command.params().or(cli.global.params());
    if let Some(path) = &cli.global.config {
        match config::load(path) {
            Ok(file) => params = params.or(file),
            Err(e) => return Outcome::error(e),
        }
    }
    let tasks = match tasks_for(&cli.command, &params) {
        Ok(t) => t,
        Err(e) => return Outcome::error(e),
    };
    let settings = Settings { cap: params.cap, seed: params.seed.unwrap_or(DEFAULT_SEED) };
    let outputs = match run_tasks(&tasks, &settings, params.jobs) {
        Ok(o) => o,
        Err(e) => return Outcome::error(e),
    };
    let out = params.out.unwrap_or_default();
    let envelope = Envelope::new(cli.command.name(), params, outputs);
    let code = if envelope.passed { 0 } else { 1 };
    Outcome { stdout: envelope.render(out), stderr: String::new(), code, envelope: Some(envelope) }
}
